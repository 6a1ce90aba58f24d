"""Critical geometry, reflection groups, and exact excursion asymptotics for
weighted small-step walks confined to the nonnegative orthant.

Every function accepts the model either as a dict (the JSON schema used by
the CLI and the model files) or as JSON text. Reports come back as plain
dicts; exact counts are upgraded to ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _core

__version__ = _core.version()
schema_version = _core.schema_version


def _model_text(model):
    if isinstance(model, str):
        return model
    return json.dumps(model)


def load_model(path):
    """Read a model file and return it as a dict."""
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def analyze(model, **kwargs):
    """Full analysis report (critical point, covariance geometry, group
    verdicts, nodal classification) as a dict. Keyword arguments: seed,
    threads, g_order, g_min_normal, budget_bytes."""
    return json.loads(_core.analyze(_model_text(model), **kwargs))


def _origin(model):
    m = json.loads(_model_text(model))
    return [0] * len(m["steps"][0])


def verify(model, from_=None, to=None, **kwargs):
    """Analysis plus exact counting to a dimension-chosen horizon and a
    prediction section comparing the fitted exponent and growth rate against
    the closed-form values. Endpoints default to the origin."""
    if from_ is None:
        from_ = _origin(model)
    if to is None:
        to = _origin(model)
    return json.loads(_core.verify(_model_text(model), from_, to, **kwargs))


class CountResult:
    """Exact excursion counts. ``values[n]`` is a Fraction; ``numerators``
    and ``denominator`` carry the underlying integer data (the value at n is
    numerators[n] / denominator**n)."""

    def __init__(self, payload):
        self.from_ = payload["from"]
        self.to = payload["to"]
        self.n_max = payload["n_max"]
        self.weighted = payload["weighted"]
        self.denominator = int(payload["weight_denominator"])
        self.numerators = [int(v) for v in payload["numerators"]]
        self.period = payload["period"]
        self.values = [
            Fraction(num, self.denominator**n) for n, num in enumerate(self.numerators)
        ]
        self.raw = payload

    def __repr__(self):
        return (f"CountResult(from={self.from_}, to={self.to}, n_max={self.n_max}, "
                f"period={self.period})")


def count(model, from_, to, n, **kwargs):
    """Exact counts e(from, to; 0..n) as a CountResult."""
    return CountResult(json.loads(_core.count(_model_text(model), from_, to, n, **kwargs)))


def count_csv(model, from_, to, n, **kwargs):
    """Counts as 'n,value' CSV text with exact rational values."""
    return _core.count_csv(_model_text(model), from_, to, n, **kwargs)


def catalog(dim):
    """Admissible wall-angle catalog for dim 2, 3, or 4 as a list of dicts."""
    return json.loads(_core.catalog(dim))


__all__ = [
    "analyze",
    "catalog",
    "count",
    "count_csv",
    "CountResult",
    "load_model",
    "schema_version",
    "verify",
    "__version__",
]
