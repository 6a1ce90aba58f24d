#include "orthant/laurent.hpp"

namespace orthant {

Rat eval_exact(const PolyQ& p, const std::vector<Rat>& x) {
    Rat s = 0;
    for (const auto& [e, c] : p.terms()) {
        Rat m = c;
        for (int i = 0; i < p.nvars(); ++i)
            if (e[i] != 0) m *= rat_pow(x[i], e[i]);
        s += m;
    }
    return s;
}

} // namespace orthant
