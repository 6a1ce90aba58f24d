// Python face of the library: every entry point takes the model as JSON text
// and returns report JSON text, so the wire format is identical to the CLI's
// and nothing is lost to binary conversion. The pure-Python wrapper in
// orthant/__init__.py decodes and upgrades exact values to Fractions.
#include "orthant/counting.hpp"
#include "orthant/errors.hpp"
#include "orthant/model.hpp"
#include "orthant/nodal.hpp"
#include "orthant/report.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace orthant;

namespace {

WalkModel model_from_json(const std::string& text) { return parse_model(text); }

ReportOptions make_opts(unsigned long seed, int threads, std::optional<long long> g_order,
                        long long g_min_normal, size_t budget_bytes) {
    ReportOptions opts;
    opts.seed = seed;
    opts.threads = threads;
    opts.g_order = g_order;
    opts.g_min_normal = g_min_normal;
    opts.budget_bytes = budget_bytes;
    return opts;
}

std::string analyze_text(const std::string& model_json, unsigned long seed, int threads,
                         std::optional<long long> g_order, long long g_min_normal,
                         size_t budget_bytes, bool pretty) {
    WalkModel m = model_from_json(model_json);
    return render_report(analyze_model(m, make_opts(seed, threads, g_order, g_min_normal,
                                                    budget_bytes)),
                         pretty);
}

std::string verify_text(const std::string& model_json, std::vector<long long> from,
                        std::vector<long long> to, int n_max, bool unweighted,
                        double alpha_tol, double rho_tol, unsigned long seed, int threads,
                        std::optional<long long> g_order, long long g_min_normal,
                        size_t budget_bytes, bool pretty) {
    WalkModel m = model_from_json(model_json);
    FitRequest req;
    req.from = std::move(from);
    req.to = std::move(to);
    req.n_max = n_max;
    req.unweighted = unweighted;
    req.alpha_tol = alpha_tol;
    req.rho_tol = rho_tol;
    return render_report(verify_prediction(m, req, make_opts(seed, threads, g_order,
                                                             g_min_normal, budget_bytes)),
                         pretty);
}

std::string count_text(const std::string& model_json, std::vector<long long> from,
                       std::vector<long long> to, int n, bool unweighted, int threads,
                       size_t budget_bytes, bool pretty) {
    WalkModel m = model_from_json(model_json);
    CountOptions opts;
    opts.unweighted = unweighted;
    opts.threads = threads;
    opts.budget_bytes = budget_bytes;
    CountTable t = count_excursions(m, from, to, n, opts);
    return render_report(count_json(t), pretty);
}

std::string count_csv_text(const std::string& model_json, std::vector<long long> from,
                           std::vector<long long> to, int n, bool unweighted, int threads,
                           size_t budget_bytes) {
    WalkModel m = model_from_json(model_json);
    CountOptions opts;
    opts.unweighted = unweighted;
    opts.threads = threads;
    opts.budget_bytes = budget_bytes;
    return count_csv(count_excursions(m, from, to, n, opts));
}

std::string catalog_text(int dim, bool pretty) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const CatalogRow& r : catalog_tuples(dim)) {
        nlohmann::ordered_json row;
        row["angles"] = r.angles;
        row["type"] = r.type;
        row["reflections"] = r.k_expr;
        row["lambda1"] = r.lambda_expr;
        row["parametric"] = r.parametric;
        if (!r.parametric) {
            row["k"] = r.k;
            row["lambda1_value"] = r.lambda1;
        }
        if (!r.note.empty()) row["note"] = r.note;
        rows.push_back(std::move(row));
    }
    return render_report(rows, pretty);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "critical geometry, reflection groups, and exact excursion counts "
              "for weighted small-step walks in the nonnegative orthant";

    // Map the error taxonomy onto idiomatic Python exception types.
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            switch (e.kind()) {
            case ErrorKind::parse:
            case ErrorKind::domain: PyErr_SetString(PyExc_ValueError, e.what()); return;
            case ErrorKind::budget: PyErr_SetString(PyExc_MemoryError, e.what()); return;
            default: PyErr_SetString(PyExc_RuntimeError, e.what()); return;
            }
        }
    });

    m.def("version", &tool_version, "library version string");
    m.attr("schema_version") = kSchemaVersion;

    m.def("analyze", &analyze_text, py::arg("model_json"), py::arg("seed") = 0,
          py::arg("threads") = 1, py::arg("g_order") = std::nullopt,
          py::arg("g_min_normal") = 2, py::arg("budget_bytes") = size_t(4) << 30,
          py::arg("pretty") = false,
          "Full geometric/group/nodal analysis of a model; returns report JSON text.");

    m.def("verify", &verify_text, py::arg("model_json"), py::arg("from_"), py::arg("to"),
          py::arg("n_max") = 0, py::arg("unweighted") = false, py::arg("alpha_tol") = 0.05,
          py::arg("rho_tol") = 1e-3, py::arg("seed") = 0, py::arg("threads") = 1,
          py::arg("g_order") = std::nullopt, py::arg("g_min_normal") = 2,
          py::arg("budget_bytes") = size_t(4) << 30, py::arg("pretty") = false,
          "Analysis plus exact counting and an asymptotics comparison section; "
          "returns report JSON text.");

    m.def("count", &count_text, py::arg("model_json"), py::arg("from_"), py::arg("to"),
          py::arg("n"), py::arg("unweighted") = false, py::arg("threads") = 1,
          py::arg("budget_bytes") = size_t(4) << 30, py::arg("pretty") = false,
          "Exact excursion counts as JSON text (numerators are decimal strings).");

    m.def("count_csv", &count_csv_text, py::arg("model_json"), py::arg("from_"),
          py::arg("to"), py::arg("n"), py::arg("unweighted") = false, py::arg("threads") = 1,
          py::arg("budget_bytes") = size_t(4) << 30,
          "Exact excursion counts as 'n,value' CSV text with rational values.");

    m.def("catalog", &catalog_text, py::arg("dim"), py::arg("pretty") = false,
          "Admissible wall-angle catalog for dim 2, 3, or 4 as JSON text.");
}
