#pragma once

#include "orthant/counting.hpp"
#include "orthant/model.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace orthant {

// Bumped whenever a field is renamed, moved, or changes meaning.
inline constexpr const char* kSchemaVersion = "1.0";
std::string tool_version();

struct ReportOptions {
    unsigned long seed = 0;
    int threads = 1;
    std::optional<long long> g_order; // externally known substitution-group order
    long long g_min_normal = 2;       // lower bound on proper normal subgroup index
    size_t budget_bytes = size_t(4) << 30;
};

// Full analysis (no counting): window certificate, critical point, covariance
// and wall angles, form-preservation check, reflection-group verdict,
// substitution-group comparison, nodal-domain verdict. Each section carries
// "ok" plus either its payload or an {kind, message} error; a failed section
// never aborts the others. The result is deterministic for fixed model,
// seed, and options.
nlohmann::ordered_json analyze_model(const WalkModel& m, const ReportOptions& opts = {});

struct FitRequest {
    std::vector<long long> from, to; // empty = origin
    int n_max = 0;                   // 0 = horizon picked by dimension
    bool unweighted = false;
    double alpha_tol = 0.05; // relative, empirical choice
    double rho_tol = 1e-3;   // relative, empirical choice
};

// Full pipeline including exact counting: analyze_model plus a "prediction"
// section comparing the fitted exponent/growth against the nodal formula.
// Non-nodal models get the empirical numbers only, with no pass/fail.
nlohmann::ordered_json verify_prediction(const WalkModel& m, const FitRequest& req = {},
                                         const ReportOptions& opts = {});

// Count table and fit as report fragments (exact numerators as decimal
// strings so nothing is rounded).
nlohmann::ordered_json count_json(const CountTable& t);
nlohmann::ordered_json fit_json(const AsymptoticFit& f);
std::string count_csv(const CountTable& t); // "n,value" rows, exact rationals

// Serialize with every float at 17 significant digits (bit-exact re-parse);
// pretty adds indentation, the compact form is stable for diffing.
std::string render_report(const nlohmann::ordered_json& j, bool pretty = false);

} // namespace orthant
