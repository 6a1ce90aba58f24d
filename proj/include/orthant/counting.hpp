#pragma once

#include "orthant/model.hpp"
#include "orthant/rational.hpp"

#include <vector>

namespace orthant {

// Exact orthant-excursion counts e(P,Q;n) for n = 0..n_max. Weighted counts
// are stored as integer numerators over the implicit denominator q^n, where
// q is the common denominator of the normalized step weights; unweighted
// counts use q = 1 and count raw paths.
struct CountTable {
    std::vector<long long> from, to;
    int n_max = 0;
    bool weighted = true;
    Int denom = 1;         // q
    std::vector<Int> raw;  // raw[n] = e(n) * q^n
    long long period = 0;  // gcd of {n >= 1 : raw[n] != 0}; 0 when all vanish

    Rat value(int n) const; // e(n) as an exact rational
};

struct CountOptions {
    bool unweighted = false;
    int threads = 1;
    size_t budget_bytes = size_t(4) << 30; // memory budget for the DP layers
};

// Layered dynamic programming over per-step-adaptive boxes: layer t keeps
// only lattice points reachable from `from` in t steps that can still reach
// `to` within the remaining n_max - t steps (coordinate-wise bounds). The
// transition is in pull form, so parallel evaluation over destination cells
// is write-disjoint and bit-identical to the sequential run. The peak memory
// estimate is checked against the budget before any layer is allocated.
CountTable count_excursions(const WalkModel& m, const std::vector<long long>& from,
                            const std::vector<long long>& to, int n_max,
                            const CountOptions& opts = {});

// Exhaustive depth-first enumeration of all step sequences staying in the
// orthant; same numerator convention as CountTable. Oracle for small n.
std::vector<Int> brute_force_raw(const WalkModel& m, const std::vector<long long>& from,
                                 const std::vector<long long>& to, int n_max,
                                 bool unweighted = false);

// Empirical growth/exponent extraction from a count table, for comparison
// against the predicted e(n) ~ c rho^n / n^alpha.
struct AsymptoticFit {
    double alpha_hat = 0.0;
    double rho_hat = 0.0;
    long long period = 1;
    int window_lo = 0, window_hi = 0; // n-range entering the extrapolation
    int points = 0;                   // exponent samples inside the window
    double alpha_spread = 0.0;        // max - min over the averaged tail
    double rho_spread = 0.0;
};

// rho is the predicted growth constant of value(n); the exponent sequence
// alpha_n = -d log(value(n) rho^-n) / d log n is extrapolated by two
// Richardson stages (weights n and n^2) over the last half of the nonzero
// range, and the growth constant is re-estimated independently from
// period-spaced ratios with the same extrapolation.
AsymptoticFit estimate_asymptotics(const CountTable& table, double rho);

} // namespace orthant
