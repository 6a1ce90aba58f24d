#pragma once

#include "orthant/coxeter.hpp"
#include "orthant/critical.hpp"
#include "orthant/linalg.hpp"
#include "orthant/model.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace orthant {

// The d birational substitutions attached to a small-step model: map i sends
// x_i to (1/x_i) * C_i(x) / A_i(x) and fixes the other coordinates. Each is
// an involution preserving the step polynomial.
struct WalkMaps {
    int dim = 0;
    std::vector<SectionTriple> secs;

    // The map is defined where x_i != 0 and A_i(x) != 0.
    bool applicable(int i, const Vec& x, double tol = 1e-9) const;
    Vec apply(int i, const Vec& x) const;
    // Jacobian: identity rows except row i. At a fixed point of map i the
    // (i,i) entry is exactly -1.
    Mat jacobian(int i, const Vec& x) const;
};

WalkMaps walk_maps(const WalkModel& m);

// S_i = Jacobian of map i at the critical point.
std::vector<Mat> jacobian_generators(const WalkMaps& wm, const Vec& x0);

// Frame change Phi = delta^{1/2} diag(sqrt(H_ii)) with H the Hessian at the
// critical point: Phi S_i Phi^{-1} is the Euclidean reflection in the wall
// normal u_i = delta^{1/2} e_i.
Mat walk_to_reflection_frame(const Mat& delta, const Mat& hessian);

// Order of the composition of two substitution generators from the covariance
// entry a alone, decided in this sequence:
//   1. a recognized rational: 0 -> order 2, ±1/2 -> order 3, any other
//      rational -> infinite (arccos of such a rational is an irrational
//      multiple of pi).
//   2. 2a^2-1 recognized rational outside {0, ±1/2, ±1} -> infinite
//      (same argument applied to the doubled angle).
//   3. arccos(a)/pi recognized as k/m with m <= denom_cap -> order m.
//   4. otherwise inconclusive.
struct PairOrder {
    enum class Kind { finite, infinite, inconclusive };
    Kind kind = Kind::inconclusive;
    int m = 0;          // order when finite
    std::string detail; // which rule fired, with the recognized value
};

PairOrder pair_order(double a, int denom_cap = 400);

// Grid for the common-fixed-point search: the spectator coordinates run over
// all tuples from `frozen`, the moving pair starts from each entry of
// `starts`.
struct ScanGrid {
    std::vector<double> frozen;
    std::vector<std::pair<double, double>> starts;
    static ScanGrid default_grid();  // frozen {1/2, 1, 3/2}
    static ScanGrid extended_grid(); // frozen ±{1/2, 1, 3/2, 2, 5/2, 3}
};

// A common fixed point of maps i and j where the local Jacobian product has
// an eigenvalue off the unit circle — a certificate that the composition has
// infinite order, hence that the substitution group is infinite.
struct FixedPointWitness {
    int i = 0, j = 0;
    Vec x;
    std::complex<double> lambda; // the off-circle eigenvalue
    double deviation = 0.0;      // | |lambda| - 1 |
};

struct ScanResult {
    std::vector<FixedPointWitness> witnesses;
    int fixed_points = 0; // genuine common fixed points inspected
    bool truncated = false;
};

// Newton search for common fixed points of every generator pair over the
// grid, keeping only genuine points (coordinates and section values away
// from the poles of the maps). `budget` caps the number of Newton starts.
ScanResult fixed_point_scan(const WalkMaps& wm, const ScanGrid& grid = ScanGrid::default_grid(),
                            size_t budget = 200000);

// Order of the composition of the listed generators, probed by iterating the
// map on seeded random positive points. Returns 0 when no power up to `cap`
// acts as the identity on the probes.
int word_order(const WalkMaps& wm, const std::vector<int>& word, int cap = 64,
               unsigned long seed = 0);

struct PairEntry {
    int i = 0, j = 0;
    PairOrder angle;
    int order = 0; // probed order of map_i ∘ map_j; 0 = not found
};

// Comparison of the substitution group G = <map_i> with the reflection group
// H = <reflection in u_i>. G covers H (Jacobians at the critical point map G
// onto a conjugate of H), so |G| >= |H|; the probed pair orders give a
// Coxeter group K covering G, so |K| >= |G| >= |H|.
struct GvsHReport {
    enum class Conclusion {
        isomorphic,    // G ≅ H
        g_infinite,    // G infinite, H finite: not isomorphic
        both_infinite, // H infinite, hence G infinite
        bounded,       // |K| >= |G| >= |H| with a gap: undecided
        inconclusive
    };
    Conclusion conclusion = Conclusion::inconclusive;
    std::string route; // which criterion decided
    std::vector<PairEntry> pairs;
    bool k_finite = false;
    Int k_order = 0; // |K| when the pair-order diagram is finite
    std::vector<FixedPointWitness> witnesses;
};

GvsHReport g_vs_h_report(const WalkMaps& wm, const Mat& delta, std::optional<Int> h_order,
                         bool h_known_infinite, const ScanResult& scan,
                         std::optional<long long> user_g_order = std::nullopt,
                         long long user_min_normal = 2, unsigned long seed = 0);

} // namespace orthant
