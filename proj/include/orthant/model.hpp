#pragma once

#include "orthant/laurent.hpp"
#include "orthant/rational.hpp"

#include <string>
#include <vector>

namespace orthant {

// A finite weighted step set in Z^d. Weights are kept exactly and normalized
// so they sum to 1 (probability normalization of the inventory polynomial).
struct WalkModel {
    int dim = 0;
    std::vector<std::vector<int>> steps;
    std::vector<Rat> weights;
    std::string name;

    bool small_step() const; // every coordinate in {-1,0,1}
    bool operator==(const WalkModel&) const = default;
};

// Parse a model from JSON text:
//   { "name": "...", "dim": 2, "steps": [[1,0],...], "weights": ["1/4", 1, ...] }
// "weights" is optional (uniform by default); entries are positive integers or
// "p/q" strings and are normalized by their sum. Throws Error(parse) on any
// malformed input: wrong step length, duplicate step, zero step, nonpositive
// weight, weight/step count mismatch.
WalkModel parse_model(const std::string& json_text);
WalkModel load_model(const std::string& path);
std::string serialize_model(const WalkModel& m);

// Inventory polynomial: sum_s w(s) x^s, a Laurent polynomial with value 1
// at x = (1,...,1).
PolyQ inventory(const WalkModel& m);

// Section of the inventory along one axis: chi = x_i*A + B + (1/x_i)*C with
// A, B, C polynomials in the other variables (exponent 0 along `axis`).
struct SectionTriple {
    int axis = 0;
    PolyQ A, B, C;
};

// Requires a small-step model whose step set moves both ways along every
// axis (A_i and C_i nonzero); throws Error(domain) otherwise.
std::vector<SectionTriple> sections(const WalkModel& m);

// Finite-window mutual-reachability certificate: walks confined to the box
// [0,box]^d, checked between the origin and every point of {0..3}^d (clipped
// to the box). ok means every test point is reachable from the origin and can
// return to it without leaving the box — a sufficient certificate for
// irreducibility of the confined walk. On failure, `witness` is the first
// offending point and `reason` says which direction failed.
struct H1Result {
    bool ok = false;
    std::vector<int> witness;
    std::string reason;
};

H1Result check_h1(const WalkModel& m, int box = 10);

} // namespace orthant
