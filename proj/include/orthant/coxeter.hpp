#pragma once

#include "orthant/linalg.hpp"
#include "orthant/rational.hpp"

#include <string>
#include <vector>

namespace orthant {

// Label of one wall pair. `finite` means the wall angle was recognized as
// k*pi/m in lowest terms (the two reflections then generate a dihedral group
// of order 2m). Unrecognized angles are kept with their covariance entry.
struct EdgeLabel {
    enum class Kind { finite, unrecognized };
    Kind kind = Kind::finite;
    int m = 2; // dihedral parameter; 2 = orthogonal walls (no edge)
    int k = 1; // wall angle = k*pi/m, gcd(k, m) = 1
    double cosine = 0.0; // covariance entry, kept for diagnostics
};

// Symmetric matrix of pair labels over the wall set.
struct CoxeterDiagram {
    int rank = 0;
    std::vector<std::vector<EdgeLabel>> label; // label[i][j], i != j

    const EdgeLabel& at(int i, int j) const { return label[i][j]; }
    bool recognized() const; // every pair labeled finite
    bool chamber_shaped() const; // recognized and every numerator k is 1
};

// Build the diagram from the normalized covariance matrix. The wall angle
// between walls i,j is pi - arccos(delta_ij). Recognition: first try angles
// pi/m for 2 <= m <= denom_cap, then the cosines of the remaining angles
// k*pi/m with m in {3,4,5,6} (the values 0, ±1/2, ±sqrt2/2, ±sqrt3/2,
// ±(sqrt5-1)/4, ±(sqrt5+1)/4). Everything else stays unrecognized.
CoxeterDiagram build_diagram(const Mat& delta, int denom_cap = 400);

// One connected component of the diagram together with its exact type.
struct ComponentType {
    std::string name; // "A3", "B4", "I2(7)", "Z/2Z", ...
    std::vector<int> nodes;
    bool finite = false;
    Int order = 0;       // |component group| when finite
    Int reflections = 0; // number of reflections when finite
};

struct Classification {
    bool conclusive = false; // false when some pair label is unrecognized
    std::string reason;      // explanation when inconclusive
    std::vector<ComponentType> components;
    bool finite = false; // all components finite
    std::string name;    // " x "-joined component names
    Int order = 0;       // product of component orders when finite
    Int reflections = 0; // sum over components when finite
};

// Exact classification of the reflection group generated by the wall
// reflections, by matching each diagram component against the finite types
// A, B, D, E6..E8, F4, H3, H4, I2(m). Components that match no finite type
// (circuits, affine shapes, forbidden label placements) are reported
// infinite. Diagrams with unrecognized labels return conclusive = false.
Classification classify(const CoxeterDiagram& d);

// Infinite-group certificate for unrecognized angles: if no wall pair is
// orthogonal to all other walls (so no rank-2 factor can split off) and some
// covariance entry lies outside the admissible finite-group set, the
// reflection group is infinite.
struct InfiniteTest {
    bool applicable = false;    // no split-off pair exists
    bool witness = false;       // some entry outside the admissible set
    int wi = -1, wj = -1;       // witness pair
    double value = 0.0;         // offending covariance entry
    bool proves_infinite() const { return applicable && witness; }
};

InfiniteTest infinite_reflection_test(const Mat& delta, double tol = 1e-9);

// Orbit closure of the wall normals under their own reflections. When the
// closure stabilizes below `cap`, `roots` holds the full root system (both
// signs) and roots.size()/2 counts the reflections of the group.
struct RootClosure {
    bool complete = false;
    std::vector<Vec> roots;
};

RootClosure generate_roots(const std::vector<Vec>& normals, size_t cap = 2000);

// Breadth-first closure of a matrix set under multiplication. Entrywise
// comparison with tolerance 1e-8; gives the group order when it completes
// under `cap` elements.
struct GroupClosure {
    bool complete = false;
    std::vector<Mat> elements;
    size_t order() const { return elements.size(); }
};

GroupClosure matrix_group_closure(const std::vector<Mat>& generators, size_t cap = 20000);

} // namespace orthant
