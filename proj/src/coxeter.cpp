#include "orthant/coxeter.hpp"

#include "orthant/errors.hpp"
#include "orthant/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace orthant {

bool CoxeterDiagram::recognized() const {
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j)
            if (label[i][j].kind != EdgeLabel::Kind::finite) return false;
    return true;
}

bool CoxeterDiagram::chamber_shaped() const {
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) {
            const EdgeLabel& l = label[i][j];
            if (l.kind != EdgeLabel::Kind::finite || l.k != 1) return false;
        }
    return true;
}

CoxeterDiagram build_diagram(const Mat& delta, int denom_cap) {
    const int d = delta.rows();
    if (delta.cols() != d) fail_domain("covariance matrix must be square");
    CoxeterDiagram dg;
    dg.rank = d;
    dg.label.assign(d, std::vector<EdgeLabel>(d));

    const double tol = 1e-9;
    const double s2 = std::sqrt(2.0) / 2.0, s3 = std::sqrt(3.0) / 2.0;
    const double g1 = (std::sqrt(5.0) + 1.0) / 4.0, g2 = (std::sqrt(5.0) - 1.0) / 4.0;
    struct Row { double cos_angle; int k, m; };
    static const Row table[] = {
        {0.0, 1, 2}, {0.5, 1, 3}, {-0.5, 2, 3}, {s2, 1, 4},  {-s2, 3, 4},  {s3, 1, 6},
        {-s3, 5, 6}, {g1, 1, 5},  {g2, 2, 5},   {-g2, 3, 5}, {-g1, 4, 5},
    };

    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double a = delta(i, j);
            EdgeLabel lab;
            lab.cosine = a;
            lab.kind = EdgeLabel::Kind::unrecognized;
            if (std::fabs(a) < 1.0 - 1e-12) {
                const double c = -a; // cosine of the wall angle pi - arccos(a)
                const double t = std::acos(std::clamp(c, -1.0, 1.0)) / M_PI;
                for (int m = 2; m <= denom_cap; ++m) {
                    if (std::fabs(t - 1.0 / m) <= tol) {
                        lab.kind = EdgeLabel::Kind::finite;
                        lab.m = m;
                        lab.k = 1;
                        break;
                    }
                }
                if (lab.kind == EdgeLabel::Kind::unrecognized) {
                    for (const Row& r : table) {
                        if (std::fabs(c - r.cos_angle) <= tol) {
                            lab.kind = EdgeLabel::Kind::finite;
                            lab.m = r.m;
                            lab.k = r.k;
                            break;
                        }
                    }
                }
            }
            dg.label[i][j] = dg.label[j][i] = lab;
        }
    }
    return dg;
}

namespace {

Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Int pow2(int n) {
    Int p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), n);
    return p;
}

ComponentType infinite_component(std::vector<int> nodes, const std::string& why) {
    ComponentType ct;
    ct.name = "infinite(" + why + ")";
    ct.nodes = std::move(nodes);
    ct.finite = false;
    return ct;
}

ComponentType named(std::vector<int> nodes, std::string name, Int order, Int reflections) {
    ComponentType ct;
    ct.name = std::move(name);
    ct.nodes = std::move(nodes);
    ct.finite = true;
    ct.order = std::move(order);
    ct.reflections = std::move(reflections);
    return ct;
}

ComponentType rank2_type(std::vector<int> nodes, int m) {
    std::string name = m == 3 ? "A2" : m == 4 ? "B2" : m == 6 ? "G2"
                                                : "I2(" + std::to_string(m) + ")";
    return named(std::move(nodes), std::move(name), Int(2 * m), Int(m));
}

ComponentType classify_component(const CoxeterDiagram& d, std::vector<int> nodes) {
    const int r = static_cast<int>(nodes.size());
    if (r == 1) return named(std::move(nodes), "Z/2Z", Int(2), Int(1));

    // Local adjacency over the component.
    auto m_of = [&](int a, int b) { return d.at(nodes[a], nodes[b]).m; };
    std::vector<std::vector<int>> adj(r);
    int edges = 0;
    for (int a = 0; a < r; ++a)
        for (int b = a + 1; b < r; ++b)
            if (m_of(a, b) >= 3) {
                adj[a].push_back(b);
                adj[b].push_back(a);
                ++edges;
            }
    if (edges != r - 1) return infinite_component(std::move(nodes), "circuit");
    for (int a = 0; a < r; ++a)
        if (adj[a].size() >= 4) return infinite_component(std::move(nodes), "branching");

    std::vector<int> branch;
    for (int a = 0; a < r; ++a)
        if (adj[a].size() == 3) branch.push_back(a);
    if (branch.size() >= 2) return infinite_component(std::move(nodes), "branching");

    if (branch.empty()) {
        // Path: walk from an endpoint and read the labels in order.
        int start = 0;
        for (int a = 0; a < r; ++a)
            if (adj[a].size() <= 1) { start = a; break; }
        std::vector<int> order{start};
        std::vector<int> labels;
        int prev = -1, cur = start;
        while (static_cast<int>(order.size()) < r) {
            int nxt = -1;
            for (int b : adj[cur])
                if (b != prev) { nxt = b; break; }
            labels.push_back(m_of(cur, nxt));
            order.push_back(nxt);
            prev = cur;
            cur = nxt;
        }
        if (r == 2) return rank2_type(std::move(nodes), labels[0]);

        std::vector<size_t> special;
        for (size_t p = 0; p < labels.size(); ++p)
            if (labels[p] != 3) special.push_back(p);
        if (special.empty())
            return named(std::move(nodes), "A" + std::to_string(r), factorial(r + 1),
                         Int(r) * (r + 1) / 2);
        if (special.size() == 1) {
            const size_t p = special[0];
            const int m = labels[p];
            const bool at_end = p == 0 || p + 1 == labels.size();
            if (m == 4 && at_end)
                return named(std::move(nodes), "B" + std::to_string(r),
                             pow2(r) * factorial(r), Int(r) * r);
            if (m == 4 && r == 4 && p == 1)
                return named(std::move(nodes), "F4", Int(1152), Int(24));
            if (m == 5 && at_end && r == 3) return named(std::move(nodes), "H3", Int(120), Int(15));
            if (m == 5 && at_end && r == 4)
                return named(std::move(nodes), "H4", Int(14400), Int(60));
        }
        return infinite_component(std::move(nodes), "labels");
    }

    // Single degree-3 node: D/E shapes need every label equal to 3.
    for (int a = 0; a < r; ++a)
        for (int b : adj[a])
            if (a < b && m_of(a, b) != 3) return infinite_component(std::move(nodes), "labels");
    std::vector<int> arms;
    for (int first : adj[branch[0]]) {
        int len = 1, prev = branch[0], cur = first;
        while (adj[cur].size() == 2) {
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1)
        return named(std::move(nodes), "D" + std::to_string(r), pow2(r - 1) * factorial(r),
                     Int(r) * (r - 1));
    if (arms == std::vector<int>{1, 2, 2}) return named(std::move(nodes), "E6", Int(51840), Int(36));
    if (arms == std::vector<int>{1, 2, 3})
        return named(std::move(nodes), "E7", Int(2903040), Int(63));
    if (arms == std::vector<int>{1, 2, 4})
        return named(std::move(nodes), "E8", Int(696729600), Int(120));
    return infinite_component(std::move(nodes), "branching");
}

} // namespace

Classification classify(const CoxeterDiagram& d) {
    Classification out;
    for (int i = 0; i < d.rank; ++i)
        for (int j = i + 1; j < d.rank; ++j)
            if (d.at(i, j).kind == EdgeLabel::Kind::unrecognized) {
                out.conclusive = false;
                out.reason = "wall angle for pair (" + std::to_string(i) + "," +
                             std::to_string(j) + ") matches no dihedral form (covariance entry " +
                             std::to_string(d.at(i, j).cosine) + ")";
                return out;
            }
    out.conclusive = true;

    std::vector<int> comp(d.rank, -1);
    int ncomp = 0;
    for (int s = 0; s < d.rank; ++s) {
        if (comp[s] != -1) continue;
        std::deque<int> q{s};
        comp[s] = ncomp;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int w = 0; w < d.rank; ++w)
                if (comp[w] == -1 && d.at(v, w).m >= 3 &&
                    d.at(v, w).kind == EdgeLabel::Kind::finite && v != w) {
                    comp[w] = ncomp;
                    q.push_back(w);
                }
        }
        ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> nodes;
        for (int v = 0; v < d.rank; ++v)
            if (comp[v] == c) nodes.push_back(v);
        out.components.push_back(classify_component(d, std::move(nodes)));
    }

    out.finite = true;
    out.order = 1;
    out.reflections = 0;
    for (size_t c = 0; c < out.components.size(); ++c) {
        const ComponentType& ct = out.components[c];
        out.name += (c ? " x " : "") + ct.name;
        if (!ct.finite) out.finite = false;
    }
    if (out.finite) {
        for (const ComponentType& ct : out.components) {
            out.order *= ct.order;
            out.reflections += ct.reflections;
        }
    } else {
        out.order = 0;
        out.reflections = 0;
    }
    return out;
}

InfiniteTest infinite_reflection_test(const Mat& delta, double tol) {
    const int d = delta.rows();
    InfiniteTest t;
    t.applicable = true;
    for (int i = 0; i < d && t.applicable; ++i)
        for (int j = i + 1; j < d && t.applicable; ++j) {
            bool separated = true;
            for (int k = 0; k < d; ++k) {
                if (k == i || k == j) continue;
                if (std::fabs(delta(i, k)) > tol || std::fabs(delta(j, k)) > tol) {
                    separated = false;
                    break;
                }
            }
            if (separated) t.applicable = false; // a rank-2 factor can split off
        }

    const double adm[] = {0.0, 0.5, std::sqrt(2.0) / 2.0, std::sqrt(3.0) / 2.0,
                          (std::sqrt(5.0) - 1.0) / 4.0, (std::sqrt(5.0) + 1.0) / 4.0};
    for (int i = 0; i < d && !t.witness; ++i)
        for (int j = i + 1; j < d && !t.witness; ++j) {
            const double v = std::fabs(delta(i, j));
            if (v >= 1.0 - tol) continue;
            bool admissible = false;
            for (double a : adm)
                if (std::fabs(v - a) <= tol) { admissible = true; break; }
            if (!admissible) {
                t.witness = true;
                t.wi = i;
                t.wj = j;
                t.value = delta(i, j);
            }
        }
    return t;
}

RootClosure generate_roots(const std::vector<Vec>& normals, size_t cap) {
    RootClosure rc;
    if (normals.empty()) { rc.complete = true; return rc; }
    std::vector<Mat> gens;
    for (const Vec& u : normals) gens.push_back(reflection(u));

    auto contains = [&](const Vec& v) {
        for (const Vec& r : rc.roots) {
            double m = 0.0;
            for (size_t i = 0; i < v.size(); ++i) m = std::max(m, std::fabs(v[i] - r[i]));
            if (m <= 1e-8) return true;
        }
        return false;
    };

    std::deque<Vec> work;
    auto push = [&](const Vec& v) {
        if (contains(v)) return true;
        if (rc.roots.size() >= cap) return false;
        rc.roots.push_back(v);
        work.push_back(v);
        return true;
    };

    for (const Vec& u : normals) {
        Vec neg(u.size());
        for (size_t i = 0; i < u.size(); ++i) neg[i] = -u[i];
        if (!push(u) || !push(neg)) { rc.complete = false; return rc; }
    }
    while (!work.empty()) {
        Vec v = std::move(work.front());
        work.pop_front();
        for (const Mat& g : gens)
            if (!push(g * v)) { rc.complete = false; return rc; }
    }
    rc.complete = true;
    return rc;
}

namespace {

double max_entry_diff(const Mat& a, const Mat& b) {
    double m = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m = std::max(m, std::fabs(a(i, j) - b(i, j)));
    return m;
}

long long bucket_key(long long kt, long long k0) { return (kt << 24) ^ (k0 & 0xffffff); }

} // namespace

GroupClosure matrix_group_closure(const std::vector<Mat>& generators, size_t cap) {
    GroupClosure g;
    if (generators.empty()) { g.complete = true; return g; }
    const int n = generators[0].rows();

    std::unordered_map<long long, std::vector<size_t>> buckets;
    auto keys_of = [n](const Mat& m) {
        double tr = 0.0;
        for (int i = 0; i < n; ++i) tr += m(i, i);
        return std::pair<long long, long long>(llround(tr * 1e4), llround(m(0, 0) * 1e4));
    };
    auto find = [&](const Mat& m) -> bool {
        auto [kt, k0] = keys_of(m);
        for (long long dt = -1; dt <= 1; ++dt)
            for (long long d0 = -1; d0 <= 1; ++d0) {
                auto it = buckets.find(bucket_key(kt + dt, k0 + d0));
                if (it == buckets.end()) continue;
                for (size_t idx : it->second)
                    if (max_entry_diff(g.elements[idx], m) <= 1e-8) return true;
            }
        return false;
    };
    auto insert = [&](const Mat& m) {
        auto [kt, k0] = keys_of(m);
        buckets[bucket_key(kt, k0)].push_back(g.elements.size());
        g.elements.push_back(m);
    };

    insert(Mat::identity(n));
    size_t head = 0;
    while (head < g.elements.size()) {
        Mat e = g.elements[head++];
        for (const Mat& gen : generators) {
            Mat ne = gen * e;
            if (find(ne)) continue;
            if (g.elements.size() >= cap) { g.complete = false; return g; }
            insert(ne);
        }
    }
    g.complete = true;
    return g;
}

} // namespace orthant
