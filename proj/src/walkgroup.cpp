#include "orthant/walkgroup.hpp"

#include "orthant/errors.hpp"
#include "orthant/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace orthant {

WalkMaps walk_maps(const WalkModel& m) {
    WalkMaps wm;
    wm.dim = m.dim;
    wm.secs = sections(m);
    return wm;
}

bool WalkMaps::applicable(int i, const Vec& x, double tol) const {
    if (std::fabs(x[i]) < tol) return false;
    return std::fabs(secs[i].A.eval(x)) >= tol;
}

Vec WalkMaps::apply(int i, const Vec& x) const {
    double a = secs[i].A.eval(x);
    if (std::fabs(a) < 1e-12 || std::fabs(x[i]) < 1e-12)
        fail_numeric("substitution map " + std::to_string(i) + " evaluated at a pole");
    Vec y = x;
    y[i] = secs[i].C.eval(x) / (x[i] * a);
    return y;
}

Mat WalkMaps::jacobian(int i, const Vec& x) const {
    double a = secs[i].A.eval(x);
    if (std::fabs(a) < 1e-12 || std::fabs(x[i]) < 1e-12)
        fail_numeric("substitution Jacobian " + std::to_string(i) + " evaluated at a pole");
    double c = secs[i].C.eval(x);
    Mat s = Mat::identity(dim);
    for (int j = 0; j < dim; ++j) {
        if (j == i) {
            s(i, i) = -c / (x[i] * x[i] * a);
        } else {
            double da = secs[i].A.dx(j).eval(x);
            double dc = secs[i].C.dx(j).eval(x);
            s(i, j) = (dc * a - c * da) / (x[i] * a * a);
        }
    }
    return s;
}

std::vector<Mat> jacobian_generators(const WalkMaps& wm, const Vec& x0) {
    std::vector<Mat> gens;
    for (int i = 0; i < wm.dim; ++i) gens.push_back(wm.jacobian(i, x0));
    return gens;
}

Mat walk_to_reflection_frame(const Mat& delta, const Mat& hessian) {
    const int d = delta.rows();
    Mat phi = sym_power(delta, 0.5);
    for (int i = 0; i < d; ++i) {
        if (!(hessian(i, i) > 0.0)) fail_numeric("degenerate Hessian diagonal");
        double s = std::sqrt(hessian(i, i));
        for (int r = 0; r < d; ++r) phi(r, i) *= s;
    }
    return phi;
}

PairOrder pair_order(double a, int denom_cap) {
    PairOrder po;
    std::ostringstream why;
    if (std::fabs(a) >= 1.0 - 1e-9) {
        po.kind = PairOrder::Kind::inconclusive;
        po.detail = "degenerate pair (|entry| = 1)";
        return po;
    }
    if (auto r = recognize_rational(a, 1000, 1e-9)) {
        if (*r == 0) {
            po.kind = PairOrder::Kind::finite;
            po.m = 2;
            po.detail = "entry 0: orthogonal pair";
            return po;
        }
        if (*r == Rat(1, 2) || *r == Rat(-1, 2)) {
            po.kind = PairOrder::Kind::finite;
            po.m = 3;
            po.detail = "entry " + rat_str(*r) + ": order 3";
            return po;
        }
        po.kind = PairOrder::Kind::infinite;
        why << "entry is the rational " << rat_str(*r)
            << " outside {0, +-1/2}: arccos is an irrational angle fraction";
        po.detail = why.str();
        return po;
    }
    if (auto r2 = recognize_rational(2 * a * a - 1, 1000, 1e-9)) {
        const Rat v = *r2;
        if (!(v == 0 || v == 1 || v == -1 || v == Rat(1, 2) || v == Rat(-1, 2))) {
            po.kind = PairOrder::Kind::infinite;
            why << "doubled-angle cosine is the rational " << rat_str(v)
                << " outside {0, +-1/2, +-1}: the angle is an irrational fraction of pi";
            po.detail = why.str();
            return po;
        }
    }
    double t = std::acos(std::clamp(a, -1.0, 1.0)) / M_PI;
    if (auto frac = recognize_rational(t, denom_cap, 1e-9)) {
        po.kind = PairOrder::Kind::finite;
        po.m = static_cast<int>(frac->get_den().get_si());
        po.detail = "arccos(entry)/pi = " + rat_str(*frac);
        return po;
    }
    po.kind = PairOrder::Kind::inconclusive;
    po.detail = "no rational structure recognized";
    return po;
}

ScanGrid ScanGrid::default_grid() {
    ScanGrid g;
    g.frozen = {0.5, 1.0, 1.5};
    g.starts = {{0.5, 0.5}, {0.5, 1.5}, {1.5, 0.5}, {1.5, 1.5}};
    return g;
}

ScanGrid ScanGrid::extended_grid() {
    ScanGrid g;
    for (double v : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        g.frozen.push_back(v);
        g.frozen.push_back(-v);
    }
    g.starts = {{0.5, 0.5}, {0.5, 1.5}, {1.5, 0.5}, {1.5, 1.5}};
    return g;
}

namespace {

// One Newton run for the pair (i, j) with spectators fixed: solve
// x_i^2 A_i - C_i = 0, x_j^2 A_j - C_j = 0 in (x_i, x_j).
std::optional<Vec> newton_pair(const WalkMaps& wm, int i, int j, Vec x) {
    const PolyQ &ai = wm.secs[i].A, &ci = wm.secs[i].C;
    const PolyQ &aj = wm.secs[j].A, &cj = wm.secs[j].C;
    for (int it = 0; it < 100; ++it) {
        double vai = ai.eval(x), vci = ci.eval(x);
        double vaj = aj.eval(x), vcj = cj.eval(x);
        double g1 = x[i] * x[i] * vai - vci;
        double g2 = x[j] * x[j] * vaj - vcj;
        if (std::fabs(g1) < 1e-12 && std::fabs(g2) < 1e-12) return x;
        // A_i, C_i have no x_i dependence; the diagonal terms are clean.
        double j11 = 2 * x[i] * vai + x[i] * x[i] * ai.dx(i).eval(x) - ci.dx(i).eval(x);
        double j12 = x[i] * x[i] * ai.dx(j).eval(x) - ci.dx(j).eval(x);
        double j21 = x[j] * x[j] * aj.dx(i).eval(x) - cj.dx(i).eval(x);
        double j22 = 2 * x[j] * vaj + x[j] * x[j] * aj.dx(j).eval(x) - cj.dx(j).eval(x);
        double det = j11 * j22 - j12 * j21;
        if (std::fabs(det) < 1e-14) return std::nullopt;
        double di = (j22 * g1 - j12 * g2) / det;
        double dj = (-j21 * g1 + j11 * g2) / det;
        x[i] -= di;
        x[j] -= dj;
        if (std::fabs(x[i]) > 1e6 || std::fabs(x[j]) > 1e6) return std::nullopt;
    }
    return std::nullopt;
}

bool near_point(const Vec& a, const Vec& b, double tol = 1e-8) {
    double m = 0.0;
    for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::fabs(a[k] - b[k]));
    return m <= tol;
}

// If the composition has finite order m, its Jacobian at a common fixed
// point satisfies M^m = I exactly; a multiple eigenvalue at modulus 1 then
// shows up in the characteristic-polynomial roots as a cluster of spurious
// radius eps^(1/mult), which can cross the witness threshold. Powers expose
// the finite order directly and are immune to that splitting.
bool finite_order_matrix(const Mat& m, int cap = 512, double tol = 1e-8) {
    Mat w = m;
    for (int k = 1; k <= cap; ++k) {
        double dist = 0.0, size = 0.0;
        for (int r = 0; r < m.rows(); ++r)
            for (int c = 0; c < m.cols(); ++c) {
                dist = std::max(dist, std::fabs(w(r, c) - (r == c ? 1.0 : 0.0)));
                size = std::max(size, std::fabs(w(r, c)));
            }
        if (dist < tol) return true;
        if (!(size < 1e12)) return false; // exploding or NaN: certainly not periodic
        w = w * m;
    }
    return false;
}

// Per-step log growth of ||M^n v|| for a fixed pseudo-random start vector:
// ~log(spectral radius). Bounded orbits (all eigenvalue moduli 1, semisimple)
// give |rate| ~ log(basis distortion)/N, decisively below any genuine
// off-circle modulus. Stops early once the accumulated growth is conclusive.
double growth_log_rate(const Mat& m, long long n_max = 4000000) {
    std::mt19937_64 rng(0x5eedULL);
    std::normal_distribution<double> gauss;
    Vec v(m.rows());
    for (double& c : v) c = gauss(rng);
    double logsum = 0.0;
    for (long long n = 1; n <= n_max; ++n) {
        v = m * v;
        double s = norm2(v);
        if (!(s > 0.0) || !std::isfinite(s)) return 1.0; // collapsed or exploded
        if (s > 1e12 || s < 1e-12) {
            logsum += std::log(s);
            for (double& c : v) c /= s;
        }
        if (std::fabs(logsum) > 50.0) return logsum / static_cast<double>(n);
    }
    return (logsum + std::log(norm2(v))) / static_cast<double>(n_max);
}

// A candidate eigenvalue off the unit circle is accepted only when the
// matrix dynamics confirm it: not a finite-order product, and a genuinely
// drifting orbit under M or its reverse (the generator Jacobians are
// involutions at the fixed point, so the reverse product is the inverse and
// catches moduli inside the circle as growth).
bool confirmed_witness(const Mat& ji, const Mat& jj) {
    Mat m = ji * jj;
    if (finite_order_matrix(m)) return false;
    double rate = std::max(growth_log_rate(m), growth_log_rate(jj * ji));
    return rate > 5e-7;
}

} // namespace

ScanResult fixed_point_scan(const WalkMaps& wm, const ScanGrid& grid, size_t budget) {
    ScanResult out;
    const int d = wm.dim;
    if (d < 2) return out;
    std::vector<Vec> seen;
    size_t used = 0;

    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            // Spectator tuple indices over grid.frozen^(d-2).
            std::vector<int> spect;
            for (int k = 0; k < d; ++k)
                if (k != i && k != j) spect.push_back(k);
            std::vector<size_t> idx(spect.size(), 0);
            bool more = true;
            while (more) {
                Vec base(d, 0.0);
                for (size_t s = 0; s < spect.size(); ++s) base[spect[s]] = grid.frozen[idx[s]];
                for (auto [si, sj] : grid.starts) {
                    if (used++ >= budget) {
                        out.truncated = true;
                        return out;
                    }
                    Vec x = base;
                    x[i] = si;
                    x[j] = sj;
                    auto sol = newton_pair(wm, i, j, x);
                    if (!sol) continue;
                    Vec& p = *sol;
                    // Genuineness: away from the poles of both maps.
                    if (std::fabs(p[i]) < 1e-6 || std::fabs(p[j]) < 1e-6) continue;
                    if (std::fabs(wm.secs[i].A.eval(p)) < 1e-9 ||
                        std::fabs(wm.secs[j].A.eval(p)) < 1e-9)
                        continue;
                    bool dup = false;
                    for (const Vec& q : seen)
                        if (near_point(p, q)) { dup = true; break; }
                    if (dup) continue;
                    seen.push_back(p);
                    ++out.fixed_points;
                    Mat ji = wm.jacobian(i, p), jj = wm.jacobian(j, p);
                    CVec eig = eigenvalues(ji * jj);
                    double dev = 0.0;
                    std::complex<double> worst = 0.0;
                    for (auto z : eig) {
                        double e = std::fabs(std::abs(z) - 1.0);
                        if (e > dev) { dev = e; worst = z; }
                    }
                    if (dev > 1e-6 && confirmed_witness(ji, jj)) {
                        FixedPointWitness w;
                        w.i = i;
                        w.j = j;
                        w.x = p;
                        w.lambda = worst;
                        w.deviation = dev;
                        out.witnesses.push_back(std::move(w));
                    }
                }
                // Advance the spectator tuple.
                more = false;
                for (size_t s = 0; s < idx.size(); ++s) {
                    if (++idx[s] < grid.frozen.size()) { more = true; break; }
                    idx[s] = 0;
                }
                if (idx.empty()) break;
            }
        }
    }
    return out;
}

int word_order(const WalkMaps& wm, const std::vector<int>& word, int cap, unsigned long seed) {
    if (word.empty()) return 1;
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x243f6a8885a308d3ULL);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    const int npoints = 5;

    std::vector<Vec> start(npoints, Vec(wm.dim));
    for (auto& p : start)
        for (double& v : p) v = u(rng);

    std::vector<Vec> cur = start;
    for (int n = 1; n <= cap; ++n) {
        for (int pt = 0; pt < npoints; ++pt) {
            for (int g : word) {
                if (!wm.applicable(g, cur[pt])) return 0; // orbit hit a pole: give up
                cur[pt] = wm.apply(g, cur[pt]);
                for (double v : cur[pt])
                    if (!std::isfinite(v) || std::fabs(v) > 1e9) return 0;
            }
        }
        bool all_back = true;
        for (int pt = 0; pt < npoints && all_back; ++pt)
            all_back = near_point(cur[pt], start[pt], 1e-9);
        if (all_back) return n;
    }
    return 0;
}

GvsHReport g_vs_h_report(const WalkMaps& wm, const Mat& delta, std::optional<Int> h_order,
                         bool h_known_infinite, const ScanResult& scan,
                         std::optional<long long> user_g_order, long long user_min_normal,
                         unsigned long seed) {
    GvsHReport rep;
    rep.witnesses = scan.witnesses;
    const int d = wm.dim;

    bool any_pair_infinite = false;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            PairEntry e;
            e.i = i;
            e.j = j;
            e.angle = pair_order(delta(i, j));
            if (e.angle.kind == PairOrder::Kind::infinite) any_pair_infinite = true;
            rep.pairs.push_back(std::move(e));
        }

    if (any_pair_infinite) {
        rep.conclusion = GvsHReport::Conclusion::both_infinite;
        rep.route = "a generator pair has infinite order (irrational angle fraction), "
                    "so the reflection group and the substitution group are both infinite";
        return rep;
    }
    if (h_known_infinite) {
        rep.conclusion = GvsHReport::Conclusion::both_infinite;
        rep.route = "the reflection group is infinite and the substitution group covers it";
        return rep;
    }
    if (!scan.witnesses.empty()) {
        const FixedPointWitness& w = scan.witnesses.front();
        std::ostringstream os;
        os << "common fixed point of maps " << w.i << "," << w.j
           << " with Jacobian eigenvalue off the unit circle (deviation " << w.deviation
           << "): the substitution group is infinite";
        if (h_order) {
            os << "; the reflection group is finite: not isomorphic";
            rep.conclusion = GvsHReport::Conclusion::g_infinite;
        } else {
            rep.conclusion = GvsHReport::Conclusion::g_infinite;
            os << "; reflection group undetermined";
        }
        rep.route = os.str();
        return rep;
    }

    // Probe pair orders of the actual maps; they bound G from above through
    // the Coxeter group on those exponents.
    bool all_orders = true;
    for (PairEntry& e : rep.pairs) {
        e.order = word_order(wm, {e.i, e.j}, 64, seed);
        if (e.order < 2) all_orders = false;
    }
    if (all_orders && d >= 1) {
        CoxeterDiagram kd;
        kd.rank = d;
        kd.label.assign(d, std::vector<EdgeLabel>(d));
        for (const PairEntry& e : rep.pairs) {
            EdgeLabel l;
            l.kind = EdgeLabel::Kind::finite;
            l.m = e.order;
            l.k = 1;
            kd.label[e.i][e.j] = kd.label[e.j][e.i] = l;
        }
        Classification kc = classify(kd);
        if (kc.conclusive && kc.finite) {
            rep.k_finite = true;
            rep.k_order = kc.order;
        }
    }

    if (rep.k_finite && h_order && rep.k_order == *h_order) {
        rep.conclusion = GvsHReport::Conclusion::isomorphic;
        rep.route = "the Coxeter group on the probed pair orders has order " +
                    rep.k_order.get_str() +
                    " equal to the reflection group order, pinning the sandwiched "
                    "substitution group";
        return rep;
    }
    if (user_g_order && h_order) {
        Int bound = Int(1) << d;
        bound *= Int(static_cast<long>(user_min_normal));
        if (Int(static_cast<long>(*user_g_order)) < bound) {
            rep.conclusion = GvsHReport::Conclusion::isomorphic;
            rep.route = "supplied group order " + std::to_string(*user_g_order) +
                        " is below 2^dim * " + std::to_string(user_min_normal) +
                        " = " + bound.get_str() +
                        ", so the cover of the reflection group has trivial kernel";
            return rep;
        }
    }
    if (rep.k_finite && h_order) {
        rep.conclusion = GvsHReport::Conclusion::bounded;
        rep.route = "sandwich " + rep.k_order.get_str() + " >= |G| >= " + h_order->get_str() +
                    " leaves the comparison undecided";
        return rep;
    }
    rep.conclusion = GvsHReport::Conclusion::inconclusive;
    rep.route = h_order ? "pair orders of the maps could not all be established"
                        : "neither group could be pinned down";
    return rep;
}

} // namespace orthant
