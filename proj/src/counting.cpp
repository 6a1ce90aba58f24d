#include "orthant/counting.hpp"

#include "orthant/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

namespace orthant {

Rat CountTable::value(int n) const {
    if (n < 0 || n > n_max) fail_domain("count index out of range");
    Rat v(raw[n]);
    if (denom != 1) {
        Int dn;
        mpz_pow_ui(dn.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(n));
        v /= Rat(dn);
        v.canonicalize();
    }
    return v;
}

namespace {

struct Box {
    std::vector<long long> lo, hi, stride;
    long long vol = 0; // 0 = empty
};

struct BoxPlan {
    int dim;
    std::vector<long long> from, to, mp, mn;
    int n_max;

    Box at(int t) const {
        Box b;
        b.lo.resize(dim);
        b.hi.resize(dim);
        for (int c = 0; c < dim; ++c) {
            long long lo = std::max<long long>(
                0, std::max(from[c] - static_cast<long long>(t) * mn[c],
                            to[c] - static_cast<long long>(n_max - t) * mp[c]));
            long long hi = std::min(from[c] + static_cast<long long>(t) * mp[c],
                                    to[c] + static_cast<long long>(n_max - t) * mn[c]);
            if (hi < lo) return b; // empty
            b.lo[c] = lo;
            b.hi[c] = hi;
        }
        b.stride.assign(dim, 1);
        long long vol = 1;
        for (int c = dim - 1; c >= 0; --c) {
            b.stride[c] = vol;
            long long w = b.hi[c] - b.lo[c] + 1;
            if (vol > (long long)4e15 / w) fail_budget("layer box volume overflows the planner");
            vol *= w;
        }
        b.vol = vol;
        return b;
    }

    bool contains(const Box& b, const std::vector<long long>& x) const {
        if (b.vol == 0) return false;
        for (int c = 0; c < dim; ++c)
            if (x[c] < b.lo[c] || x[c] > b.hi[c]) return false;
        return true;
    }

    long long flat(const Box& b, const std::vector<long long>& x) const {
        long long f = 0;
        for (int c = 0; c < dim; ++c) f += (x[c] - b.lo[c]) * b.stride[c];
        return f;
    }
};

void pull_range(const BoxPlan& plan, const Box& src, const std::vector<Int>& v, const Box& dst,
                std::vector<Int>& nv, const std::vector<std::vector<int>>& steps,
                const std::vector<Int>& num, long long begin, long long end) {
    const int d = plan.dim;
    std::vector<long long> x(d);
    long long rem = begin;
    for (int c = 0; c < d; ++c) {
        x[c] = dst.lo[c] + rem / dst.stride[c];
        rem %= dst.stride[c];
    }
    for (long long f = begin; f < end; ++f) {
        Int& cell = nv[f];
        for (size_t si = 0; si < steps.size(); ++si) {
            const std::vector<int>& s = steps[si];
            long long sf = 0;
            bool ok = true;
            for (int c = 0; c < d; ++c) {
                long long sc = x[c] - s[c];
                if (sc < src.lo[c] || sc > src.hi[c]) {
                    ok = false;
                    break;
                }
                sf += (sc - src.lo[c]) * src.stride[c];
            }
            if (!ok) continue;
            const Int& val = v[sf];
            if (val == 0) continue;
            mpz_addmul(cell.get_mpz_t(), val.get_mpz_t(), num[si].get_mpz_t());
        }
        // Advance the odometer (last coordinate fastest).
        for (int c = d - 1; c >= 0; --c) {
            if (++x[c] <= dst.hi[c]) break;
            x[c] = dst.lo[c];
        }
    }
}

} // namespace

CountTable count_excursions(const WalkModel& m, const std::vector<long long>& from,
                            const std::vector<long long>& to, int n_max,
                            const CountOptions& opts) {
    const int d = m.dim;
    if (static_cast<int>(from.size()) != d || static_cast<int>(to.size()) != d)
        fail_domain("endpoint dimension does not match the model");
    for (long long v : from)
        if (v < 0) fail_domain("start point outside the orthant");
    for (long long v : to)
        if (v < 0) fail_domain("end point outside the orthant");
    if (n_max < 0) fail_domain("negative step count");

    CountTable table;
    table.from = from;
    table.to = to;
    table.n_max = n_max;
    table.weighted = !opts.unweighted;
    table.raw.assign(n_max + 1, Int(0));

    std::vector<Int> num;
    Int total(0);
    if (opts.unweighted) {
        table.denom = 1;
        num.assign(m.steps.size(), Int(1));
        total = static_cast<long>(m.steps.size());
    } else {
        Int q(1);
        for (const Rat& w : m.weights) {
            Int den = w.get_den();
            q = q / gcd(q, den) * den;
        }
        table.denom = q;
        for (const Rat& w : m.weights) num.push_back(w.get_num() * (q / w.get_den()));
        for (const Int& p : num) total += p;
    }

    BoxPlan plan;
    plan.dim = d;
    plan.from = from;
    plan.to = to;
    plan.n_max = n_max;
    plan.mp.assign(d, 0);
    plan.mn.assign(d, 0);
    for (const auto& s : m.steps)
        for (int c = 0; c < d; ++c) {
            plan.mp[c] = std::max<long long>(plan.mp[c], s[c]);
            plan.mn[c] = std::max<long long>(plan.mn[c], -s[c]);
        }

    // Pre-allocation budget check: peak of two adjacent layer volumes times a
    // conservative per-cell estimate (header plus limbs for values <= total^t).
    {
        long long peak_cells = 0;
        int peak_t = 0;
        long long prev = plan.at(0).vol;
        for (int t = 1; t <= n_max; ++t) {
            long long cur = plan.at(t).vol;
            if (prev + cur > peak_cells) {
                peak_cells = prev + cur;
                peak_t = t;
            }
            prev = cur;
        }
        double bits = static_cast<double>(peak_t) * int_log(total) / std::log(2.0);
        double per_cell = sizeof(Int) + 8.0 * (bits / 64.0 + 2.0) + 16.0;
        double estimate = static_cast<double>(peak_cells) * per_cell;
        if (estimate > static_cast<double>(opts.budget_bytes))
            fail_budget("estimated layer memory " + std::to_string(estimate / (1 << 20)) +
                        " MiB exceeds the budget of " +
                        std::to_string(opts.budget_bytes / (1 << 20)) + " MiB");
    }

    if (from == to) table.raw[0] = 1;
    Box box = plan.at(0);
    if (box.vol == 0) return table; // endpoints not mutually reachable
    std::vector<Int> v(box.vol);
    v[plan.flat(box, from)] = 1;

    int threads = std::clamp(opts.threads, 1, 64);
    for (int t = 1; t <= n_max; ++t) {
        Box nb = plan.at(t);
        if (nb.vol == 0) break; // nothing can still reach the target
        std::vector<Int> nv(nb.vol);
        if (threads == 1 || nb.vol < 4096) {
            pull_range(plan, box, v, nb, nv, m.steps, num, 0, nb.vol);
        } else {
            std::vector<std::thread> pool;
            long long chunk = (nb.vol + threads - 1) / threads;
            for (int w = 0; w < threads; ++w) {
                long long b = w * chunk, e = std::min<long long>(nb.vol, b + chunk);
                if (b >= e) break;
                pool.emplace_back([&, b, e] {
                    pull_range(plan, box, v, nb, nv, m.steps, num, b, e);
                });
            }
            for (auto& th : pool) th.join();
        }
        v = std::move(nv);
        box = nb;
        if (plan.contains(box, to)) table.raw[t] = v[plan.flat(box, to)];
    }

    long long g = 0;
    for (int n = 1; n <= n_max; ++n)
        if (table.raw[n] != 0) g = std::gcd(g, static_cast<long long>(n));
    table.period = g;
    return table;
}

namespace {

void dfs_count(const std::vector<std::vector<int>>& steps, const std::vector<Int>& num,
               const std::vector<long long>& mp, const std::vector<long long>& mn,
               const std::vector<long long>& to, std::vector<long long>& pos, const Int& weight,
               int depth, int n_max, std::vector<Int>& out) {
    const int d = static_cast<int>(pos.size());
    if (pos == to) out[depth] += weight;
    if (depth == n_max) return;
    int rem = n_max - depth;
    for (size_t si = 0; si < steps.size(); ++si) {
        bool ok = true;
        for (int c = 0; c < d && ok; ++c) {
            long long nc = pos[c] + steps[si][c];
            // Stay in the orthant and keep the target coordinate-reachable.
            if (nc < 0 || to[c] - nc > (rem - 1) * mp[c] || nc - to[c] > (rem - 1) * mn[c])
                ok = false;
        }
        if (!ok) continue;
        for (int c = 0; c < d; ++c) pos[c] += steps[si][c];
        dfs_count(steps, num, mp, mn, to, pos, Int(weight * num[si]), depth + 1, n_max, out);
        for (int c = 0; c < d; ++c) pos[c] -= steps[si][c];
    }
}

} // namespace

std::vector<Int> brute_force_raw(const WalkModel& m, const std::vector<long long>& from,
                                 const std::vector<long long>& to, int n_max, bool unweighted) {
    const int d = m.dim;
    if (static_cast<int>(from.size()) != d || static_cast<int>(to.size()) != d)
        fail_domain("endpoint dimension does not match the model");
    std::vector<Int> num;
    if (unweighted) {
        num.assign(m.steps.size(), Int(1));
    } else {
        Int q(1);
        for (const Rat& w : m.weights) {
            Int den = w.get_den();
            q = q / gcd(q, den) * den;
        }
        for (const Rat& w : m.weights) num.push_back(w.get_num() * (q / w.get_den()));
    }
    std::vector<long long> mp(d, 0), mn(d, 0);
    for (const auto& s : m.steps)
        for (int c = 0; c < d; ++c) {
            mp[c] = std::max<long long>(mp[c], s[c]);
            mn[c] = std::max<long long>(mn[c], -s[c]);
        }
    std::vector<Int> out(n_max + 1, Int(0));
    std::vector<long long> pos = from;
    dfs_count(m.steps, num, mp, mn, to, pos, Int(1), 0, n_max, out);
    return out;
}

namespace {

// One Richardson stage with weight n^w over (n, value) pairs.
std::vector<std::pair<double, double>> richardson(const std::vector<std::pair<double, double>>& v,
                                                  int w) {
    std::vector<std::pair<double, double>> out;
    for (size_t i = 1; i < v.size(); ++i) {
        double n0 = v[i - 1].first, n1 = v[i].first;
        double w0 = std::pow(n0, w), w1 = std::pow(n1, w);
        out.emplace_back(n1, (w1 * v[i].second - w0 * v[i - 1].second) / (w1 - w0));
    }
    return out;
}

double tail_mean(const std::vector<std::pair<double, double>>& v, int tail, double* spread) {
    size_t k = std::min<size_t>(tail, v.size());
    double s = 0, lo = v[v.size() - k].second, hi = lo;
    for (size_t i = v.size() - k; i < v.size(); ++i) {
        s += v[i].second;
        lo = std::min(lo, v[i].second);
        hi = std::max(hi, v[i].second);
    }
    if (spread) *spread = hi - lo;
    return s / static_cast<double>(k);
}

} // namespace

AsymptoticFit estimate_asymptotics(const CountTable& table, double rho) {
    if (!(rho > 0.0)) fail_domain("growth constant must be positive");
    std::vector<int> nz;
    for (int n = 1; n <= table.n_max; ++n)
        if (table.raw[n] != 0) nz.push_back(n);
    if (nz.size() < 20) fail_domain("need at least 20 nonzero counts for a fit");
    long long p = table.period > 0 ? table.period : 1;

    const double logq = int_log(table.denom);
    const double logrho = std::log(rho);
    std::vector<char> has(table.n_max + 1, 0);
    std::vector<double> ell(table.n_max + 1, 0.0);
    for (int n : nz) {
        has[n] = 1;
        ell[n] = int_log(table.raw[n]) - n * logq - n * logrho;
    }

    std::vector<std::pair<double, double>> alpha_seq, ratio_seq;
    for (int n : nz) {
        if (n + p > table.n_max || !has[n + p]) continue;
        double dl = ell[n + p] - ell[n];
        double dlogn = std::log(double(n + p)) - std::log(double(n));
        alpha_seq.emplace_back(n, -dl / dlogn);
        ratio_seq.emplace_back(n, std::exp(dl / static_cast<double>(p)));
    }
    if (alpha_seq.empty()) fail_domain("no consecutive nonzero counts on the period lattice");

    double cut = alpha_seq.back().first * 0.5;
    std::vector<std::pair<double, double>> awin, rwin;
    for (auto& e : alpha_seq)
        if (e.first >= cut) awin.push_back(e);
    for (auto& e : ratio_seq)
        if (e.first >= cut) rwin.push_back(e);
    if (awin.size() < 3) fail_domain("fit window too small");

    AsymptoticFit fit;
    fit.period = p;
    fit.window_lo = static_cast<int>(awin.front().first);
    fit.window_hi = static_cast<int>(awin.back().first);
    fit.points = static_cast<int>(awin.size());

    auto a2 = richardson(richardson(awin, 1), 2);
    if (a2.empty()) fail_domain("fit window too small");
    fit.alpha_hat = tail_mean(a2, 10, &fit.alpha_spread);

    auto r2 = richardson(richardson(rwin, 1), 2);
    fit.rho_hat = tail_mean(r2, 10, &fit.rho_spread) * rho;
    fit.rho_spread *= rho;
    return fit;
}

} // namespace orthant
