#pragma once

#include "orthant/rational.hpp"

#include <cmath>
#include <map>
#include <vector>

namespace orthant {

inline double coeff_to_double(double c) { return c; }
inline double coeff_to_double(const Rat& c) { return c.get_d(); }

// Sparse (Laurent) polynomial: exponent vector -> coefficient. Negative
// exponents are allowed; evaluation points must then avoid zero coordinates.
template <class C>
class Poly {
public:
    using Terms = std::map<std::vector<int>, C>;

    Poly() = default;
    explicit Poly(int nvars) : n_(nvars) {}

    static Poly constant(int nvars, const C& c) {
        Poly p(nvars);
        p.add_term(std::vector<int>(nvars, 0), c);
        return p;
    }

    // Homogeneous linear form sum_j coeffs[j] x_j.
    static Poly linear(const std::vector<C>& coeffs) {
        Poly p(static_cast<int>(coeffs.size()));
        for (size_t j = 0; j < coeffs.size(); ++j) {
            std::vector<int> e(coeffs.size(), 0);
            e[j] = 1;
            p.add_term(e, coeffs[j]);
        }
        return p;
    }

    int nvars() const { return n_; }
    const Terms& terms() const { return t_; }
    bool empty() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    void add_term(const std::vector<int>& e, const C& c) {
        auto it = t_.find(e);
        if (it == t_.end()) {
            if (!(c == C(0))) t_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == C(0)) t_.erase(it);
        }
    }

    Poly operator+(const Poly& o) const {
        Poly out = *this;
        for (const auto& [e, c] : o.t_) out.add_term(e, c);
        return out;
    }

    Poly operator*(const Poly& o) const {
        Poly out(n_);
        for (const auto& [e1, c1] : t_)
            for (const auto& [e2, c2] : o.t_) {
                std::vector<int> e(n_);
                for (int i = 0; i < n_; ++i) e[i] = e1[i] + e2[i];
                out.add_term(e, c1 * c2);
            }
        return out;
    }

    Poly scaled(const C& s) const {
        Poly out(n_);
        if (s == C(0)) return out;
        for (const auto& [e, c] : t_) out.t_.emplace(e, c * s);
        return out;
    }

    Poly dx(int j) const {
        Poly out(n_);
        for (const auto& [e, c] : t_) {
            if (e[j] == 0) continue;
            std::vector<int> d = e;
            d[j] -= 1;
            out.add_term(d, c * C(e[j]));
        }
        return out;
    }

    Poly laplacian() const {
        Poly out(n_);
        for (int j = 0; j < n_; ++j) {
            Poly d2 = dx(j).dx(j);
            out = out + d2;
        }
        return out;
    }

    double eval(const std::vector<double>& x) const {
        double s = 0.0;
        for (const auto& [e, c] : t_) {
            double m = coeff_to_double(c);
            for (int i = 0; i < n_; ++i)
                if (e[i] != 0) m *= std::pow(x[i], e[i]);
            s += m;
        }
        return s;
    }

    // Max |coefficient| as double (residual reporting).
    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [e, c] : t_) m = std::max(m, std::fabs(coeff_to_double(c)));
        return m;
    }

    int total_degree() const {
        int deg = 0;
        for (const auto& [e, c] : t_) {
            int s = 0;
            for (int v : e) s += v;
            deg = std::max(deg, s);
        }
        return deg;
    }

private:
    int n_ = 0;
    Terms t_;
};

using PolyQ = Poly<Rat>;
using PolyD = Poly<double>;

// Exact evaluation at a rational point (positive denominators assumed canonical).
Rat eval_exact(const PolyQ& p, const std::vector<Rat>& x);

} // namespace orthant
