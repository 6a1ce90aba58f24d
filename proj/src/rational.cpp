#include "orthant/rational.hpp"

#include "orthant/errors.hpp"

#include <cctype>
#include <cmath>

namespace orthant {

Rat rat_parse(const std::string& s) {
    if (s.empty()) fail_parse("empty rational literal");
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)) && c != '/' && c != '-' && c != '+')
            fail_parse("invalid rational literal '" + s + "'");
    }
    std::string t = s[0] == '+' ? s.substr(1) : s;
    if (t.empty() || t.find('+') != std::string::npos)
        fail_parse("invalid rational literal '" + s + "'");
    Rat r;
    if (r.set_str(t, 10) != 0) fail_parse("invalid rational literal '" + s + "'");
    if (r.get_den() == 0) fail_parse("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) {
    return r.get_str();
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) fail_numeric("negative power of zero");
    Rat out;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), a);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), a);
    if (e < 0) mpq_inv(out.get_mpq_t(), out.get_mpq_t());
    out.canonicalize();
    return out;
}

double int_log(const Int& z) {
    signed long exp2 = 0;
    double m = mpz_get_d_2exp(&exp2, z.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(exp2) * std::log(2.0);
}

std::optional<Rat> recognize_rational(double v, long max_den, double tol) {
    if (!std::isfinite(v)) return std::nullopt;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        if (fl > 9e17 || fl < -9e17) break;
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den || q2 < 0) break;
        if (q2 > 0 && std::fabs(v - static_cast<double>(p2) / static_cast<double>(q2)) <= tol) {
            Rat r(Int(static_cast<long>(p2)), Int(static_cast<long>(q2)));
            r.canonicalize();
            return r;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = x - fl;
        if (frac < 1e-15) break;
        x = 1.0 / frac;
    }
    return std::nullopt;
}

} // namespace orthant
