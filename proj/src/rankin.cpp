#include "cubictrace/rankin.hpp"

#include "cubictrace/arith.hpp"
#include "cubictrace/special.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <numeric>

namespace cubictrace::rankin {

namespace {
constexpr double pi = std::numbers::pi;
}

SatakePair make_satake(cplx alpha1, std::int64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime");
    if (std::abs(alpha1) < 1e-12)
        throw std::invalid_argument("alpha1 must be nonzero");
    SatakePair s{alpha1, 1.0 / alpha1};
    double cap = std::pow(static_cast<double>(p), 7.0 / 64.0) + 0.05;
    if (std::abs(s.alpha1) > cap || std::abs(s.alpha2) > cap)
        throw std::invalid_argument("Satake parameter outside the unitary range");
    return s;
}

double whittaker_diag(std::int64_t p, const SatakePair& satake, int n) {
    if (n < 0) return 0.0;
    // lambda(p^{m+1}) = lambda(p) lambda(p^m) - lambda(p^{m-1})
    cplx prev = 1.0, cur = satake.alpha1 + satake.alpha2;
    if (n == 0) cur = 1.0;
    for (int m = 1; m < n; ++m) {
        cplx next = (satake.alpha1 + satake.alpha2) * cur - prev;
        prev = cur;
        cur = next;
    }
    assert(std::abs(cur.imag()) < 1e-9 * (1.0 + std::abs(cur.real())));
    return std::pow(static_cast<double>(p), -0.5 * n) * cur.real();
}

cplx rs_local_unramified(cplx s, std::int64_t p, const SatakePair& satake) {
    cplx ps = std::pow(cplx(static_cast<double>(p)), -s);
    cplx a2 = satake.alpha1 * satake.alpha1;
    cplx b2 = satake.alpha2 * satake.alpha2;
    return 1.0 / ((1.0 - ps) * (1.0 - ps) * (1.0 - a2 * ps) * (1.0 - b2 * ps));
}

cplx rs_local_unramified_series(cplx s, std::int64_t p,
                                const SatakePair& satake) {
    if (s.real() <= 1.0)
        throw SeriesNotConverged("direct series needs Re(s) > 1");
    cplx ap = satake.alpha1 + satake.alpha2;
    cplx lam_prev = 0.0, lam = 1.0;  // lambda(p^{-1}), lambda(p^0)
    cplx sum = 0.0;
    for (int m = 0; m < 100000; ++m) {
        cplx term = std::pow(cplx(static_cast<double>(p)), -s * double(m)) *
                    lam * std::conj(lam);
        sum += term;
        if (m > 4 && std::abs(term) < 1e-16 * (1.0 + std::abs(sum))) {
            cplx p2s = std::pow(cplx(static_cast<double>(p)), -2.0 * s);
            return sum / (1.0 - p2s);
        }
        cplx next = ap * lam - lam_prev;
        lam_prev = lam;
        lam = next;
    }
    throw SeriesNotConverged("local Dirichlet series did not converge");
}

double rs_local_ramified(cplx s, std::int64_t p) {
    if (!arith::is_prime(p)) throw std::invalid_argument("p must be prime");
    double plain = 1.0 / (static_cast<double>(p * p) * (p + 1.0));
    cplx ps = std::pow(cplx(static_cast<double>(p)), -s);
    cplx factored = (1.0 - ps) * plain / (1.0 - ps);
    assert(std::abs(factored - plain) < 1e-12 * plain);
    return plain;
}

cplx rs_arch_holomorphic(cplx s, int k) {
    if (k < 1) throw std::invalid_argument("weight parameter k must be >= 1");
    if (s.real() <= 0.0) throw std::invalid_argument("need Re(s) > 0");
    return std::pow(cplx(4.0), 2.0 - 2.0 * k - s) *
           std::pow(cplx(pi), -(2.0 * s + 2.0 * k - 1.0)) *
           special::gamma_complex(s) *
           special::gamma_complex(s + 2.0 * k - 1.0);
}

cplx rs_arch_holomorphic_quadrature(cplx s, int k, double tol) {
    if (k < 1) throw std::invalid_argument("weight parameter k must be >= 1");
    if (s.real() <= 0.0) throw std::invalid_argument("need Re(s) > 0");
    cplx integral = special::integrate_half_line_c(
        [&](double a) {
            return 4.0 * std::pow(cplx(a), 2.0 * k + s - 1.0) *
                   std::exp(-4.0 * pi * a) / a;
        },
        1e-14, tol);
    return std::pow(cplx(pi), -s) * special::gamma_complex(s) * integral;
}

cplx rs_arch_maass(cplx s, double t) {
    if (s.real() <= 0.0) throw std::invalid_argument("need Re(s) > 0");
    cplx it(0.0, t);
    cplx g = special::gamma_complex(0.5 * s);
    return std::pow(cplx(pi), -2.0 * s) * special::gamma_complex(0.5 * s - it) *
           special::gamma_complex(0.5 * s + it) * g * g;
}

cplx rs_arch_maass_quadrature(cplx s, double t, double tol) {
    if (s.real() <= 0.0) throw std::invalid_argument("need Re(s) > 0");
    cplx it(0.0, t);
    cplx mellin = special::kbessel_mellin_numeric(it, -it, s, tol);
    return std::pow(cplx(2.0), 3.0 - s) * std::pow(cplx(pi), -2.0 * s) *
           special::gamma_complex(s) * mellin;
}

double inner_product_constant_holomorphic(int k) {
    if (k < 1) throw std::invalid_argument("weight parameter k must be >= 1");
    return std::pow(4.0, 1.0 - 2.0 * k) * std::pow(pi, -(2.0 * k + 1.0)) *
           std::tgamma(2.0 * k);
}

double inner_product_constant_maass(double t) {
    return 1.0 / std::cosh(pi * t);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) g = 1;
    return Rational{num / g, den / g};
}

Rational rational_mul(Rational a, Rational b) {
    // cross-reduce first so intermediate products stay in range
    std::int64_t g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    std::int64_t g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    if (g1 == 0) g1 = 1;
    if (g2 == 0) g2 = 1;
    return make_rational((a.num / g1) * (b.num / g2),
                         (a.den / g2) * (b.den / g1));
}

Rational phi_hat_constant(std::int64_t N) {
    if (!arith::is_squarefree(N)) throw arith::NotSquarefree(N);
    Rational r{1, 1};
    for (auto [p, e] : arith::factorize(N))
        r = rational_mul(r, make_rational(p - 1, p * p * p * p));
    return r;
}

Rational residue_constant(std::int64_t N) {
    if (!arith::is_squarefree(N)) throw arith::NotSquarefree(N);
    Rational r{1, 1};
    for (auto [p, e] : arith::factorize(N))
        r = rational_mul(r, make_rational(p - 1, p * p * p * (p + 1)));
    return r;
}

bool residue_bookkeeping(std::int64_t N) {
    // (1/2) phi_hat * 2 prod p/(p+1) == residue constant, exactly
    Rational lhs = phi_hat_constant(N);
    for (auto [p, e] : arith::factorize(N))
        lhs = rational_mul(lhs, make_rational(p, p + 1));
    return lhs == residue_constant(N);
}

double kbessel_norm(double t, double tol) {
    auto k2 = [&](double r) {
        double v = special::bessel_k_imag_order(t, 2.0 * pi * r);
        return v * v;
    };
    // r in (0,1] in the variable u = log r: the integrand oscillates in u
    // with bounded frequency and the e^u Jacobian kills the tail
    double low = special::integrate(
        [&](double u) { return k2(std::exp(u)) * std::exp(u); }, -30.0, 0.0,
        0.5 * tol);
    double high = special::integrate_half_line(k2, 1.0, 0.5 * tol);
    return 2.0 * (low + high);
}

}  // namespace cubictrace::rankin
