#pragma once

// Rankin-Selberg layer: local integrals at unramified and ramified primes,
// their archimedean companions for holomorphic and Maass spectra, and the
// exact rational residue bookkeeping that ties the Eisenstein constant term
// to the Petersson-norm constant.

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace cubictrace::rankin {

using cplx = std::complex<double>;

struct SeriesNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Satake parameters with trivial central character: alpha2 = 1/alpha1.
struct SatakePair {
    cplx alpha1;
    cplx alpha2;
};

// Validates alpha1 alpha2 = 1 and |alpha_i| <= p^{7/64} + slack.
SatakePair make_satake(cplx alpha1, std::int64_t p);

// Diagonal Whittaker value p^{-n/2} lambda(p^n) with
// lambda(p^n) = sum_{l1+l2=n} alpha1^{l1} alpha2^{l2}; 0 for n < 0.
// Computed by the two-term Hecke recurrence rather than complex powers.
double whittaker_diag(std::int64_t p, const SatakePair& satake, int n);

// Unramified local integral: Euler-product closed form
// (1-p^{-s})^{-2} (1-alpha1^2 p^{-s})^{-1} (1-alpha2^2 p^{-s})^{-1}
// and, separately, the direct Dirichlet series
// (1-p^{-2s})^{-1} sum_m p^{-ms} |lambda(p^m)|^2 for Re(s) > 1.
cplx rs_local_unramified(cplx s, std::int64_t p, const SatakePair& satake);
cplx rs_local_unramified_series(cplx s, std::int64_t p,
                                const SatakePair& satake);

// Ramified local integral: 1/(p^2(p+1)), independent of s.  The equivalent
// factored form (1-p^{-s})/(p^2(p+1)) * (1-p^{-s})^{-1} is evaluated and
// compared internally.
double rs_local_ramified(cplx s, std::int64_t p);

// Archimedean integral against the weight-2k Whittaker function:
// 4^{2-2k-s} pi^{-(2s+2k-1)} Gamma(s) Gamma(s+2k-1), with an independent
// quadrature of pi^{-s} Gamma(s) int_0^inf 4 a^{2k+s-1} e^{-4 pi a} da/a.
cplx rs_arch_holomorphic(cplx s, int k);
cplx rs_arch_holomorphic_quadrature(cplx s, int k, double tol = 1e-10);

// Archimedean integral against the weight-0 Whittaker function:
// pi^{-2s} Gamma(s/2 - it) Gamma(s/2 + it) Gamma(s/2)^2, with quadrature
// through the K-Bessel product Mellin transform.
cplx rs_arch_maass(cplx s, double t);
cplx rs_arch_maass_quadrature(cplx s, double t, double tol = 1e-9);

// Archimedean constant multiplying 2 L_fin(1,sym^2) prod_{p|N} p/(p+1) in
// the Petersson norm: 4^{1-2k} pi^{-(2k+1)} Gamma(2k) resp. 1/cosh(pi t).
double inner_product_constant_holomorphic(int k);
double inner_product_constant_maass(double t);

// Reduced fraction with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    bool operator==(const Rational&) const = default;
};

Rational make_rational(std::int64_t num, std::int64_t den);
Rational rational_mul(Rational a, Rational b);

// prod_{p|N} (p-1)/p^4: value of the Fourier transform of the global test
// vector at the origin.  N squarefree.
Rational phi_hat_constant(std::int64_t N);

// prod_{p|N} (p-1)/(p^3(p+1)): the finite part of the residue of the
// Rankin-Selberg integral at s=1.  N squarefree.
Rational residue_constant(std::int64_t N);

// Exact check that half the Fourier constant times the norm weight
// 2 prod p/(p+1) reproduces the residue constant.
bool residue_bookkeeping(std::int64_t N);

// 2 int_0^inf K_{it}(2 pi r)^2 r d^x r, numerically.  Equals pi/(4 cosh(pi t)):
// substituting y = 2 pi r gives (1/pi) int K_{it}(y)^2 dy, and the Mellin
// closed form at s=1 evaluates that integral to pi^2/(4 cosh(pi t)).
double kbessel_norm(double t, double tol = 1e-9);

}  // namespace cubictrace::rankin
