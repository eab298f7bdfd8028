#pragma once

// Numerical kernels shared by the trace-formula assemblies: adaptive
// Gauss-Legendre and double-exponential quadrature, the complex gamma
// function, Bessel functions of real and purely imaginary order, the Gauss
// hypergeometric series, and the two archimedean transforms entering the
// Kuznetsov formula.

#include <complex>
#include <functional>

namespace cubictrace::special {

using cplx = std::complex<double>;

// Adaptive Gauss-Legendre on [a, b]; bisects until the two-panel refinement
// changes the panel value by less than the local tolerance share.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);
cplx integrate_c(const std::function<cplx(double)>& f, double a, double b,
                 double tol = 1e-12);

// [a, inf) for integrands with eventual rapid decay: doubling segments,
// stops after two consecutive segments contribute below tolerance.
double integrate_half_line(const std::function<double(double)>& f, double a,
                           double tol = 1e-12);
cplx integrate_half_line_c(const std::function<cplx(double)>& f, double a,
                           double tol = 1e-12);

// Double-exponential (tanh-sinh) rule on [a, b]; integrable endpoint
// singularities allowed.
double tanh_sinh(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);
cplx tanh_sinh_c(const std::function<cplx(double)>& f, double a, double b,
                 double tol = 1e-12);

// Lanczos approximation with reflection; ~1e-13 relative accuracy.
cplx gamma_complex(cplx z);
cplx log_gamma_complex(cplx z);

// Digamma for real positive argument.
double digamma(double x);

// J_nu(x) for real nu >= 0, x >= 0.
double bessel_j(double nu, double x);

// J_{2it}(x) by the ascending series with the term recurrence
// term_{m+1} = term_m * (-(x/2)^2) / ((m+1)(m+1+2it)).
cplx bessel_j_imag_order(double t, double x);

// Same value through the Schlafli integral
// J_nu(x) = (1/pi) int_0^pi cos(x sin th - nu th) dth
//           - sin(nu pi)/pi int_0^inf e^{-x sinh u - nu u} du,  nu = 2it.
// Independent of the series; used for cross-scheme checks.
cplx bessel_j_imag_order_integral(double t, double x);

// K_nu(y) = int_0^inf e^{-y cosh u} cosh(nu u) du, y > 0, complex order.
cplx bessel_k(cplx nu, double y);

// K_{it}(y), real valued.
double bessel_k_imag_order(double t, double y);

// Gauss hypergeometric series 2F1(a,b;c;z), |z| < 1.
cplx hyp2f1(cplx a, cplx b, cplx c, cplx z);

// Two interchangeable quadrature strategies for the spectral t-integrals:
// adaptive bisection on doubling segments, or composite fixed-order panels
// with an envelope-driven cutoff.  Used to cross-validate the transforms.
enum class QuadScheme { adaptive, paneled };

// Kuznetsov Bessel transform of an even test function h:
//   i int_R h(t) t J_{2it}(x)/cosh(pi t) dt
//     = -2 int_0^inf t h(t) Im(J_{2it}(x)) / cosh(pi t) dt   (real).
double kuznetsov_transform(const std::function<double(double)>& h, double x,
                           QuadScheme scheme = QuadScheme::adaptive,
                           double tol = 1e-10);

// (1/pi^2) int_0^inf h(t) tanh(pi t) t dt.
double diag_transform(const std::function<double(double)>& h, double tol = 1e-12);

// Mellin transform of a product of two K-Bessel functions:
//   int_0^inf K_mu(y) K_nu(y) y^s dy/y
//     = 2^{s-3} Gamma((s+mu+nu)/2) Gamma((s+mu-nu)/2)
//               Gamma((s-mu+nu)/2) Gamma((s-mu-nu)/2) / Gamma(s).
cplx kbessel_mellin_closed(cplx mu, cplx nu, cplx s);

// The same integral numerically, in the variable u = log y.  Requires
// Re(s) > |Re(mu)| + |Re(nu)|.
cplx kbessel_mellin_numeric(cplx mu, cplx nu, cplx s, double tol = 1e-10);

}  // namespace cubictrace::special
