#pragma once

// Finite-precision p-adic numbers and the local machinery attached to a
// conductor-p^3 place: evaluation of the two bi-K-invariant test functions
// on their Bruhat supports, local Kloosterman sums S_p, and the local
// orbital integrals of the first and second type, each computed two ways
// (closed form vs. brute-force residue sums).

#include <array>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace cubictrace::padic {

using cplx = std::complex<double>;

struct InsufficientPrecision : std::runtime_error {
    explicit InsufficientPrecision(const std::string& what)
        : std::runtime_error("insufficient p-adic precision: " + what) {}
};

// x = p^valuation * (unit + O(p^precision)).  unit is stored in
// [0, p^precision); a zero unit means x is 0 modulo p^(valuation+precision),
// i.e. its exact valuation is not resolved at this precision.
struct PAdicApprox {
    std::int64_t p = 2;
    int valuation = 0;
    std::int64_t unit = 0;
    int precision = 1;

    // Known modulo p^abs_precision().
    int abs_precision() const { return valuation + precision; }

    // Shift p-factors of the unit into the valuation so that the unit is
    // either 0 or coprime to p.  Each shifted digit costs one precision digit.
    PAdicApprox normalized() const;

    bool unit_is_zero() const { return unit == 0; }

    // Exact valuation; throws when the unit vanishes to the stored precision.
    int val() const;

    // (x / p^scale) mod p^digits.  Requires v_p(x) >= scale and
    // abs_precision() >= scale + digits.
    std::int64_t residue_at(int scale, int digits) const;

    // Decide v_p(x) >= k; throws when undecidable at this precision.
    bool val_at_least(int k) const;

    PAdicApprox operator-() const;
    PAdicApprox operator+(const PAdicApprox& o) const;
    PAdicApprox operator*(const PAdicApprox& o) const;
};

// Factory; unit may be any integer (reduced mod p^precision).
PAdicApprox padic(std::int64_t p, int valuation, std::int64_t unit, int precision);

// Exact small integer n (including 0) carried at the given precision.
PAdicApprox padic_int(std::int64_t p, std::int64_t n, int precision);

enum class Variant { plain, twisted };

// Local representation data at p | N: the cuspidal parameter m_p in [1, p-1]
// and a sign zeta_p.  The sign never enters the local evaluators (it only
// shows up through the global root number); it is kept as metadata.
struct LocalTestSpec {
    std::int64_t p;
    std::int64_t m_p;
    int zeta_p = +1;
    Variant variant = Variant::plain;
};

// Row-major 2x2 matrix over Q_p at finite precision.
using Matrix2Local = std::array<PAdicApprox, 4>;

// Value of the plain test function f at g, after scaling by the central
// p-power that moves g into the support pattern
//   [ Z_p^x  p^-1 Z_p ]
//   [ p^2 Z_p   Z_p^x ].
// On-pattern value is (p+1) * sum_{l in F_p^x} psitilde(b l + (m_p c/a) l^-1)
// for the p-power-scaled representative [[a, p^-1 b], [p^2 c, d]], where
// psitilde(x) = psi_p(x/p).  0 off support.
cplx eval_f(const LocalTestSpec& spec, const Matrix2Local& g);

// Twisted analogue, support pattern
//   [ Z_p     p^-2 Z_p^x ]
//   [ p Z_p^x    Z_p     ];
// value (p+1) * sum_l psitilde((c/a) l + (m_p b/d) l^-1) for the scaled
// representative [[c, p^-2 d], [p a, b]].  Both arguments are entry ratios,
// so this one is insensitive to the choice of unit representative.
cplx eval_f_twisted(const LocalTestSpec& spec, const Matrix2Local& g);

// S_p(theta1, theta2; p^t) = sum_{x xbar = 1 mod p^t} psi_p(-(theta1 x + theta2 xbar)/p^t),
// which equals the classical sum with e(+(theta1 x + theta2 xbar)/p^t).  t=0 gives 1.
cplx local_kloosterman(std::int64_t theta1, std::int64_t theta2, std::int64_t p, int t);

// First-type local orbital integral: p(p+1) plain, 0 twisted.
double orbital_first_local(const LocalTestSpec& spec);

// Second-type local orbital integral, closed form:
//   plain:   psi_p(-m_p/p) p(p+1) S_p(1, p^4 a; p^2)   if v_p(a) = -4,
//            p(p+1) S_p(1, p^{2t} a; p^t)              if v_p(a) = -2t, t >= 3,
//            0 otherwise;
//   twisted: p^2(p+1) if v_p(a) = -3 and p^3 a = -m_p mod p, else 0.
cplx orbital_second_local_closed(const LocalTestSpec& spec, const PAdicApprox& a);

// Same quantity as a direct finite residue sum: enumerate the (x, y) residue
// classes meeting the support of the test function, evaluate the integrand
// f(...) conj(psi_p(x)) psi_p(y) through eval_f / eval_f_twisted, and add up
// with the Haar weights of the classes.  Independent of the case analysis
// behind the closed form.
cplx orbital_second_local_bruteforce(const LocalTestSpec& spec, const PAdicApprox& a);

// Second-type local orbital integral at an unramified place, for the
// K_p-indicator test function with Hecke shifts p^r1, p^r2:
//   0 unless v_p(a) = r1 + r2 - 2t for some t >= 0, in which case
//   p^{-r1-r2} S_p(p^{r1}, a p^{2t-r1}; p^t).
cplx orbital_second_unramified(int r1, int r2, std::int64_t p, const PAdicApprox& a);

}  // namespace cubictrace::padic
