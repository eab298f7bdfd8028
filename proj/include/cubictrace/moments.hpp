#pragma once

// Moment machinery for central L-values at cubic level: main-term constants
// of the first and second moments, Mellin-Barnes closed forms, the mollifier
// and its diagonalized quadratic forms, and the non-vanishing proportion.

#include "cubictrace/arith.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>

namespace cubictrace::moments {

using cplx = std::complex<double>;

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Laurent data of the diagonal and non-diagonal second-moment pieces around
// their common simple pole: D2 = c_minus1/u + c_01 + O(u) and the
// non-diagonal part contributes -c_minus1/u + c_02 + O(u).
struct MomentConstants {
    double c_minus1 = 0.0;
    double c_01 = 0.0;
    double c_02 = 0.0;
    double g_kN = 0.0;
};

// Mollifier of length M = N^delta: y_n = mu(n) n/phi(n) on squarefree
// n <= M coprime to N, and x recovered through the mu*mu inversion.
struct MollifierSpec {
    std::int64_t N = 1;
    double M_length = 1.0;
    double delta = 1.0;
    std::map<std::int64_t, double> x;
    std::map<std::int64_t, double> y;
};

// sum_{p|N} log p/(p-1) + psi(k) + gamma0 - log(2 pi)
double g_k(int k, std::int64_t N);

// First-moment main term (2k-1) N^2 phi(N) / (2 pi^2 sqrt(m)).
double m1_main(std::int64_t m, int k, std::int64_t N);

// Second-moment main term
// (2k-1) N phi(N)^2 tau(m) / (2 pi^2 sqrt(m)) (log(N^3/m) + 2 g_k(N)).
double m2_main(std::int64_t m, int k, std::int64_t N);

MomentConstants moment_constants(std::int64_t m, int k, std::int64_t N);

enum class MellinForm { I1, I2, I3 };

// Closed forms: I1 = 2 cos(pi(k-u)) Gamma(2u) Gamma^2(k-u)/Gamma^2(k+u);
// I2, I3 are the z-dependent companions via the Gauss 2F1 at +-1/z.
cplx mellin_barnes_closed(MellinForm which, cplx u, int k, double z = 1.0);

// Independent oracle: the same object as a vertical-line integral
// (1/2 pi i) int Gamma((2k-1+s)/2)/Gamma((2k+1-s)/2) Gamma^2((1-s)/2-u)
// [sin(pi(s/2+u))] z^{s/2} ds on 1-2k < Re s < -1-2Re u.
cplx mellin_barnes_contour(MellinForm which, cplx u, int k, double z = 1.0,
                           double tol = 1e-8);

MollifierSpec mollifier_build(std::int64_t N, double delta);

struct QuadraticForms {
    double Pi = 0.0;
    double Pi01 = 0.0;
    double Pi10 = 0.0;
};

// Direct evaluation of the three diagonalized quadratic forms; the mollified
// second-moment main term is (phi(N)/N)(Pi - 2 Pi01 - 2 Pi10).
QuadraticForms quadratic_forms(const MollifierSpec& spec, int k);

// Delta/(3 + 2 Delta)
double nonvanishing_proportion(double delta);

struct MollifiedMains {
    double M1h = 0.0;
    double M2h = 0.0;
};

// Main terms only: M1h = Delta (phi/N) log N,
// M2h = (3 Delta + 2 Delta^2) (phi/N)^2 log^2 N.
MollifiedMains mollified_main_terms(std::int64_t N, double delta, int k);

// Diagnostic truncation of the residual non-diagonal second-moment piece
// (the 2F1 tail sums), cut at a <= a_max in every lattice sum.  No accuracy
// claim; throws DomainError when a hypergeometric argument leaves (-1,1).
double nd2_tail_truncated(std::int64_t m, int k, std::int64_t N,
                          std::int64_t a_max);

}  // namespace cubictrace::moments
