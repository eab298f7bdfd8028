#pragma once

// Geometric sides of the Petersson and Kuznetsov identities at cubic level
// N^3: truncated Kloosterman-Bessel c-sums with certified (or, for the
// Kuznetsov case, empirically calibrated) tail bounds, the archimedean
// normalization constants, and an independent reassembly of the Petersson
// geometric side from local orbital integrals.

#include "cubictrace/special.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cubictrace::geometric {

struct InvalidQuery : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Weight 2k, level N^3 (N squarefree), Hecke indices n1, n2 coprime to N.
// cuspidal_M selects the single-parameter variant; unset means the sum over
// all phi(N) cuspidal parameters.
struct PeterssonQuery {
    int k = 2;
    std::int64_t N = 1;
    std::int64_t n1 = 1;
    std::int64_t n2 = 1;
    bool twisted = false;
    std::optional<std::int64_t> cuspidal_M;
};

struct GeometricSeries {
    double diagonal_term = 0.0;
    std::vector<std::pair<std::int64_t, double>> c_terms;  // ascending c
    double tail_bound = 0.0;
    std::int64_t truncation_c = 0;

    double total() const;
};

// Diagonal plus sum over c of A(c)/c J_{2k-1}(4 pi sqrt(n1 n2)/(N^2 c))
// S(n1,n2;N^2 c), scaled by (-1)^k (2k-1)/pi; diagonal
// delta(n1,n2)(2k-1)N^2 phi(N)/(2 pi^2), with phi(N) dropped in the
// cuspidal_M variant.  Truncated so that the J-Bessel tail bound is < tol.
GeometricSeries petersson_geometric(const PeterssonQuery& q, double tol);

// Root-number-twisted companion: (2k-1)N^{3/2}/pi times the sum over c
// coprime to N of S(Nbar^3 n1, n2; c)/c J_{2k-1}(4 pi sqrt(n1 n2)/(N^{3/2}c)).
// The cuspidal_M variant keeps only c with Mtilde c^2 = n1 n2 mod N.
GeometricSeries petersson_twisted_geometric(const PeterssonQuery& q, double tol);

// Maass-side geometric series: diagonal delta(n1,n2) N^2 phi(N) (or N^2 for
// fixed M) times (1/2pi^2) int h tanh(pi t) t dt, plus the c-sum with the
// Kuznetsov Bessel transform in place of J_{2k-1}.  The tail bound uses a
// transform-decay majorant K x^alpha fitted on the fly and stored implicitly
// in tail_bound.
GeometricSeries kuznetsov_geometric(const std::function<double(double)>& h,
                                    std::int64_t N, std::int64_t n1,
                                    std::int64_t n2,
                                    std::optional<std::int64_t> cuspidal_M,
                                    double tol,
                                    special::QuadScheme scheme = special::QuadScheme::adaptive);

// Constant relating the relative-trace integral to the weighted eigenvalue
// sum in the holomorphic case: 2^{4k-1} pi^{2k+1} / (Gamma(2k) e^{4 pi}).
double spectral_side_weights(int k);

// Archimedean first-type orbital value (4 pi)^{2k-1} e^{-4 pi} / (2k-2)!.
double arch_first_type(int k);

// Archimedean second-type orbital value for a > 0, with the sign of
// (4 pi i)^{2k} folded in:
// (-1)^k e^{-4 pi} (4 pi)^{2k} / (2 (2k-2)!) sqrt(a) J_{2k-1}(4 pi sqrt(a)).
double arch_second_type(int k, double a);

// Rebuild the (cuspidal_M) Petersson geometric side from first principles:
// archimedean constants, local first/second-type orbital integrals at p | N,
// and unramified local Kloosterman factors, normalized by
// spectral_side_weights.  Must agree with petersson_geometric /
// petersson_twisted_geometric.
GeometricSeries assemble_petersson_from_orbitals(const PeterssonQuery& q,
                                                 double tol);

// Worker count from CUBIC_TRACE_THREADS (>=1; default 1).
int thread_count();

}  // namespace cubictrace::geometric
