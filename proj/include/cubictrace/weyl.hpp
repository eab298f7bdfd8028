#pragma once

// Localized spectral test functions and the Weyl-law bookkeeping: the
// diagonal localization integral D(mu,L), the truncated main term, the
// weighted Weyl main term and newform density, and the explicit
// non-diagonal bound expression with its vanishing threshold.

#include <functional>
#include <cstdint>
#include <stdexcept>

namespace cubictrace::weyl {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shipped base test function: h(x) = (3/s)(sin(x/s)/(x/s))^4 with s = 4.2.
// Its Fourier transform (1/2pi) int h e^{-i xi x} dx is the self-convolution
// of a triangle, supported strictly inside (-1,1) with hhat(0)=1; h > 0 on
// the real line and on the segment [-i/2, i/2].
double base_h(double x);

// h_{mu,L}(z) = h(L(mu+z)) + h(L(mu-z))
struct LocalizedH {
    std::function<double(double)> base;
    double mu = 1.0;
    double L = 1.0;

    double operator()(double z) const;
};

LocalizedH localized_h(std::function<double(double)> base, double mu, double L);

struct DiagLocal {
    double value = 0.0;     // (N^2/2pi^2) int h_{mu,L}(t) tanh(pi t) t dt
    double majorant = 0.0;  // (mu/L + 1/L^2) N^2
};

// budget caps the number of integrand evaluations.
DiagLocal d_mu_l(std::int64_t N, const LocalizedH& h, double tol = 1e-9,
                 long budget = 4'000'000);

// (N^2/2pi^2) int_{-T}^{T} tanh(pi t) t dt by quadrature (per cuspidal
// parameter: no phi(N) factor).
double truncated_main(std::int64_t N, double T);

// N^2 phi(N) T^2 / (2 pi^2)
double weyl_main(std::int64_t N, double T);

// phi(N)^2 / N^2
double density(std::int64_t N);

struct NdBound {
    double bound = 0.0;      // (m1 m2)^{1/4+eps} e^{pi L/2 + eps L}/(mu^eps L)
    bool negligible = false; // mu >= (pi sqrt(m1 m2)/N^2) e^{pi L + 1}
};

NdBound nd_bound(std::int64_t m1, std::int64_t m2, std::int64_t N, double mu,
                 double L);

}  // namespace cubictrace::weyl
