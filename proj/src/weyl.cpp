#include "cubictrace/weyl.hpp"

#include "cubictrace/arith.hpp"
#include "cubictrace/special.hpp"

#include <cmath>
#include <numbers>

namespace cubictrace::weyl {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double hscale = 4.2;
}

double base_h(double x) {
    double u = x / hscale;
    double s = std::abs(u) < 1e-6 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
    return (3.0 / hscale) * s * s * s * s;
}

double LocalizedH::operator()(double z) const {
    return base(L * (mu + z)) + base(L * (mu - z));
}

LocalizedH localized_h(std::function<double(double)> base, double mu,
                       double L) {
    if (mu <= 0.0 || L < 1.0)
        throw std::invalid_argument("need mu > 0 and L >= 1");
    return LocalizedH{std::move(base), mu, L};
}

DiagLocal d_mu_l(std::int64_t N, const LocalizedH& h, double tol, long budget) {
    DiagLocal out;
    out.majorant = (h.mu / h.L + 1.0 / (h.L * h.L)) * static_cast<double>(N) *
                   static_cast<double>(N);
    long used = 0;
    auto f = [&](double t) {
        if (++used > budget) throw BudgetExceeded("quadrature budget exhausted");
        return h(t) * std::tanh(pi * t) * t;
    };
    // base decays like x^{-4}, so the even integrand is O(t^{-3}) beyond the
    // localization window; cut where the proven tail is below tol
    double amp = 2.0 * 192.0 * std::pow(hscale, 4.0) / 0.7 /
                 std::pow(h.L, 4.0);
    double T = h.mu + 2.0 + std::sqrt(amp / tol);
    double integral = special::integrate(f, -T, T, 0.5 * tol);
    out.value = static_cast<double>(N) * static_cast<double>(N) /
                (2.0 * pi * pi) * integral;
    return out;
}

double truncated_main(std::int64_t N, double T) {
    if (T < 0.0) throw std::invalid_argument("T must be nonnegative");
    if (T == 0.0) return 0.0;
    auto f = [](double t) { return std::tanh(pi * t) * t; };
    double integral = special::integrate(f, -T, T, 1e-11 * (1.0 + T * T));
    return static_cast<double>(N) * static_cast<double>(N) /
           (2.0 * pi * pi) * integral;
}

double weyl_main(std::int64_t N, double T) {
    if (!arith::is_squarefree(N))
        throw std::invalid_argument("N must be squarefree");
    return static_cast<double>(N) * static_cast<double>(N) *
           static_cast<double>(arith::totient(N)) * T * T / (2.0 * pi * pi);
}

double density(std::int64_t N) {
    if (!arith::is_squarefree(N))
        throw std::invalid_argument("N must be squarefree");
    double phi = static_cast<double>(arith::totient(N));
    return phi * phi / (static_cast<double>(N) * static_cast<double>(N));
}

NdBound nd_bound(std::int64_t m1, std::int64_t m2, std::int64_t N, double mu,
                 double L) {
    if (m1 < 1 || m2 < 1 || N < 1 || mu <= 0.0 || L < 1.0)
        throw std::invalid_argument("invalid non-diagonal bound parameters");
    constexpr double eps = 0.01;
    double mn = static_cast<double>(m1) * static_cast<double>(m2);
    NdBound out;
    out.bound = std::pow(mn, 0.25 + eps) / (std::pow(mu, eps) * L) *
                std::exp(pi * L / 2.0 + eps * L);
    double threshold = pi * std::sqrt(mn) /
                       (static_cast<double>(N) * static_cast<double>(N)) *
                       std::exp(pi * L + 1.0);
    out.negligible = mu >= threshold;
    return out;
}

}  // namespace cubictrace::weyl
