#include "cubictrace/moments.hpp"

#include "cubictrace/special.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace cubictrace::moments {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double euler_gamma = std::numbers::egamma;

void require_coprime_valid(std::int64_t m, int k, std::int64_t N) {
    if (k < 2 || m < 1 || !arith::is_squarefree(N) || arith::gcd(m, N) != 1)
        throw std::invalid_argument(
            "need k >= 2, m >= 1, N squarefree, (m,N)=1");
}
}  // namespace

double g_k(int k, std::int64_t N) {
    if (k < 2 || !arith::is_squarefree(N))
        throw std::invalid_argument("need k >= 2 and N squarefree");
    double s = 0.0;
    for (auto [p, e] : arith::factorize(N))
        s += std::log(static_cast<double>(p)) / static_cast<double>(p - 1);
    return s + special::digamma(k) + euler_gamma - std::log(2.0 * pi);
}

double m1_main(std::int64_t m, int k, std::int64_t N) {
    require_coprime_valid(m, k, N);
    double phi = static_cast<double>(arith::totient(N));
    return (2.0 * k - 1.0) * static_cast<double>(N) * static_cast<double>(N) *
           phi / (2.0 * pi * pi * std::sqrt(static_cast<double>(m)));
}

double m2_main(std::int64_t m, int k, std::int64_t N) {
    require_coprime_valid(m, k, N);
    if (!arith::is_squarefree(m))
        throw std::invalid_argument("m must be squarefree");
    double phi = static_cast<double>(arith::totient(N));
    double pre = (2.0 * k - 1.0) * static_cast<double>(N) * phi * phi *
                 static_cast<double>(arith::tau(m)) /
                 (2.0 * pi * pi * std::sqrt(static_cast<double>(m)));
    double logterm = 3.0 * std::log(static_cast<double>(N)) -
                     std::log(static_cast<double>(m)) + 2.0 * g_k(k, N);
    return pre * logterm;
}

MomentConstants moment_constants(std::int64_t m, int k, std::int64_t N) {
    require_coprime_valid(m, k, N);
    MomentConstants out;
    out.g_kN = g_k(k, N);
    double phi = static_cast<double>(arith::totient(N));
    double base = (2.0 * k - 1.0) * static_cast<double>(N) * phi * phi *
                  static_cast<double>(arith::tau(m)) /
                  (2.0 * pi * pi * std::sqrt(static_cast<double>(m)));
    out.c_minus1 = base / 2.0;
    double logm = std::log(static_cast<double>(m));
    double logN = std::log(static_cast<double>(N));
    double prime_sum = 0.0, prime_sum_p = 0.0;
    for (auto [p, e] : arith::factorize(N)) {
        double lp = std::log(static_cast<double>(p));
        prime_sum += lp / static_cast<double>(p - 1);
        prime_sum_p += static_cast<double>(p) * lp / static_cast<double>(p - 1);
    }
    out.c_01 = base * (euler_gamma - 0.5 * logm + prime_sum);
    out.c_02 = base * (euler_gamma - std::log(4.0 * pi * pi) + 2.0 * logN -
                       0.5 * logm + prime_sum_p +
                       2.0 * special::digamma(k));
    return out;
}

namespace {

// log sin(pi v), stable for large |Im v|
cplx log_sin_pi(cplx v) {
    const cplx i(0.0, 1.0);
    if (std::abs(v.imag()) < 1.0)
        return std::log(std::sin(pi * v));
    if (v.imag() > 0.0)
        return -i * pi * v + std::log(1.0 - std::exp(2.0 * i * pi * v)) -
               std::log(2.0 * i) + i * pi;
    return i * pi * v + std::log(1.0 - std::exp(-2.0 * i * pi * v)) -
           std::log(2.0 * i);
}

}  // namespace

cplx mellin_barnes_closed(MellinForm which, cplx u, int k, double z) {
    if (k < 2) throw DomainError("need k >= 2");
    if (u.real() >= k - 1.0) throw DomainError("Re u must be below k-1");
    cplx ku = static_cast<double>(k) - u;
    cplx g_ku = special::gamma_complex(ku);
    if (which == MellinForm::I1) {
        if (u.real() <= 0.0) throw DomainError("I1 needs Re u > 0");
        return 2.0 * std::cos(pi * ku) * special::gamma_complex(2.0 * u) *
               g_ku * g_ku /
               (special::gamma_complex(static_cast<double>(k) + u) *
                special::gamma_complex(static_cast<double>(k) + u));
    }
    if (z <= 1.0) throw DomainError("I2/I3 need z > 1");
    cplx pre = 2.0 * g_ku * g_ku /
               (std::tgamma(2.0 * k) * std::pow(z, k - 0.5));
    if (which == MellinForm::I2)
        return pre * std::cos(pi * ku) *
               special::hyp2f1(ku, ku, 2.0 * k, 1.0 / z);
    return pre * special::hyp2f1(ku, ku, 2.0 * k, -1.0 / z);
}

cplx mellin_barnes_contour(MellinForm which, cplx u, int k, double z,
                           double tol) {
    if (k < 2) throw DomainError("need k >= 2");
    double left = 1.0 - 2.0 * k;
    double right = -1.0 - 2.0 * u.real();
    if (left >= right) throw DomainError("empty contour strip");
    double alpha = 0.5 * (left + right);
    bool with_sin = which != MellinForm::I3;
    double two_k = 2.0 * k;
    auto F = [&](double t) -> cplx {
        cplx s(alpha, t);
        cplx lg = special::log_gamma_complex((two_k - 1.0 + s) / 2.0) -
                  special::log_gamma_complex((two_k + 1.0 - s) / 2.0) +
                  2.0 * special::log_gamma_complex((1.0 - s) / 2.0 - u) +
                  (s / 2.0) * std::log(z);
        if (with_sin) lg += log_sin_pi(s / 2.0 + u);
        return std::exp(lg);
    };
    if (!with_sin) {
        // e^{-pi|t|/2} decay: plain truncation suffices
        cplx total = special::integrate_c(F, -80.0, 80.0, 0.2 * tol);
        return total / (2.0 * pi);
    }
    // With the sine factor the Stirling phases cancel and the integrand
    // behaves like e^{i sigma t log(z)/2} t^{-1-2u} (c0 + c1/t + ...) on each
    // half-line, so finish the tail from a three-term asymptotic fit.
    double T = 2000.0;
    cplx total = special::integrate_c(F, -60.0, 60.0, 0.2 * tol);
    for (double a = 60.0; a < T; a *= 2.0) {
        double b = std::min(2.0 * a, T);
        total += special::integrate_c(F, a, b, 0.05 * tol);
        total += special::integrate_c(F, -b, -a, 0.05 * tol);
    }
    // int_T^inf e^{i w t} t^{-p} dt by parts (w != 0) or in closed form
    auto tail_power = [&](double w, cplx p) -> cplx {
        if (w == 0.0) return std::pow(T, 1.0 - p) / (p - 1.0);
        const cplx iw(0.0, w);
        cplx acc = 0.0, factor = std::exp(iw * T) / iw;
        cplx rising = 1.0;
        for (int m = 0; m < 6; ++m) {
            acc += -factor * rising * std::pow(T, -p - static_cast<double>(m));
            factor /= iw;
            rising *= -(p + static_cast<double>(m));
        }
        return acc;
    };
    for (double sigma : {1.0, -1.0}) {
        double w = sigma * 0.5 * std::log(z);
        cplx p = 1.0 + 2.0 * u;
        // fit F(sigma t) e^{-i w t} t^{p} = c0 + c1 (T/t) + c2 (T/t)^2
        double ts[3] = {T, 1.3 * T, 1.69 * T};
        cplx g[3];
        for (int j = 0; j < 3; ++j)
            g[j] = F(sigma * ts[j]) * std::exp(cplx(0.0, -w * ts[j])) *
                   std::pow(ts[j], p);
        double x1 = T / ts[1], x2 = T / ts[2];
        // Solve the 3x3 Vandermonde in x = T/t.
        cplx c2 = ((g[2] - g[0]) / (x2 - 1.0) - (g[1] - g[0]) / (x1 - 1.0)) /
                  (x2 - x1);
        cplx c1 = (g[1] - g[0]) / (x1 - 1.0) - c2 * (x1 + 1.0);
        cplx c0 = g[0] - c1 - c2;
        total += c0 * tail_power(w, p) + c1 * T * tail_power(w, p + 1.0) +
                 c2 * T * T * tail_power(w, p + 2.0);
    }
    return total / (2.0 * pi);
}

MollifierSpec mollifier_build(std::int64_t N, double delta) {
    if (delta <= 0.0 || delta > 1.5)
        throw std::invalid_argument("delta must lie in (0, 3/2]");
    if (!arith::is_squarefree(N))
        throw std::invalid_argument("N must be squarefree");
    MollifierSpec spec;
    spec.N = N;
    spec.delta = delta;
    spec.M_length = std::pow(static_cast<double>(N), delta);
    auto M = static_cast<std::int64_t>(std::floor(spec.M_length + 1e-9));
    for (std::int64_t n = 1; n <= M; ++n) {
        if (!arith::is_squarefree(n) || arith::gcd(n, N) != 1) continue;
        spec.y[n] = arith::mobius(n) * static_cast<double>(n) /
                    static_cast<double>(arith::totient(n));
    }
    // x_n = sum_m mu*mu(m)/m y_{mn}; only squarefree m coprime to nN survive,
    // where mu*mu(m) = (-2)^{omega(m)}
    for (auto& [n, yn] : spec.y) {
        double xn = 0.0;
        for (std::int64_t m = 1; m * n <= M; ++m) {
            if (!arith::is_squarefree(m) || arith::gcd(m, n * N) != 1) continue;
            auto it = spec.y.find(m * n);
            if (it == spec.y.end()) continue;
            double mumu = (arith::omega(m) % 2 ? -1.0 : 1.0) *
                          std::pow(2.0, arith::omega(m));
            xn += mumu / static_cast<double>(m) * it->second;
        }
        spec.x[n] = xn;
    }
    // sanity check of the a-priori size bound on the built table
    double logN = std::max(std::log(static_cast<double>(N)), 1.0);
    for (auto& [n, xn] : spec.x) {
        double bound = arith::tau(n) * logN;
        assert(std::abs(xn) <= 10.0 * bound * bound);
        (void)xn;
        (void)bound;
    }
    return spec;
}

namespace {

// (1/n) sum_{l|n} mu(l)/l and the log-weighted companion, for squarefree n:
// the first is phi(n)/n^2; the second distributes log l over prime factors.
std::pair<double, double> saturation_pair(std::int64_t n) {
    double s = 1.0, s1 = 0.0;
    auto fac = arith::factorize(n);
    for (auto [p, e] : fac) s *= 1.0 - 1.0 / static_cast<double>(p);
    for (auto [p, e] : fac) {
        double partial = -std::log(static_cast<double>(p)) /
                         static_cast<double>(p);
        for (auto [q, eq] : fac)
            if (q != p) partial *= 1.0 - 1.0 / static_cast<double>(q);
        s1 += partial;
    }
    return {s / static_cast<double>(n), s1 / static_cast<double>(n)};
}

}  // namespace

QuadraticForms quadratic_forms(const MollifierSpec& spec, int k) {
    QuadraticForms out;
    auto M = static_cast<std::int64_t>(std::floor(spec.M_length + 1e-9));
    double main_log = 3.0 * std::log(static_cast<double>(spec.N)) +
                      2.0 * g_k(k, spec.N);
    for (std::int64_t n = 1; n <= M; ++n) {
        if (arith::gcd(n, spec.N) != 1 || !arith::is_squarefree(n)) continue;
        double s0 = 0.0, s1 = 0.0;
        for (std::int64_t m = 1; m * n <= M; ++m) {
            if (arith::gcd(m, spec.N) != 1) continue;
            auto it = spec.x.find(m * n);
            if (it == spec.x.end()) continue;
            double w = static_cast<double>(arith::tau(m)) /
                       static_cast<double>(m);
            s0 += w * it->second;
            s1 += w * std::log(static_cast<double>(m)) * it->second;
        }
        auto [sat, sat1] = saturation_pair(n);
        out.Pi += main_log * sat * s0 * s0;
        out.Pi01 += sat * s1 * s0;
        out.Pi10 += sat1 * s0 * s0;
    }
    return out;
}

double nonvanishing_proportion(double delta) {
    if (delta <= 0.0) throw std::invalid_argument("delta must be positive");
    return delta / (3.0 + 2.0 * delta);
}

MollifiedMains mollified_main_terms(std::int64_t N, double delta, int k) {
    if (N < 2 || !arith::is_squarefree(N) || delta <= 0.0 || k < 2)
        throw std::invalid_argument("need squarefree N >= 2, delta > 0, k >= 2");
    double ratio = static_cast<double>(arith::totient(N)) /
                   static_cast<double>(N);
    double logN = std::log(static_cast<double>(N));
    MollifiedMains out;
    out.M1h = delta * ratio * logN;
    out.M2h = (3.0 * delta + 2.0 * delta * delta) * ratio * ratio * logN * logN;
    return out;
}

double nd2_tail_truncated(std::int64_t m, int k, std::int64_t N,
                          std::int64_t a_max) {
    require_coprime_valid(m, k, N);
    if (a_max < 1) throw std::invalid_argument("a_max must be >= 1");
    double G = std::exp(2.0 * std::lgamma(static_cast<double>(k)) -
                        std::lgamma(2.0 * k));
    auto f21 = [&](double x) -> double {
        if (x >= 1.0 || x < -1.0)
            throw DomainError("hypergeometric argument outside [-1,1)");
        // Pfaff transformation keeps the series argument in [0,1/2]
        if (x < 0.0)
            return std::pow(1.0 - x, -k) *
                   special::hyp2f1(k, k, 2.0 * k, x / (x - 1.0)).real();
        return special::hyp2f1(k, k, 2.0 * k, x).real();
    };
    auto a_sum = [&](std::int64_t a) {
        double s = 0.0;
        for (std::int64_t c = 1; c <= a; ++c)
            if (a % c == 0) s += static_cast<double>(arith::a_factor(N, c));
        return s;
    };
    double outer = 0.0;
    for (std::int64_t ell = 1; ell <= N; ++ell) {
        if (N % ell) continue;
        std::int64_t Q = N * N / ell;
        double v_total = 0.0;
        for (std::int64_t d = 1; d <= m; ++d) {
            if (m % d) continue;
            for (std::int64_t r = 1; r <= d; ++r) {
                if (d % r) continue;
                int mu = arith::mobius(d / r);
                if (mu == 0) continue;
                double rk = std::pow(static_cast<double>(r), k);
                double sign_rk = (k % 2 ? -rk : rk);  // (-r)^k
                double v = 0.0;
                for (std::int64_t a = (r + Q) / Q; a <= a_max; ++a) {
                    double base = static_cast<double>(a * Q - r);
                    v += rk * arith::tau(a * Q - r) / std::pow(base, k) *
                         a_sum(a) * G * f21(-static_cast<double>(r) / base);
                }
                for (std::int64_t a = -((r - 1) / Q + 1); a <= -1; ++a) {
                    if (a * Q + r < 1) continue;
                    double base = static_cast<double>(a * Q + r);
                    v += sign_rk * arith::tau(a * Q + r) / std::pow(base, k) *
                         a_sum(-a) * G * f21(static_cast<double>(r) / base);
                }
                for (std::int64_t a = 1; a <= a_max; ++a) {
                    double base = static_cast<double>(a * Q + r);
                    v += sign_rk * arith::tau(a * Q + r) / std::pow(base, k) *
                         a_sum(a) * G * f21(static_cast<double>(r) / base);
                }
                v_total += mu * v;
            }
        }
        double tilde_v = 2.0 * (k % 2 ? -1.0 : 1.0) /
                         std::sqrt(static_cast<double>(m)) * v_total;
        outer += arith::mobius(ell) / static_cast<double>(ell) * tilde_v;
    }
    return (2.0 * k - 1.0) * static_cast<double>(N * N) / (2.0 * pi * pi) *
           outer;
}

}  // namespace cubictrace::moments
