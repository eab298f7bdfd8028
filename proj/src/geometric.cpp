#include "cubictrace/geometric.hpp"

#include "cubictrace/arith.hpp"
#include "cubictrace/padic.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

namespace cubictrace::geometric {

namespace {

constexpr double pi = std::numbers::pi;
using arith::cplx;

void validate(const PeterssonQuery& q) {
    if (q.k < 2) throw InvalidQuery("weight parameter k must be >= 2");
    if (q.N < 1 || !arith::is_squarefree(q.N)) throw InvalidQuery("N must be squarefree >= 1");
    if (q.n1 < 1 || q.n2 < 1) throw InvalidQuery("Hecke indices must be positive");
    if (arith::gcd(q.n1 * q.n2, q.N) != 1) throw InvalidQuery("(n1 n2, N) = 1 required");
    if (q.cuspidal_M) {
        if (arith::gcd(arith::mod_pos(*q.cuspidal_M, q.N == 1 ? 1 : q.N), q.N) != 1)
            throw InvalidQuery("cuspidal parameter must be coprime to N");
    }
}

int64_t max_a_factor(std::int64_t N, bool with_M) {
    if (with_M) return 1;
    std::int64_t m = 1;
    for (auto [p, e] : arith::factorize(N)) m *= (p - 1);
    return m;
}

// Tail of sum_{c>C} c^{-(2k-1)} times the J-Bessel leading bound and the
// trivial |S| <= modulus estimate.
double petersson_tail(int k, double prefactor, double trivial_S_scale,
                      double half_x, std::int64_t C) {
    double jb = std::pow(half_x, 2 * k - 1) / std::tgamma(2.0 * k);
    return prefactor * trivial_S_scale * jb * std::pow(static_cast<double>(C), 2.0 - 2 * k) /
           (2.0 * k - 2.0);
}

template <class F>
void parallel_for(std::int64_t n, const F& fn) {
    int workers = thread_count();
    if (workers <= 1 || n < 32) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        std::int64_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

// a = num / den as an element of Q_p at the given relative precision.
padic::PAdicApprox padic_of_rational(std::int64_t num, __int128 den,
                                     std::int64_t p, int prec) {
    int vnum = 0, vden = 0;
    while (num % p == 0) { num /= p; ++vnum; }
    while (den % p == 0) { den /= p; ++vden; }
    std::int64_t pd = 1;
    for (int i = 0; i < prec; ++i) pd *= p;
    std::int64_t u = arith::mod_pos(num, pd);
    std::int64_t d = static_cast<std::int64_t>(den % pd);
    u = static_cast<std::int64_t>(static_cast<__int128>(u) *
                                  arith::inverse_mod(d, pd) % pd);
    return padic::padic(p, vnum - vden, u, prec);
}

struct Accum {
    std::vector<double> re;
    std::vector<double> im;
};

}  // namespace

double GeometricSeries::total() const {
    double s = diagonal_term;
    for (auto& [c, v] : c_terms) s += v;
    return s;
}

int thread_count() {
    const char* env = std::getenv("CUBIC_TRACE_THREADS");
    if (!env) return 1;
    int n = std::atoi(env);
    if (n < 1) return 1;
    return std::min(n, 64);
}

double spectral_side_weights(int k) {
    return std::pow(2.0, 4 * k - 1) * std::pow(pi, 2 * k + 1) /
           (std::tgamma(2.0 * k) * std::exp(4.0 * pi));
}

double arch_first_type(int k) {
    return std::pow(4.0 * pi, 2 * k - 1) * std::exp(-4.0 * pi) /
           std::tgamma(2.0 * k - 1.0);
}

double arch_second_type(int k, double a) {
    if (a <= 0.0) return 0.0;
    double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-4.0 * pi) * std::pow(4.0 * pi, 2 * k) /
           (2.0 * std::tgamma(2.0 * k - 1.0)) * std::sqrt(a) *
           special::bessel_j(2 * k - 1, 4.0 * pi * std::sqrt(a));
}

GeometricSeries petersson_geometric(const PeterssonQuery& q, double tol) {
    validate(q);
    if (q.twisted) return petersson_twisted_geometric(q, tol);
    const double N2 = static_cast<double>(q.N * q.N);
    const double sqrt_n = std::sqrt(static_cast<double>(q.n1 * q.n2));
    const double half_x = 2.0 * pi * sqrt_n / N2;
    const double pref = (2.0 * q.k - 1.0) / pi;
    const double sign = (q.k % 2 == 0) ? 1.0 : -1.0;
    const double maxA = static_cast<double>(max_a_factor(q.N, q.cuspidal_M.has_value()));

    std::int64_t C = 16;
    while (petersson_tail(q.k, pref, maxA * N2, half_x, C) > tol && C < (1 << 22))
        C *= 2;

    GeometricSeries out;
    out.diagonal_term = (q.n1 == q.n2)
                            ? (2.0 * q.k - 1.0) * N2 *
                                  (q.cuspidal_M ? 1.0 : static_cast<double>(arith::totient(q.N))) /
                                  (2.0 * pi * pi)
                            : 0.0;
    out.truncation_c = C;
    out.tail_bound = petersson_tail(q.k, pref, maxA * N2, half_x, C);

    Accum acc;
    acc.re.assign(C, 0.0);
    acc.im.assign(C, 0.0);
    parallel_for(C, [&](std::int64_t i) {
        std::int64_t c = i + 1;
        double x = 4.0 * pi * sqrt_n / (N2 * c);
        double base = sign * pref / c * special::bessel_j(2 * q.k - 1, x) *
                      arith::kloosterman(q.n1, q.n2, q.N * q.N * c);
        cplx A = q.cuspidal_M ? arith::a_factor_m(q.N, *q.cuspidal_M, c)
                              : cplx(static_cast<double>(arith::a_factor(q.N, c)));
        acc.re[i] = base * A.real();
        acc.im[i] = base * A.imag();
    });
    double imag = 0.0;
    out.c_terms.reserve(C);
    for (std::int64_t i = 0; i < C; ++i) {
        out.c_terms.emplace_back(i + 1, acc.re[i]);
        imag += acc.im[i];
    }
    // The spectral side is real; for fixed M the imaginary parts must cancel
    // across c up to the truncation budget.
    assert(std::abs(imag) < 100.0 * (out.tail_bound + tol) + 1e-9);
    return out;
}

GeometricSeries petersson_twisted_geometric(const PeterssonQuery& q, double tol) {
    validate(q);
    const double N32 = std::pow(static_cast<double>(q.N), 1.5);
    const double sqrt_n = std::sqrt(static_cast<double>(q.n1 * q.n2));
    const double half_x = 2.0 * pi * sqrt_n / N32;
    const double pref = (2.0 * q.k - 1.0) * N32 / pi;

    std::int64_t C = 16;
    while (petersson_tail(q.k, pref, 1.0, half_x, C) > tol && C < (1 << 22))
        C *= 2;

    GeometricSeries out;
    out.truncation_c = C;
    out.tail_bound = petersson_tail(q.k, pref, 1.0, half_x, C);

    std::int64_t Mt = 0;
    if (q.cuspidal_M) Mt = arith::tilde_m(q.N, *q.cuspidal_M);

    std::vector<double> vals(C, 0.0);
    parallel_for(C, [&](std::int64_t i) {
        std::int64_t c = i + 1;
        if (arith::gcd(c, q.N) != 1) return;
        if (q.cuspidal_M &&
            arith::mod_pos(Mt * c % q.N * c - q.n1 * q.n2, q.N) != 0)
            return;
        double x = 4.0 * pi * sqrt_n / (N32 * c);
        std::int64_t nbar = arith::inverse_mod(q.N % c * q.N % c * q.N % c, c);
        vals[i] = pref / c * special::bessel_j(2 * q.k - 1, x) *
                  arith::kloosterman(nbar * (q.n1 % c) % c, q.n2, c);
    });
    out.c_terms.reserve(C);
    for (std::int64_t i = 0; i < C; ++i) out.c_terms.emplace_back(i + 1, vals[i]);
    return out;
}

GeometricSeries kuznetsov_geometric(const std::function<double(double)>& h,
                                    std::int64_t N, std::int64_t n1,
                                    std::int64_t n2,
                                    std::optional<std::int64_t> cuspidal_M,
                                    double tol, special::QuadScheme scheme) {
    PeterssonQuery probe{2, N, n1, n2, false, cuspidal_M};
    validate(probe);
    const double N2 = static_cast<double>(N * N);
    const double sqrt_n = std::sqrt(static_cast<double>(n1 * n2));
    const double maxA = static_cast<double>(max_a_factor(N, cuspidal_M.has_value()));
    const double qtol = 0.01 * tol;

    auto transform = [&](double x) {
        return special::kuznetsov_transform(h, x, scheme, qtol);
    };
    auto x_of = [&](double c) { return 4.0 * pi * sqrt_n / (N2 * c); };

    // Empirical decay majorant |transform(x)| <= K x^alpha, fitted log-log on
    // a dyadic sample past the truncation point.
    double tauN2 = static_cast<double>(arith::tau(N * N));
    auto tail_of = [&](std::int64_t C) {
        double xs[4], ys[4];
        bool all_tiny = true;
        for (int j = 0; j < 4; ++j) {
            double c = static_cast<double>(C << j);
            xs[j] = std::log(x_of(c));
            double v = std::abs(transform(x_of(c)));
            all_tiny = all_tiny && v < 1e-3 * tol;
            ys[j] = std::log(std::max(v, 1e-300));
        }
        if (all_tiny) return 0.5 * tol;  // transform already negligible
        double mx = 0, my = 0;
        for (int j = 0; j < 4; ++j) { mx += xs[j] / 4; my += ys[j] / 4; }
        double num = 0, den = 0;
        for (int j = 0; j < 4; ++j) {
            num += (xs[j] - mx) * (ys[j] - my);
            den += (xs[j] - mx) * (xs[j] - mx);
        }
        double alpha = std::min(std::max(num / den, 0.85), 6.0);
        double K = 0.0;
        for (int j = 0; j < 4; ++j)
            K = std::max(K, 2.0 * std::exp(ys[j] - alpha * xs[j]));
        // |S(n1,n2;N^2 c)| <= tau(N^2 c) sqrt(gcd) sqrt(N^2 c); tau(c) <= 6 c^{0.3}.
        double g = std::sqrt(static_cast<double>(arith::gcd(n1, n2)));
        double B = maxA * tauN2 * 6.0 * g * static_cast<double>(N) * K *
                   std::pow(4.0 * pi * sqrt_n / N2, alpha);
        return B * std::pow(static_cast<double>(C), 0.8 - alpha) / (alpha - 0.8);
    };

    std::int64_t C = 16;
    double tail = tail_of(C);
    while (tail > tol && C < 4096) {
        C *= 2;
        tail = tail_of(C);
    }

    GeometricSeries out;
    out.truncation_c = C;
    out.tail_bound = tail;
    out.diagonal_term =
        (n1 == n2)
            ? N2 * (cuspidal_M ? 1.0 : static_cast<double>(arith::totient(N))) *
                  special::diag_transform(h, qtol)
            : 0.0;

    Accum acc;
    acc.re.assign(C, 0.0);
    acc.im.assign(C, 0.0);
    parallel_for(C, [&](std::int64_t i) {
        std::int64_t c = i + 1;
        double base = transform(x_of(static_cast<double>(c))) / c *
                      arith::kloosterman(n1, n2, N * N * c);
        cplx A = cuspidal_M ? arith::a_factor_m(N, *cuspidal_M, c)
                            : cplx(static_cast<double>(arith::a_factor(N, c)));
        acc.re[i] = base * A.real();
        acc.im[i] = base * A.imag();
    });
    double imag = 0.0;
    out.c_terms.reserve(C);
    for (std::int64_t i = 0; i < C; ++i) {
        out.c_terms.emplace_back(i + 1, acc.re[i]);
        imag += acc.im[i];
    }
    assert(std::abs(imag) < 100.0 * (out.tail_bound + tol) + 1e-9);
    return out;
}

GeometricSeries assemble_petersson_from_orbitals(const PeterssonQuery& q,
                                                 double tol) {
    validate(q);
    const std::int64_t n1n2 = q.n1 * q.n2;
    const double sqrt_n = std::sqrt(static_cast<double>(n1n2));
    const double norm = spectral_side_weights(q.k);
    double prod_local = 1.0;  // prod_{p|N} (1 + 1/p)
    auto Nfac = arith::factorize(q.N);
    for (auto [p, e] : Nfac) prod_local *= 1.0 + 1.0 / static_cast<double>(p);
    const double to_spectral = sqrt_n / (prod_local * norm);

    std::vector<std::int64_t> Ms;
    if (q.cuspidal_M) {
        Ms.push_back(*q.cuspidal_M);
    } else {
        for (std::int64_t M = 1; M <= q.N; ++M)
            if (arith::gcd(M, q.N) == 1) Ms.push_back(M);
        if (Ms.empty()) Ms.push_back(1);
    }

    // Match the truncation of the direct evaluators so the two series are
    // comparable term by term.
    PeterssonQuery probe = q;
    probe.cuspidal_M = Ms.front();
    GeometricSeries direct = q.twisted ? petersson_twisted_geometric(probe, tol)
                                       : petersson_geometric(probe, tol);
    const std::int64_t C = direct.truncation_c;

    const __int128 Npow = q.twisted
                              ? static_cast<__int128>(q.N) * q.N * q.N
                              : static_cast<__int128>(q.N) * q.N * q.N * q.N;

    GeometricSeries out;
    out.truncation_c = C;
    out.tail_bound = direct.tail_bound * static_cast<double>(Ms.size());

    double diag = 0.0;
    if (!q.twisted && q.n1 == q.n2) {
        double first = arch_first_type(q.k) / static_cast<double>(q.n1);
        for (auto [p, e] : Nfac)
            first *= padic::orbital_first_local({p, 1, +1, padic::Variant::plain});
        diag = first * to_spectral * static_cast<double>(Ms.size());
    }
    out.diagonal_term = diag;

    std::vector<double> re(C, 0.0), im(C, 0.0);
    for (std::int64_t M : Ms) {
        parallel_for(C, [&](std::int64_t i) {
            std::int64_t c = i + 1;
            __int128 den = Npow * c * c;
            double a_real = static_cast<double>(n1n2) / static_cast<double>(den);
            double arch = arch_second_type(q.k, a_real);
            cplx loc = 1.0;
            // ramified places
            for (auto [p, e] : Nfac) {
                int vc = 0;
                std::int64_t cc = c;
                while (cc % p == 0) { cc /= p; ++vc; }
                if (q.twisted && vc > 0) { loc = 0.0; break; }
                int t = (q.twisted ? 1 : 2) + vc;
                auto ap = padic_of_rational(n1n2, den, p, t + 3);
                padic::LocalTestSpec spec{p, arith::mod_pos(M, p), +1,
                                          q.twisted ? padic::Variant::twisted
                                                    : padic::Variant::plain};
                loc *= padic::orbital_second_local_closed(spec, ap);
                if (loc == 0.0) break;
            }
            if (loc != 0.0) {
                // unramified places dividing c n1 n2
                auto fac = arith::factorize(c * q.n1 * q.n2);
                for (auto [p, e] : fac) {
                    if (q.N % p == 0) continue;
                    int r1 = 0, r2 = 0;
                    std::int64_t m = q.n1;
                    while (m % p == 0) { m /= p; ++r1; }
                    m = q.n2;
                    while (m % p == 0) { m /= p; ++r2; }
                    int vc = 0;
                    std::int64_t cc = c;
                    while (cc % p == 0) { cc /= p; ++vc; }
                    auto ap = padic_of_rational(n1n2, den, p, vc + 3);
                    loc *= padic::orbital_second_unramified(r1, r2, p, ap);
                    if (loc == 0.0) break;
                }
            }
            cplx term = arch * loc * to_spectral;
            re[i] += term.real();
            im[i] += term.imag();
        });
    }
    double imag = 0.0;
    out.c_terms.reserve(C);
    for (std::int64_t i = 0; i < C; ++i) {
        out.c_terms.emplace_back(i + 1, re[i]);
        imag += im[i];
    }
    assert(std::abs(imag) < 100.0 * (out.tail_bound + tol) + 1e-9);
    return out;
}

}  // namespace cubictrace::geometric
