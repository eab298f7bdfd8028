// End-to-end acceptance gate: nine independent verification pipelines, one
// pass/fail line each.  Tolerances are pinned here on purpose; do not relax
// them to make a run green.  Usage: acceptance <fixtures-dir>

#include "cubictrace/arith.hpp"
#include "cubictrace/geometric.hpp"
#include "cubictrace/moments.hpp"
#include "cubictrace/padic.hpp"
#include "cubictrace/rankin.hpp"
#include "cubictrace/special.hpp"
#include "cubictrace/spectral.hpp"
#include "cubictrace/weyl.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>
#include <vector>

namespace {

using namespace cubictrace;
constexpr double pi = std::numbers::pi;

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

bool report(int idx, const char* what, bool pass, double metric) {
    std::printf("criterion %d: %s  %-44s  worst=%.3e\n", idx,
                pass ? "PASS" : "FAIL", what, metric);
    std::fflush(stdout);
    return pass;
}

// 1. Local orbital integrals: closed form vs brute-force residue sums over
// the full (p, m_p, valuation) grid, under a 60 s budget.
bool criterion1() {
    double t0 = now_seconds();
    double worst = 0.0;
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (std::int64_t m = 1; m < p; ++m) {
            padic::LocalTestSpec plain{p, m, +1, padic::Variant::plain};
            for (int v : {-4, -6, -8}) {
                int t = -v / 2;
                std::int64_t mod = 1;
                for (int i = 0; i < t; ++i) mod *= p;
                int found = 0;
                for (std::int64_t u = 1; u < mod && found < 3; ++u) {
                    if (u % p == 0) continue;
                    ++found;
                    auto a = padic::padic(p, v, u, t + 3);
                    worst = std::max(
                        worst,
                        std::abs(padic::orbital_second_local_closed(plain, a) -
                                 padic::orbital_second_local_bruteforce(plain, a)));
                }
            }
            padic::LocalTestSpec tw{p, m, +1, padic::Variant::twisted};
            for (std::int64_t u = 1; u < p * p; ++u) {
                if (u % p == 0) continue;
                auto a = padic::padic(p, -3, u, 4);
                worst = std::max(
                    worst, std::abs(padic::orbital_second_local_closed(tw, a) -
                                    padic::orbital_second_local_bruteforce(tw, a)));
            }
        }
    }
    double elapsed = now_seconds() - t0;
    bool pass = worst <= 1e-9 && elapsed < 60.0;
    return report(1, "orbital closed form vs brute force", pass, worst);
}

// 2. Per-parameter factors partition the full one, and the fixed-parameter
// geometric series add up to the full series termwise.
bool criterion2() {
    double worst = 0.0;
    for (std::int64_t N = 1; N <= 30; ++N) {
        if (!arith::is_squarefree(N)) continue;
        for (std::int64_t c = 1; c <= 200; ++c) {
            std::complex<double> sum = 0.0;
            for (std::int64_t M = 1; M <= N; ++M)
                if (arith::gcd(M, N) == 1) sum += arith::a_factor_m(N, M, c);
            double target = static_cast<double>(arith::a_factor(N, c));
            worst = std::max(worst, std::abs(sum - target));
        }
    }

    std::mt19937_64 rng(20260825);
    const std::vector<std::int64_t> levels{2, 3, 5, 6, 7, 10};
    for (int query = 0; query < 20; ++query) {
        std::int64_t N = levels[rng() % levels.size()];
        int k = 2 + static_cast<int>(rng() % 3);
        std::int64_t n1 = 1 + static_cast<std::int64_t>(rng() % 8);
        std::int64_t n2 = 1 + static_cast<std::int64_t>(rng() % 8);
        while (arith::gcd(n1, N) != 1) ++n1;
        while (arith::gcd(n2, N) != 1) ++n2;
        bool twisted = (rng() % 2) == 1;
        geometric::PeterssonQuery q{k, N, n1, n2, twisted, std::nullopt};
        auto full = twisted ? geometric::petersson_twisted_geometric(q, 1e-3)
                            : geometric::petersson_geometric(q, 1e-3);
        double fiber_diag = 0.0;
        size_t shared = full.c_terms.size();
        std::vector<double> fiber(full.c_terms.size(), 0.0);
        for (std::int64_t M = 1; M <= N; ++M) {
            if (arith::gcd(M, N) != 1) continue;
            geometric::PeterssonQuery qm{k, N, n1, n2, twisted, M};
            auto part = twisted ? geometric::petersson_twisted_geometric(qm, 1e-3)
                                : geometric::petersson_geometric(qm, 1e-3);
            fiber_diag += part.diagonal_term;
            shared = std::min(shared, part.c_terms.size());
            for (size_t i = 0; i < fiber.size() && i < part.c_terms.size(); ++i)
                fiber[i] += part.c_terms[i].second;
        }
        // termwise only where every fiber is still inside its truncation
        worst = std::max(worst, std::abs(fiber_diag - full.diagonal_term));
        for (size_t i = 0; i < shared; ++i)
            worst = std::max(worst, std::abs(fiber[i] - full.c_terms[i].second));
    }
    return report(2, "parameter partition and termwise fibers", worst <= 1e-10,
                  worst);
}

// 3. Kloosterman sums against a direct per-residue enumeration, and the
// explicit two-factor multiplicative splitting, on random composite moduli.
bool criterion3() {
    auto brute = [](std::int64_t m, std::int64_t n, std::int64_t c) {
        double s = 0.0;
        for (std::int64_t x = 1; x <= c; ++x) {
            if (arith::gcd(x, c) != 1) continue;
            std::int64_t xb = arith::inverse_mod(x, c);
            s += std::cos(2.0 * pi *
                          static_cast<double>(arith::mod_pos(m * x + n * xb, c)) /
                          static_cast<double>(c));
        }
        if (c == 1) s = 1.0;
        return s;
    };
    std::mt19937_64 rng(411);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 4);
        while (!arith::is_squarefree(N)) ++N;
        std::int64_t cap = 500 / (N * N);
        std::int64_t c = 1 + static_cast<std::int64_t>(rng() % cap);
        std::int64_t q = N * N * c;
        std::int64_t n1 = 1 + static_cast<std::int64_t>(rng() % 30);
        std::int64_t n2 = 1 + static_cast<std::int64_t>(rng() % 30);
        worst = std::max(worst,
                         std::abs(arith::kloosterman(n1, n2, q) - brute(n1, n2, q)));
        // split off the largest prime power and check the twisted product rule
        auto fac = arith::factorize(q);
        if (fac.size() >= 2) {
            std::int64_t q1 = 1;
            for (int i = 0; i < fac[0].second; ++i) q1 *= fac[0].first;
            std::int64_t q2 = q / q1;
            std::int64_t q2b = arith::inverse_mod(q2 % q1, q1);
            std::int64_t q1b = arith::inverse_mod(q1 % q2, q2);
            double lhs = brute(n1, n2, q);
            double rhs = brute(arith::mod_pos(n1 * q2b, q1),
                               arith::mod_pos(n2 * q2b, q1), q1) *
                         brute(arith::mod_pos(n1 * q1b, q2),
                               arith::mod_pos(n2 * q1b, q2), q2);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    }
    return report(3, "Kloosterman factorization vs enumeration", worst <= 1e-9,
                  worst);
}

// 4. Closed forms of the local and archimedean Rankin-Selberg layer against
// independent quadrature, plus exact rational residue bookkeeping.
bool criterion4() {
    double worst = 0.0;
    using cplx = std::complex<double>;
    const std::vector<std::array<cplx, 3>> pts{
        {cplx(0.0, 0.3), cplx(0.0, -0.3), cplx(1.5)},
        {cplx(0.0, 0.5), cplx(0.0, 0.2), cplx(2.0)},
        {cplx(0.0, 0.0), cplx(0.0, 0.4), cplx(1.7)}};
    for (const auto& [mu, nu, s] : pts)
        worst = std::max(worst,
                         std::abs(special::kbessel_mellin_closed(mu, nu, s) -
                                  special::kbessel_mellin_numeric(mu, nu, s, 1e-9)));
    bool pass = worst <= 1e-8;

    double wh = 0.0;
    for (auto [s, k] : {std::pair<cplx, int>{cplx(1.0), 2},
                        {cplx(1.5), 3},
                        {cplx(2.2, 0.3), 4}})
        wh = std::max(wh, std::abs(rankin::rs_arch_holomorphic(s, k) -
                                   rankin::rs_arch_holomorphic_quadrature(s, k,
                                                                          1e-11)));
    pass = pass && wh <= 1e-8;
    worst = std::max(worst, wh);

    double wm = 0.0;
    for (auto [s, t] : {std::pair<cplx, double>{cplx(1.2), 0.8},
                        {cplx(1.0), 0.3},
                        {cplx(2.0), 1.5}})
        wm = std::max(wm, std::abs(rankin::rs_arch_maass(s, t) -
                                   rankin::rs_arch_maass_quadrature(s, t, 1e-9)));
    pass = pass && wm <= 1e-7;
    worst = std::max(worst, wm);

    for (std::int64_t N = 1; N <= 30; ++N)
        if (arith::is_squarefree(N)) pass = pass && rankin::residue_bookkeeping(N);
    return report(4, "Rankin-Selberg closed forms and residues", pass, worst);
}

// 5. Full identity on real newform data at level 8, both weights, both signs.
bool criterion5(const std::string& fixtures_dir) {
    double worst_rel = 0.0;
    bool pass = true;
    for (const char* file : {"level8_weight4.json", "level8_weight6.json"}) {
        auto fs = spectral::load_fixtures(fixtures_dir + "/" + file);
        for (auto [n1, n2] : {std::pair<std::int64_t, std::int64_t>{1, 1},
                              {3, 3},
                              {3, 5}}) {
            for (bool twisted : {false, true}) {
                geometric::PeterssonQuery q{fs.k, fs.N, n1, n2, twisted,
                                            std::nullopt};
                auto geo = twisted
                               ? geometric::petersson_twisted_geometric(q, 1e-6)
                               : geometric::petersson_geometric(q, 1e-6);
                double spec = twisted
                                  ? spectral::spectral_petersson_twisted(fs, n1, n2)
                                  : spectral::spectral_petersson(fs, n1, n2);
                auto cmp = spectral::compare(spec, geo, 1e-3);
                pass = pass && cmp.pass;
                worst_rel = std::max(worst_rel, cmp.rel_discrepancy);
            }
        }
    }
    return report(5, "spectral identity on level-8 data", pass, worst_rel);
}

// 6. Mellin-Barnes closed form vs the numeric contour integral.
bool criterion6() {
    double worst = 0.0;
    for (auto [u, k] : {std::pair<double, int>{0.3, 2}, {0.4, 3}, {0.25, 4}}) {
        auto closed = moments::mellin_barnes_closed(moments::MellinForm::I1,
                                                    std::complex<double>(u), k);
        auto contour = moments::mellin_barnes_contour(moments::MellinForm::I1,
                                                      std::complex<double>(u), k,
                                                      1.0, 1e-8);
        worst = std::max(worst, std::abs(closed - contour));
    }
    return report(6, "Mellin-Barnes contour agreement", worst <= 1e-6, worst);
}

// 7. Mollifier pipeline: exact proportion, inversion round trip at length
// ~1e4, quadratic forms vs the brute-force double sum at length <= 200.
bool criterion7() {
    bool pass = moments::nonvanishing_proportion(1.5) == 0.25;
    double worst = 0.0;

    auto spec_big = moments::mollifier_build(463, 1.5);  // length ~9962
    auto M = static_cast<std::int64_t>(std::floor(spec_big.M_length + 1e-9));
    for (auto [n, yn] : spec_big.y) {
        // y_n = sum over m coprime to n of tau(m)/m x_{nm}
        double acc = 0.0;
        for (std::int64_t m = 1; m * n <= M; ++m) {
            if (arith::gcd(m, n) != 1) continue;
            auto it = spec_big.x.find(m * n);
            if (it != spec_big.x.end())
                acc += static_cast<double>(arith::tau(m)) /
                       static_cast<double>(m) * it->second;
        }
        worst = std::max(worst, std::abs(acc - yn));
    }
    pass = pass && worst <= 1e-10;

    double wq = 0.0;
    for (auto [N, delta] : {std::pair<std::int64_t, double>{29, 1.5},
                            {13, 1.5},
                            {6, 1.5}}) {
        int k = 2;
        auto spec = moments::mollifier_build(N, delta);
        auto len = static_cast<std::int64_t>(std::floor(spec.M_length + 1e-9));
        double brute = 0.0;
        for (std::int64_t d = 1; d <= len; ++d) {
            if (arith::gcd(d, N) != 1) continue;
            for (std::int64_t m1 = 1; m1 * d <= len; ++m1) {
                if (arith::gcd(m1, N) != 1 || !spec.x.count(d * m1)) continue;
                for (std::int64_t m2 = 1; m2 * d <= len; ++m2) {
                    if (arith::gcd(m2, N) != 1 || !spec.x.count(d * m2)) continue;
                    double S = 3.0 * std::log(double(N)) -
                               std::log(double(m1 * m2)) +
                               2.0 * moments::g_k(k, N);
                    brute += spec.x.at(d * m1) * spec.x.at(d * m2) /
                             static_cast<double>(d * m1 * m2) *
                             static_cast<double>(arith::tau(m1 * m2)) * S;
                }
            }
        }
        auto forms = moments::quadratic_forms(spec, k);
        double diag = forms.Pi - 2.0 * forms.Pi01 - 2.0 * forms.Pi10;
        wq = std::max(wq, std::abs(diag - brute) / std::abs(brute));
    }
    pass = pass && wq <= 1e-9;
    return report(7, "mollifier round trip and quadratic forms",
                  pass, std::max(worst, wq));
}

// 8. Weyl structure: bounded truncation defect and exact closed forms.
bool criterion8() {
    double worst = 0.0;
    for (double T = 1.0; T <= 50.0; T += 0.5) {
        double integral = weyl::truncated_main(1, T) * 2.0 * pi * pi;
        worst = std::max(worst, std::abs(integral - T * T));
    }
    bool pass = worst <= 0.12;
    pass = pass && weyl::weyl_main(6, 10.0) == 36.0 * 2.0 * 100.0 / (2.0 * pi * pi);
    pass = pass && weyl::density(6) == 4.0 / 36.0;
    pass = pass && weyl::density(1) == 1.0;
    return report(8, "Weyl truncation defect and closed forms", pass, worst);
}

// 9. Transform robustness: two quadrature schemes agree, and the explicit
// bound dominates the computed non-diagonal sum across a (mu, L) grid.
bool criterion9() {
    double worst = 0.0;
    std::function<double(double)> gauss = [](double t) {
        return std::exp(-t * t);
    };
    auto lh = weyl::localized_h([](double x) { return weyl::base_h(x); }, 3.0, 2.0);
    std::function<double(double)> loc = [lh](double t) { return lh(t); };
    for (const auto& h : {gauss, loc})
        for (double x : {0.1, 1.0, 5.0}) {
            double a = special::kuznetsov_transform(h, x,
                                                    special::QuadScheme::adaptive,
                                                    1e-9);
            double b = special::kuznetsov_transform(h, x,
                                                    special::QuadScheme::paneled,
                                                    1e-9);
            worst = std::max(worst, std::abs(a - b));
        }
    bool pass = worst <= 1e-7;

    bool dominated = true;
    for (double mu : {1.0, 2.0, 3.0, 4.0, 6.0})
        for (double L : {1.0, 2.0}) {
            auto h = weyl::localized_h([](double x) { return weyl::base_h(x); },
                                       mu, L);
            auto series = geometric::kuznetsov_geometric(
                [h](double t) { return h(t); }, 2, 1, 1, 1, 1e-3);
            double nd = series.total() - series.diagonal_term;
            dominated = dominated &&
                        std::abs(nd) <= weyl::nd_bound(1, 1, 2, mu, L).bound;
        }
    pass = pass && dominated;
    return report(9, "transform schemes and non-diagonal bound", pass, worst);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: acceptance <fixtures-dir>\n");
        return 2;
    }
    bool ok = true;
    ok &= criterion1();
    ok &= criterion2();
    ok &= criterion3();
    ok &= criterion4();
    ok &= criterion5(argv[1]);
    ok &= criterion6();
    ok &= criterion7();
    ok &= criterion8();
    ok &= criterion9();
    std::printf("%s\n", ok ? "all criteria passed" : "ACCEPTANCE FAILED");
    return ok ? 0 : 1;
}
