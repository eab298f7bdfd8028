#include <doctest.h>

#include "cubictrace/rankin.hpp"
#include "cubictrace/special.hpp"

#include <cmath>
#include <numbers>

using namespace cubictrace;
using namespace cubictrace::rankin;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST_CASE("satake pairs and diagonal Whittaker values") {
    auto s = make_satake(std::polar(1.0, 0.7), 5);
    CHECK(std::abs(s.alpha1 * s.alpha2 - 1.0) < 1e-14);
    CHECK_THROWS_AS(make_satake(cplx(3.0, 0.0), 5), std::invalid_argument);
    CHECK_THROWS_AS(make_satake(cplx(1.0, 0.0), 4), std::invalid_argument);

    CHECK(whittaker_diag(5, s, 0) == 1.0);
    CHECK(whittaker_diag(5, s, -1) == 0.0);
    CHECK(whittaker_diag(5, s, -3) == 0.0);
    // n = 2 against direct power-sum enumeration
    for (double th : {0.3, 1.1, 2.9}) {
        auto u = make_satake(std::polar(1.0, th), 3);
        cplx direct = 0.0;
        for (int l1 = 0; l1 <= 2; ++l1)
            direct += std::pow(u.alpha1, l1) * std::pow(u.alpha2, 2 - l1);
        CHECK(whittaker_diag(3, u, 2) ==
              doctest::Approx(direct.real() / 3.0).epsilon(1e-12));
        // p^{-n/2} scaling between primes at the same parameter
        CHECK(whittaker_diag(7, make_satake(u.alpha1, 7), 2) * 7.0 ==
              doctest::Approx(whittaker_diag(3, u, 2) * 3.0).epsilon(1e-12));
    }
    // higher n against direct enumeration
    auto w = make_satake(std::polar(1.0, 0.4), 2);
    for (int n : {3, 5, 8}) {
        cplx direct = 0.0;
        for (int l1 = 0; l1 <= n; ++l1)
            direct += std::pow(w.alpha1, l1) * std::pow(w.alpha2, n - l1);
        CHECK(whittaker_diag(2, w, n) ==
              doctest::Approx(std::pow(2.0, -0.5 * n) * direct.real())
                  .epsilon(1e-11));
    }
}

TEST_CASE("unramified local integral: series vs Euler product") {
    for (auto [p, th] : {std::pair<std::int64_t, double>{2, 0.9},
                         {3, 0.3},
                         {5, 2.2}}) {
        auto sat = make_satake(std::polar(1.0, th), p);
        cplx closed = rs_local_unramified(cplx(2.0), p, sat);
        cplx series = rs_local_unramified_series(cplx(2.0), p, sat);
        CHECK(std::abs(closed - series) < 1e-10);
        // explicit factored form at unit Satake parameters
        cplx ps = std::pow(cplx(double(p)), -2.0);
        cplx expl = 1.0 /
                    ((1.0 - ps) * (1.0 - std::polar(1.0, 2.0 * th) * ps) *
                     (1.0 - ps) * (1.0 - std::polar(1.0, -2.0 * th) * ps));
        CHECK(std::abs(closed - expl) < 1e-12);
    }
    // complex s
    auto sat = make_satake(std::polar(1.0, 1.3), 3);
    cplx s(1.7, 0.45);
    CHECK(std::abs(rs_local_unramified(s, 3, sat) -
                   rs_local_unramified_series(s, 3, sat)) < 1e-10);
    // symmetry under swapping the two parameters
    SatakePair swapped{sat.alpha2, sat.alpha1};
    CHECK(std::abs(rs_local_unramified(s, 3, sat) -
                   rs_local_unramified(s, 3, swapped)) < 1e-14);
    CHECK_THROWS_AS(rs_local_unramified_series(cplx(0.8), 3, sat),
                    SeriesNotConverged);
}

TEST_CASE("ramified local integral") {
    CHECK(rs_local_ramified(cplx(1.0), 2) == doctest::Approx(1.0 / 12.0));
    CHECK(rs_local_ramified(cplx(1.0), 5) == doctest::Approx(1.0 / 150.0));
    CHECK(rs_local_ramified(cplx(1.0), 3) == doctest::Approx(1.0 / 36.0));
    // independent of s
    for (double sr : {0.5, 1.5, 3.0})
        CHECK(rs_local_ramified(cplx(sr, 0.2), 7) ==
              doctest::Approx(1.0 / (49.0 * 8.0)));
    CHECK_THROWS_AS(rs_local_ramified(cplx(1.0), 6), std::invalid_argument);
}

TEST_CASE("archimedean integral, holomorphic spectrum") {
    // s=1, k=2: 4^{-3} pi^{-5} Gamma(1) Gamma(4)
    cplx v = rs_arch_holomorphic(cplx(1.0), 2);
    CHECK(v.real() == doctest::Approx(6.0 / (64.0 * std::pow(pi, 5.0))));
    CHECK(std::abs(v.imag()) < 1e-16);
    // quadrature cross-check
    for (auto [s, k] : {std::pair<cplx, int>{cplx(1.5), 3},
                        {cplx(1.0), 2},
                        {cplx(2.2, 0.3), 4}}) {
        cplx closed = rs_arch_holomorphic(s, k);
        cplx quad = rs_arch_holomorphic_quadrature(s, k, 1e-11);
        CHECK(std::abs(closed - quad) <= 1e-8 * (1.0 + std::abs(closed)));
    }
    // weight recurrence: ratio k -> k+1 follows the Gamma recurrence
    cplx s(1.3, 0.0);
    for (int k : {1, 2, 3}) {
        cplx ratio = rs_arch_holomorphic(s, k + 1) / rs_arch_holomorphic(s, k);
        cplx expect = (s + 2.0 * k) * (s + 2.0 * k - 1.0) / (16.0 * pi * pi);
        CHECK(std::abs(ratio - expect) < 1e-12 * std::abs(expect));
    }
    CHECK_THROWS_AS(rs_arch_holomorphic(cplx(-0.5), 2), std::invalid_argument);
}

TEST_CASE("archimedean integral, Maass spectrum") {
    // t = 0 specialization
    for (double sr : {0.8, 1.0, 2.5}) {
        cplx v = rs_arch_maass(cplx(sr), 0.0);
        double g = std::tgamma(0.5 * sr);
        CHECK(v.real() ==
              doctest::Approx(std::pow(pi, -2.0 * sr) * g * g * g * g));
    }
    // even in t, and conjugating s conjugates the value
    cplx s(1.4, 0.2);
    CHECK(std::abs(rs_arch_maass(cplx(1.2), 0.8) -
                   rs_arch_maass(cplx(1.2), -0.8)) < 1e-15);
    CHECK(std::abs(rs_arch_maass(std::conj(s), 0.8) -
                   std::conj(rs_arch_maass(s, 0.8))) < 1e-14);
    // quadrature cross-check through the K-Bessel Mellin transform
    cplx closed = rs_arch_maass(cplx(1.2), 0.8);
    cplx quad = rs_arch_maass_quadrature(cplx(1.2), 0.8, 1e-9);
    CHECK(std::abs(closed - quad) <= 1e-7 * (1.0 + std::abs(closed)));
}

TEST_CASE("norm constants and their residue origin") {
    CHECK(inner_product_constant_holomorphic(2) ==
          doctest::Approx(std::pow(4.0, -3.0) * std::pow(pi, -5.0) * 6.0));
    CHECK(inner_product_constant_maass(1.0) ==
          doctest::Approx(1.0 / std::cosh(pi)));
    // both constants are the s=1 values of the archimedean integrals
    for (int k : {1, 2, 3, 4})
        CHECK(rs_arch_holomorphic(cplx(1.0), k).real() ==
              doctest::Approx(inner_product_constant_holomorphic(k))
                  .epsilon(1e-13));
    for (double t : {0.3, 1.0, 2.0})
        CHECK(rs_arch_maass(cplx(1.0), t).real() ==
              doctest::Approx(inner_product_constant_maass(t)).epsilon(1e-12));
}

TEST_CASE("rational residue bookkeeping") {
    CHECK(phi_hat_constant(1) == Rational{1, 1});
    CHECK(phi_hat_constant(2) == Rational{1, 16});
    CHECK(phi_hat_constant(6) == Rational{1, 648});
    CHECK(residue_constant(2) == Rational{1, 24});
    CHECK(residue_constant(15) == make_rational(2 * 4, 27 * 4 * 125 * 6));
    CHECK_THROWS(phi_hat_constant(12));
    for (std::int64_t N = 1; N <= 30; ++N) {
        bool sf = true;
        for (std::int64_t d = 2; d * d <= N; ++d)
            if (N % (d * d) == 0) sf = false;
        if (!sf) continue;
        CHECK(residue_bookkeeping(N));
        // float cross-check of the exact fractions
        auto r = residue_constant(N);
        double prod = 1.0;
        for (std::int64_t p = 2; p <= N; ++p)
            if (N % p == 0 && (p == 2 || p % 2 != 0)) {
                bool prime = true;
                for (std::int64_t d = 2; d * d <= p; ++d)
                    if (p % d == 0) prime = false;
                if (prime) prod *= (p - 1.0) / (p * p * p * (p + 1.0));
            }
        CHECK(double(r.num) / double(r.den) == doctest::Approx(prod));
    }
}

TEST_CASE("K-Bessel norm integral") {
    for (double t : {0.3, 1.0, 2.0}) {
        double expect = pi / (4.0 * std::cosh(pi * t));
        CHECK(kbessel_norm(t) == doctest::Approx(expect).epsilon(1e-6));
        // third route: the closed-form Mellin transform at s=1
        cplx mellin = special::kbessel_mellin_closed(cplx(0.0, t),
                                                     cplx(0.0, -t), cplx(1.0));
        CHECK(mellin.real() / pi == doctest::Approx(expect).epsilon(1e-12));
    }
}
