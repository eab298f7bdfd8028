// cubic-trace: command-line front end for the trace-formula verification
// library.  Every subcommand prints a machine-readable report and exits 0
// exactly when all of its checks pass.

#include <CLI11.hpp>
#include <json.hpp>

#include "cubictrace/arith.hpp"
#include "cubictrace/geometric.hpp"
#include "cubictrace/moments.hpp"
#include "cubictrace/padic.hpp"
#include "cubictrace/rankin.hpp"
#include "cubictrace/special.hpp"
#include "cubictrace/spectral.hpp"
#include "cubictrace/weyl.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <numbers>
#include <random>
#include <string>

namespace {

using json = nlohmann::json;
using namespace cubictrace;
constexpr double pi = std::numbers::pi;

struct Report {
    json doc;

    explicit Report(const std::string& command) {
        doc["command"] = command;
        doc["params"] = json::object();
        doc["values"] = json::object();
        doc["checks"] = json::array();
        doc["tail_bounds"] = json::object();
    }

    void check(const std::string& name, double lhs, double rhs, double tol) {
        bool pass = std::abs(lhs - rhs) <= tol;
        doc["checks"].push_back(
            {{"name", name}, {"pass", pass}, {"lhs", lhs}, {"rhs", rhs}, {"tol", tol}});
    }

    void check_flag(const std::string& name, bool pass) {
        doc["checks"].push_back({{"name", name},
                                 {"pass", pass},
                                 {"lhs", pass ? 1.0 : 0.0},
                                 {"rhs", 1.0},
                                 {"tol", 0.0}});
    }

    bool all_pass() const {
        for (const auto& c : doc["checks"])
            if (!c["pass"].get<bool>()) return false;
        return true;
    }

    int emit(const std::string& format) const {
        if (format == "json") {
            std::cout << doc.dump(2) << "\n";
        } else if (format == "csv") {
            std::cout << "command,check,pass,lhs,rhs,tol\n";
            for (const auto& c : doc["checks"])
                std::cout << doc["command"].get<std::string>() << ","
                          << c["name"].get<std::string>() << ","
                          << (c["pass"].get<bool>() ? 1 : 0) << ","
                          << c["lhs"].get<double>() << "," << c["rhs"].get<double>()
                          << "," << c["tol"].get<double>() << "\n";
        } else {
            std::cout << "== " << doc["command"].get<std::string>() << " ==\n";
            for (auto it = doc["values"].begin(); it != doc["values"].end(); ++it)
                std::cout << "  " << it.key() << " = " << it.value().dump() << "\n";
            for (auto it = doc["tail_bounds"].begin(); it != doc["tail_bounds"].end();
                 ++it)
                std::cout << "  tail " << it.key() << " = " << it.value().dump()
                          << "\n";
            for (const auto& c : doc["checks"])
                std::cout << "  [" << (c["pass"].get<bool>() ? "pass" : "FAIL")
                          << "] " << c["name"].get<std::string>() << "\n";
        }
        return all_pass() ? 0 : 1;
    }
};

int run_kloosterman(std::int64_t m, std::int64_t n, std::int64_t c,
                    const std::string& format) {
    Report rep("kloosterman");
    rep.doc["params"] = {{"m", m}, {"n", n}, {"c", c}};
    double s = arith::kloosterman(m, n, c);
    std::int64_t g = arith::gcd(arith::gcd(m, n), c);
    double weil = static_cast<double>(arith::tau(c)) *
                  std::sqrt(static_cast<double>(g)) *
                  std::sqrt(static_cast<double>(c));
    rep.doc["values"] = {{"sum", s},
                         {"weil_bound", weil},
                         {"ratio", std::abs(s) / weil},
                         {"gcd_mnc", g},
                         {"tau_c", arith::tau(c)}};
    rep.check_flag("weil-bound", std::abs(s) <= weil + 1e-9);
    if (c == 1) rep.check("trivial-modulus", s, 1.0, 1e-12);
    return rep.emit(format);
}

int run_verify_orbital(std::int64_t pmax, std::uint64_t seed,
                       const std::string& format) {
    Report rep("verify-orbital");
    rep.doc["params"] = {{"pmax", pmax}, {"seed", seed}};
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (std::int64_t p : {2, 3, 5, 7}) {
        if (p > pmax) continue;
        double local_worst = 0.0;
        for (std::int64_t m = 1; m < p; ++m) {
            padic::LocalTestSpec plain{p, m, +1, padic::Variant::plain};
            for (int v : {-4, -6, -8}) {
                int t = -v / 2;
                // three random unit residues mod p^t
                std::int64_t mod = 1;
                for (int i = 0; i < t; ++i) mod *= p;
                for (int pick = 0; pick < 3; ++pick) {
                    std::int64_t u =
                        1 + static_cast<std::int64_t>(rng() % (mod > 1 ? mod - 1 : 1));
                    if (u % p == 0) u = 1;
                    auto a = padic::padic(p, v, u, t + 3);
                    auto closed = padic::orbital_second_local_closed(plain, a);
                    auto brute = padic::orbital_second_local_bruteforce(plain, a);
                    local_worst = std::max(local_worst, std::abs(closed - brute));
                }
            }
            padic::LocalTestSpec tw{p, m, +1, padic::Variant::twisted};
            for (std::int64_t u = 1; u < p * p; ++u) {
                if (u % p == 0) continue;
                auto a = padic::padic(p, -3, u, 4);
                auto closed = padic::orbital_second_local_closed(tw, a);
                auto brute = padic::orbital_second_local_bruteforce(tw, a);
                local_worst = std::max(local_worst, std::abs(closed - brute));
            }
        }
        rep.check("closed-vs-bruteforce-p" + std::to_string(p), local_worst, 0.0,
                  1e-9);
        worst = std::max(worst, local_worst);
    }
    rep.doc["values"] = {{"max_abs_error", worst}};
    return rep.emit(format);
}

int run_petersson(std::int64_t N, int k, std::int64_t n1, std::int64_t n2,
                  bool twisted, std::int64_t M, bool check_m_sum,
                  const std::string& fixtures, double tol,
                  const std::string& format) {
    Report rep("petersson");
    rep.doc["params"] = {{"N", N},       {"k", k}, {"n1", n1}, {"n2", n2},
                         {"twisted", twisted}, {"M", M}, {"tol", tol}};
    geometric::PeterssonQuery q{k, N, n1, n2, twisted,
                                M > 0 ? std::optional<std::int64_t>(M)
                                      : std::nullopt};
    auto series = twisted ? geometric::petersson_twisted_geometric(q, tol)
                          : geometric::petersson_geometric(q, tol);
    rep.doc["values"] = {{"diagonal", series.diagonal_term},
                         {"total", series.total()},
                         {"truncation_c", series.truncation_c}};
    rep.doc["tail_bounds"]["c_sum"] = series.tail_bound;
    rep.check_flag("tail-within-tolerance", series.tail_bound <= tol);

    if (check_m_sum && M <= 0) {
        // the fixed-parameter series must add up to the full one termwise
        double worst = 0.0;
        auto full = series;
        std::vector<double> fiber(full.c_terms.size(), 0.0);
        double fiber_diag = 0.0;
        for (std::int64_t Mv = 1; Mv <= N; ++Mv) {
            if (arith::gcd(Mv, N) != 1) continue;
            geometric::PeterssonQuery qm{k, N, n1, n2, twisted, Mv};
            auto part = twisted ? geometric::petersson_twisted_geometric(qm, tol)
                                : geometric::petersson_geometric(qm, tol);
            fiber_diag += part.diagonal_term;
            for (size_t i = 0; i < fiber.size() && i < part.c_terms.size(); ++i)
                fiber[i] += part.c_terms[i].second;
        }
        worst = std::abs(fiber_diag - full.diagonal_term);
        for (size_t i = 0; i < fiber.size(); ++i)
            worst = std::max(worst, std::abs(fiber[i] - full.c_terms[i].second));
        rep.check("parameter-sum-termwise", worst, 0.0, 1e-9);
    }

    if (!fixtures.empty()) {
        auto fs = spectral::load_fixtures(fixtures);
        double spec_val = twisted ? spectral::spectral_petersson_twisted(fs, n1, n2)
                                  : spectral::spectral_petersson(fs, n1, n2);
        auto cmp = spectral::compare(spec_val, series, 1e-3);
        rep.doc["values"]["spectral"] = cmp.spectral;
        rep.doc["values"]["rel_discrepancy"] = cmp.rel_discrepancy;
        rep.check_flag("spectral-vs-geometric", cmp.pass);
    }
    return rep.emit(format);
}

int run_kuznetsov(std::int64_t N, std::int64_t n1, std::int64_t n2,
                  const std::string& preset, double mu, double L, double tol,
                  const std::string& format) {
    Report rep("kuznetsov");
    rep.doc["params"] = {{"N", N},   {"n1", n1}, {"n2", n2}, {"preset", preset},
                         {"mu", mu}, {"L", L},   {"tol", tol}};
    std::function<double(double)> h;
    if (preset == "gaussian") {
        h = [](double t) { return std::exp(-t * t); };
    } else if (preset == "localized") {
        auto lh = weyl::localized_h([](double x) { return weyl::base_h(x); }, mu, L);
        h = [lh](double t) { return lh(t); };
    } else {
        h = [](double) { return 0.0; };
    }
    auto series = geometric::kuznetsov_geometric(h, N, n1, n2, std::nullopt, tol);
    rep.doc["values"] = {{"diagonal", series.diagonal_term},
                         {"total", series.total()},
                         {"truncation_c", series.truncation_c}};
    rep.doc["tail_bounds"]["c_sum"] = series.tail_bound;
    if (preset == "zero") {
        rep.check("zero-test-function", series.total(), 0.0, 1e-14);
    } else {
        // the two quadrature strategies must agree on the Bessel transform
        double worst = 0.0;
        for (double x : {0.1, 1.0, 5.0}) {
            double a = special::kuznetsov_transform(h, x, special::QuadScheme::adaptive,
                                                    1e-9);
            double b = special::kuznetsov_transform(h, x, special::QuadScheme::paneled,
                                                    1e-9);
            worst = std::max(worst, std::abs(a - b));
        }
        rep.check("transform-scheme-agreement", worst, 0.0, 1e-7);
    }
    return rep.emit(format);
}

int run_moments(std::int64_t N, int k, double delta, const std::string& format) {
    Report rep("moments");
    rep.doc["params"] = {{"N", N}, {"k", k}, {"delta", delta}};
    auto mc = moments::moment_constants(1, k, N);
    rep.doc["values"] = {{"g_k", moments::g_k(k, N)},
                         {"m1_main", moments::m1_main(1, k, N)},
                         {"m2_main", moments::m2_main(1, k, N)},
                         {"c_minus1", mc.c_minus1},
                         {"c_01", mc.c_01},
                         {"c_02", mc.c_02},
                         {"proportion", moments::nonvanishing_proportion(delta)}};
    rep.check("laurent-constant-sum", mc.c_01 + mc.c_02, moments::m2_main(1, k, N),
              1e-9 * std::abs(moments::m2_main(1, k, N)));
    if (std::abs(delta - 1.5) < 1e-12)
        rep.check("proportion-at-3/2", moments::nonvanishing_proportion(delta),
                  0.25, 1e-15);

    auto spec = moments::mollifier_build(N, delta);
    rep.doc["values"]["mollifier_length"] = spec.M_length;
    rep.doc["values"]["mollifier_support"] = spec.x.size();
    // round trip: rebuild y from x through the divisor sum
    double worst = 0.0;
    for (auto [n, yn] : spec.y) {
        // y_n = sum over m coprime to n of tau(m)/m x_{nm}
        double acc = 0.0;
        for (auto [mn, xv] : spec.x) {
            if (mn % n != 0) continue;
            std::int64_t m = mn / n;
            if (arith::gcd(m, n) != 1) continue;
            acc += static_cast<double>(arith::tau(m)) / static_cast<double>(m) * xv;
        }
        worst = std::max(worst, std::abs(acc - yn));
    }
    rep.check("mollifier-round-trip", worst, 0.0, 1e-10);

    auto mains = moments::mollified_main_terms(N, delta, k);
    rep.check("first-vs-second-moment-ratio", mains.M1h * mains.M1h / mains.M2h,
              delta / (3.0 + 2.0 * delta), 1e-12);
    return rep.emit(format);
}

int run_weyl(std::int64_t N, double T, const std::string& format) {
    Report rep("weyl");
    rep.doc["params"] = {{"N", N}, {"T", T}};
    double main = weyl::weyl_main(N, T);
    double trunc = weyl::truncated_main(N, T);
    rep.doc["values"] = {{"weyl_main", main},
                         {"density", weyl::density(N)},
                         {"truncated_main", trunc}};
    double phi = static_cast<double>(arith::totient(N));
    if (T > 0.0)
        rep.check("truncated-ratio", phi * trunc / main, 1.0,
                  1.0 / (12.0 * T * T) + 1e-9);
    double integral = trunc * 2.0 * pi * pi / (static_cast<double>(N) * N);
    rep.check("tanh-integral-defect", integral, T * T, 0.12);
    return rep.emit(format);
}

int run_rankin(std::int64_t N, std::uint64_t seed, double tol,
               const std::string& format) {
    Report rep("rankin");
    rep.doc["params"] = {{"N", N}, {"seed", seed}, {"tol", tol}};
    rep.check_flag("residue-bookkeeping", rankin::residue_bookkeeping(N));
    auto phi_hat = rankin::phi_hat_constant(N);
    auto res = rankin::residue_constant(N);
    rep.doc["values"] = {{"phi_hat", {phi_hat.num, phi_hat.den}},
                         {"residue_constant", {res.num, res.den}}};
    for (auto [p, e] : arith::factorize(N)) {
        double v = rankin::rs_local_ramified(rankin::cplx(1.0), p);
        rep.check("ramified-p" + std::to_string(p), v,
                  1.0 / (static_cast<double>(p * p) * (p + 1.0)), 1e-14);
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.1, pi - 0.1);
    for (int trial = 0; trial < 3; ++trial) {
        auto sat = rankin::make_satake(std::polar(1.0, angle(rng)), 3);
        auto closed = rankin::rs_local_unramified(rankin::cplx(2.0), 3, sat);
        auto series = rankin::rs_local_unramified_series(rankin::cplx(2.0), 3, sat);
        rep.check("unramified-series-" + std::to_string(trial),
                  std::abs(closed - series), 0.0, 1e-10);
    }
    auto ch = rankin::rs_arch_holomorphic(rankin::cplx(1.5), 2);
    auto qh = rankin::rs_arch_holomorphic_quadrature(rankin::cplx(1.5), 2, tol);
    rep.check("arch-holomorphic-quadrature", std::abs(ch - qh), 0.0, 1e-8);
    auto cm = rankin::rs_arch_maass(rankin::cplx(1.2), 0.8);
    auto qm = rankin::rs_arch_maass_quadrature(rankin::cplx(1.2), 0.8, tol);
    rep.check("arch-maass-quadrature", std::abs(cm - qm), 0.0, 1e-7);
    rep.check("kbessel-norm", rankin::kbessel_norm(1.0),
              pi / (4.0 * std::cosh(pi)), 1e-6);
    return rep.emit(format);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"verification toolkit for cubic-level trace formulas"};
    app.require_subcommand(1);
    std::string format = "json";
    app.add_option("--format", format, "json, csv or human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    std::uint64_t seed = 20260825;
    app.add_option("--seed", seed, "PRNG seed for randomized sweeps");

    auto* kl = app.add_subcommand("kloosterman", "classical Kloosterman sum");
    std::int64_t kl_m = 1, kl_n = 1, kl_c = 1;
    kl->add_option("m", kl_m)->required();
    kl->add_option("n", kl_n)->required();
    kl->add_option("c", kl_c)->required()->check(CLI::PositiveNumber);

    auto* vo = app.add_subcommand("verify-orbital",
                                  "local orbital integrals, closed vs brute force");
    std::int64_t vo_pmax = 7;
    vo->add_option("--pmax", vo_pmax, "largest prime in the grid");

    auto* pe = app.add_subcommand("petersson", "holomorphic geometric side");
    std::int64_t pe_N = 2, pe_n1 = 1, pe_n2 = 1, pe_M = 0;
    int pe_k = 2;
    bool pe_twisted = false, pe_msum = false;
    std::string pe_fixtures;
    double pe_tol = 1e-8;
    pe->add_option("N", pe_N)->required();
    pe->add_option("k", pe_k)->required();
    pe->add_option("n1", pe_n1)->required();
    pe->add_option("n2", pe_n2)->required();
    pe->add_flag("--twisted", pe_twisted, "insert the root number");
    pe->add_option("--M", pe_M, "fix a single cuspidal parameter");
    pe->add_flag("--check-m-sum", pe_msum,
                 "verify the parameter fibers add up termwise");
    pe->add_option("--fixtures", pe_fixtures, "newform fixture file");
    pe->add_option("--tol", pe_tol, "c-sum tail tolerance");

    auto* ku = app.add_subcommand("kuznetsov", "Maass-side geometric series");
    std::int64_t ku_N = 2, ku_n1 = 1, ku_n2 = 1;
    std::string ku_h = "gaussian";
    double ku_mu = 2.0, ku_L = 1.0, ku_tol = 1e-3;
    ku->add_option("N", ku_N)->required();
    ku->add_option("n1", ku_n1)->required();
    ku->add_option("n2", ku_n2)->required();
    ku->add_option("--preset", ku_h, "test function preset")
        ->check(CLI::IsMember({"gaussian", "localized", "zero"}));
    ku->add_option("--mu", ku_mu, "localization center");
    ku->add_option("--L", ku_L, "localization sharpness");
    ku->add_option("--tol", ku_tol, "c-sum tail tolerance");

    auto* mo = app.add_subcommand("moments", "moment main terms and mollifier");
    std::int64_t mo_N = 5;
    int mo_k = 2;
    double mo_delta = 1.5;
    mo->add_option("N", mo_N)->required();
    mo->add_option("k", mo_k)->required();
    mo->add_option("delta", mo_delta)->required();

    auto* we = app.add_subcommand("weyl", "spectral counting main terms");
    std::int64_t we_N = 1;
    double we_T = 10.0;
    we->add_option("N", we_N)->required();
    we->add_option("T", we_T)->required();

    auto* ra = app.add_subcommand("rankin", "local integral identity suite");
    std::int64_t ra_N = 2;
    double ra_tol = 1e-9;
    ra->add_option("N", ra_N)->required();
    ra->add_option("--tol", ra_tol, "quadrature tolerance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (kl->parsed()) return run_kloosterman(kl_m, kl_n, kl_c, format);
        if (vo->parsed()) return run_verify_orbital(vo_pmax, seed, format);
        if (pe->parsed())
            return run_petersson(pe_N, pe_k, pe_n1, pe_n2, pe_twisted, pe_M,
                                 pe_msum, pe_fixtures, pe_tol, format);
        if (ku->parsed())
            return run_kuznetsov(ku_N, ku_n1, ku_n2, ku_h, ku_mu, ku_L, ku_tol,
                                 format);
        if (mo->parsed()) return run_moments(mo_N, mo_k, mo_delta, format);
        if (we->parsed()) return run_weyl(we_N, we_T, format);
        if (ra->parsed()) return run_rankin(ra_N, seed, ra_tol, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
