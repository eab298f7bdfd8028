#include <doctest.h>

#include "cubictrace/geometric.hpp"
#include "cubictrace/spectral.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

using namespace cubictrace;
using namespace cubictrace::spectral;

namespace {

std::string fixture(const char* name) {
    return std::string(CUBICTRACE_FIXTURE_DIR) + "/" + name;
}

struct TempJson {
    std::string path;
    explicit TempJson(const std::string& body)
        : path("spectral_tmp_fixture.json") {
        std::ofstream(path) << body;
    }
    ~TempJson() { std::remove(path.c_str()); }
};

const char* valid_body = R"({
  "N": 2, "weight": 4, "eigenvalue_horizon": 15, "provenance": "synthetic",
  "records": [{"label": "t", "level": 8, "l_sym2": 0.5, "root_number": -1,
    "hecke": {"1": 1.0, "3": 0.5, "5": -0.25, "9": -0.75, "15": -0.125}}]
})";

}  // namespace

TEST_CASE("fixture loading and validation") {
    TempJson f(valid_body);
    auto fs = load_fixtures(f.path);
    CHECK(fs.N == 2);
    CHECK(fs.k == 2);
    CHECK(!fs.maass);
    CHECK(fs.records.size() == 1);
    CHECK(fs.records[0].lambda(9) == -0.75);
    CHECK(fs.eigenvalue_horizon == 15);
}

TEST_CASE("empty record list is a valid fixture") {
    TempJson f(R"({"N": 3, "weight": 6, "eigenvalue_horizon": 10,
                   "provenance": "", "records": []})");
    auto fs = load_fixtures(f.path);
    CHECK(fs.records.empty());
    CHECK(spectral_petersson(fs, 1, 1) == 0.0);
    CHECK(spectral_petersson_twisted(fs, 1, 1) == 0.0);
}

TEST_CASE("single-record weighted sums") {
    TempJson f(valid_body);
    auto fs = load_fixtures(f.path);
    CHECK(spectral_petersson(fs, 1, 1) == doctest::Approx(2.0));
    CHECK(spectral_petersson_twisted(fs, 1, 1) == doctest::Approx(-2.0));
    CHECK(spectral_petersson(fs, 3, 5) ==
          doctest::Approx(spectral_petersson(fs, 5, 3)));
    CHECK(std::abs(spectral_petersson_twisted(fs, 3, 3)) <=
          std::abs(spectral_petersson(fs, 3, 3)) + 1e-15);
}

TEST_CASE("multiplicativity violations are rejected") {
    // lambda(15) corrupted away from lambda(3) lambda(5) by 1e-4
    TempJson f(R"({
      "N": 2, "weight": 4, "eigenvalue_horizon": 15, "provenance": "",
      "records": [{"label": "bad", "level": 8, "l_sym2": 0.5, "root_number": 1,
        "hecke": {"1": 1.0, "3": 0.5, "5": -0.25, "9": -0.75, "15": -0.1251}}]
    })");
    CHECK_THROWS_AS(load_fixtures(f.path), HeckeRelationViolation);
}

TEST_CASE("schema violations are rejected") {
    TempJson wrong_level(R"({
      "N": 2, "weight": 4, "eigenvalue_horizon": 5, "provenance": "",
      "records": [{"label": "x", "level": 4, "l_sym2": 0.5, "root_number": 1,
        "hecke": {"1": 1.0}}]
    })");
    CHECK_THROWS_AS(load_fixtures(wrong_level.path), SchemaError);

    TempJson ramanujan(R"({
      "N": 2, "weight": 4, "eigenvalue_horizon": 5, "provenance": "",
      "records": [{"label": "x", "level": 8, "l_sym2": 0.5, "root_number": 1,
        "hecke": {"1": 1.0, "3": 2.5}}]
    })");
    CHECK_THROWS_AS(load_fixtures(ramanujan.path), SchemaError);

    TempJson bad_weight(R"({"N": 2, "weight": 5, "eigenvalue_horizon": 5,
                            "provenance": "", "records": []})");
    CHECK_THROWS_AS(load_fixtures(bad_weight.path), SchemaError);

    CHECK_THROWS_AS(load_fixtures("no_such_file.json"), SchemaError);
}

TEST_CASE("horizon and coprimality guards") {
    TempJson f(valid_body);
    auto fs = load_fixtures(f.path);
    CHECK_THROWS_AS(spectral_petersson(fs, 1, 17), HorizonExceeded);
    CHECK_THROWS_AS(spectral_petersson(fs, 2, 1), std::invalid_argument);
}

TEST_CASE("maass fixtures and the h-weighted sum") {
    TempJson f(R"({
      "N": 2, "weight": "maass", "eigenvalue_horizon": 5, "provenance": "",
      "records": [
        {"label": "m1", "level": 8, "t": 2.0, "l_sym2": 1.0, "root_number": 1,
         "hecke": {"1": 1.0, "3": 0.5}},
        {"label": "m2", "level": 8, "t": 3.0, "l_sym2": 2.0, "root_number": -1,
         "hecke": {"1": 1.0, "3": -0.5}}]
    })");
    auto fs = load_fixtures(f.path);
    CHECK(fs.maass);
    auto h = [](double t) { return t * t; };
    CHECK(spectral_kuznetsov(fs, h, 1, 3) ==
          doctest::Approx(4.0 * 0.5 - 9.0 * 0.5 / 2.0));
    auto zero = [](double) { return 0.0; };
    CHECK(spectral_kuznetsov(fs, zero, 1, 1) == 0.0);
}

TEST_CASE("comparison report semantics") {
    geometric::GeometricSeries g;
    g.diagonal_term = 1.0;
    g.tail_bound = 1e-6;
    auto exact = compare(1.0, g, 1e-9);
    CHECK(exact.pass);
    CHECK(exact.abs_discrepancy == 0.0);
    auto within = compare(1.0 + 5e-7, g, 1e-12);
    CHECK(within.within_truncation);
    CHECK(within.pass);
    auto fail = compare(1.1, g, 1e-3);
    CHECK(!fail.pass);
    // verdicts monotone in tolerance
    CHECK(compare(1.1, g, 0.2).pass);
}

TEST_CASE("level-8 identity on real newform data") {
    for (const char* name : {"level8_weight4.json", "level8_weight6.json"}) {
        auto fs = load_fixtures(fixture(name));
        REQUIRE(fs.records.size() == 1);
        for (auto [n1, n2] : {std::pair<std::int64_t, std::int64_t>{1, 1},
                              {3, 3},
                              {3, 5}}) {
            geometric::PeterssonQuery q{fs.k, fs.N, n1, n2, false, std::nullopt};
            auto geo = petersson_geometric(q, 1e-6);
            auto rep = compare(spectral_petersson(fs, n1, n2), geo, 1e-3);
            CAPTURE(name);
            CAPTURE(n1);
            CAPTURE(n2);
            CHECK(rep.rel_discrepancy <= 1e-3);

            q.twisted = true;
            auto tgeo = petersson_twisted_geometric(q, 1e-6);
            auto trep =
                compare(spectral_petersson_twisted(fs, n1, n2), tgeo, 1e-3);
            CHECK(trep.rel_discrepancy <= 1e-3);
        }
    }
}
