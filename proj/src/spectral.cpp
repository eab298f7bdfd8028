#include "cubictrace/spectral.hpp"

#include "cubictrace/arith.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>

namespace cubictrace::spectral {

double NewformRecord::lambda(std::int64_t n) const {
    auto it = hecke.find(n);
    if (it == hecke.end())
        throw HorizonExceeded("eigenvalue not available at n=" + std::to_string(n));
    return it->second;
}

namespace {

void validate_record(const NewformRecord& rec, std::int64_t N,
                     std::int64_t horizon) {
    if (rec.level != N * N * N)
        throw SchemaError("record " + rec.label + ": level is not N^3");
    if (rec.l_sym2 <= 0.0)
        throw SchemaError("record " + rec.label + ": l_sym2 must be positive");
    if (rec.root_number != 1 && rec.root_number != -1)
        throw SchemaError("record " + rec.label + ": root_number must be +-1");
    for (auto& [n, lam] : rec.hecke) {
        if (n < 1 || n > horizon)
            throw SchemaError("record " + rec.label + ": index outside horizon");
        if (arith::is_prime(n) && n % N != 0 && std::abs(lam) > 2.1)
            throw SchemaError("record " + rec.label +
                              ": eigenvalue violates the Ramanujan bound at p=" +
                              std::to_string(n));
    }
    // lambda(m) lambda(n) = sum_{d | (m,n), (d,N)=1} lambda(mn/d^2)
    for (auto& [m, lm] : rec.hecke) {
        for (auto& [n, ln] : rec.hecke) {
            if (m > n || m * n > horizon) continue;
            double rhs = 0.0;
            bool complete = true;
            std::int64_t g = arith::gcd(m, n);
            for (std::int64_t d = 1; d <= g; ++d) {
                if (g % d || arith::gcd(d, N) != 1) continue;
                auto it = rec.hecke.find(m * n / (d * d));
                if (it == rec.hecke.end()) { complete = false; break; }
                rhs += it->second;
            }
            if (complete && std::abs(lm * ln - rhs) > 1e-6)
                throw HeckeRelationViolation(
                    "record " + rec.label + ": Hecke relation fails at (" +
                        std::to_string(m) + "," + std::to_string(n) + ")",
                    m, n, g);
        }
    }
}

}  // namespace

FixtureSet load_fixtures(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open fixture file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    FixtureSet fs;
    try {
        fs.N = j.at("N").get<std::int64_t>();
        auto& w = j.at("weight");
        if (w.is_string()) {
            if (w.get<std::string>() != "maass")
                throw SchemaError("weight must be an even integer or \"maass\"");
            fs.maass = true;
        } else {
            std::int64_t weight = w.get<std::int64_t>();
            if (weight < 4 || weight % 2)
                throw SchemaError("holomorphic weight must be even and >= 4");
            fs.k = static_cast<int>(weight / 2);
        }
        fs.eigenvalue_horizon = j.at("eigenvalue_horizon").get<std::int64_t>();
        fs.provenance = j.value("provenance", "");
        for (auto& rj : j.at("records")) {
            NewformRecord rec;
            rec.label = rj.at("label").get<std::string>();
            rec.level = rj.at("level").get<std::int64_t>();
            if (rj.contains("t")) rec.t = rj.at("t").get<double>();
            if (fs.maass && !rec.t)
                throw SchemaError("maass record " + rec.label +
                                  " lacks a spectral parameter");
            rec.l_sym2 = rj.at("l_sym2").get<double>();
            rec.root_number = rj.at("root_number").get<int>();
            for (auto& [key, val] : rj.at("hecke").items())
                rec.hecke[std::stoll(key)] = val.get<double>();
            fs.records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("fixture schema violation: ") + e.what());
    }
    if (fs.N < 1 || !arith::is_squarefree(fs.N))
        throw SchemaError("N must be a positive squarefree integer");
    for (auto& rec : fs.records)
        validate_record(rec, fs.N, fs.eigenvalue_horizon);
    return fs;
}

namespace {

void check_indices(const FixtureSet& fs, std::int64_t n1, std::int64_t n2) {
    if (n1 < 1 || n2 < 1 || arith::gcd(n1 * n2, fs.N) != 1)
        throw std::invalid_argument("Hecke indices must be positive and coprime to N");
    if (n1 > fs.eigenvalue_horizon || n2 > fs.eigenvalue_horizon)
        throw HorizonExceeded("Hecke index beyond the fixture horizon");
}

}  // namespace

double spectral_petersson(const FixtureSet& fs, std::int64_t n1, std::int64_t n2) {
    check_indices(fs, n1, n2);
    double sum = 0.0;
    for (auto& rec : fs.records)
        sum += rec.lambda(n1) * rec.lambda(n2) / rec.l_sym2;
    return sum;
}

double spectral_petersson_twisted(const FixtureSet& fs, std::int64_t n1,
                                  std::int64_t n2) {
    check_indices(fs, n1, n2);
    double sum = 0.0;
    for (auto& rec : fs.records)
        sum += rec.root_number * rec.lambda(n1) * rec.lambda(n2) / rec.l_sym2;
    return sum;
}

double spectral_kuznetsov(const FixtureSet& fs,
                          const std::function<double(double)>& h,
                          std::int64_t n1, std::int64_t n2) {
    check_indices(fs, n1, n2);
    double sum = 0.0;
    for (auto& rec : fs.records) {
        if (!rec.t) throw SchemaError("holomorphic record in a Maass-side sum");
        sum += h(*rec.t) * rec.lambda(n1) * rec.lambda(n2) / rec.l_sym2;
    }
    return sum;
}

ComparisonReport compare(double spec_value, const geometric::GeometricSeries& geo,
                         double tolerance) {
    ComparisonReport r;
    r.spectral = spec_value;
    r.geometric = geo.total();
    r.abs_discrepancy = std::abs(r.spectral - r.geometric);
    r.rel_discrepancy = r.geometric == 0.0
                            ? (r.abs_discrepancy == 0.0
                                   ? 0.0
                                   : std::numeric_limits<double>::infinity())
                            : r.abs_discrepancy / std::abs(r.geometric);
    r.tail_bound = geo.tail_bound;
    r.within_truncation = r.abs_discrepancy <= geo.tail_bound;
    r.pass = r.within_truncation || r.rel_discrepancy <= tolerance ||
             r.abs_discrepancy <= tolerance;
    return r;
}

}  // namespace cubictrace::spectral
