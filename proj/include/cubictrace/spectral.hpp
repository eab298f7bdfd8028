#pragma once

// Newform fixture ingestion and the spectral sides of the trace identities:
// weighted Hecke-eigenvalue sums over the cuspidal spectrum of cubic level,
// compared against the geometric evaluators.

#include "cubictrace/geometric.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubictrace::spectral {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HeckeRelationViolation : std::runtime_error {
    std::int64_t m, n, d;
    HeckeRelationViolation(std::string msg, std::int64_t m_, std::int64_t n_,
                           std::int64_t d_)
        : std::runtime_error(std::move(msg)), m(m_), n(n_), d(d_) {}
};

struct HorizonExceeded : std::out_of_range {
    using std::out_of_range::out_of_range;
};

// One cuspidal representation.  hecke holds unitary eigenvalues lambda(n);
// l_sym2 is the finite part of the symmetric-square L-value at 1 (ramified
// Euler factors trivial).  t is set only for Maass records.
struct NewformRecord {
    std::string label;
    std::int64_t level = 1;
    std::optional<double> t;
    std::map<std::int64_t, double> hecke;
    double l_sym2 = 1.0;
    int root_number = 1;

    double lambda(std::int64_t n) const;  // throws HorizonExceeded if absent
};

struct FixtureSet {
    std::int64_t N = 1;
    bool maass = false;
    int k = 0;  // weight 2k when holomorphic
    std::vector<NewformRecord> records;
    std::int64_t eigenvalue_horizon = 0;
    std::string provenance;
};

// Parse and validate a fixture file: schema, level = N^3, Ramanujan sanity
// |lambda(p)| <= 2.1 for p coprime to N, and the Hecke relation
// lambda(m) lambda(n) = sum_{d | (m,n), (d,N)=1} lambda(mn/d^2) to 1e-6
// wherever all needed indices are present.
FixtureSet load_fixtures(const std::string& path);

// sum over records of lambda(n1) lambda(n2) / l_sym2.
double spectral_petersson(const FixtureSet& fs, std::int64_t n1, std::int64_t n2);

// Same with the root number inserted.
double spectral_petersson_twisted(const FixtureSet& fs, std::int64_t n1,
                                  std::int64_t n2);

// Maass-side sum: h(t) lambda(n1) lambda(n2) / l_sym2.
double spectral_kuznetsov(const FixtureSet& fs,
                          const std::function<double(double)>& h,
                          std::int64_t n1, std::int64_t n2);

struct ComparisonReport {
    double spectral = 0.0;
    double geometric = 0.0;
    double abs_discrepancy = 0.0;
    double rel_discrepancy = 0.0;  // relative to |geometric|, inf if zero
    double tail_bound = 0.0;
    bool within_truncation = false;
    bool pass = false;
};

ComparisonReport compare(double spec_value, const geometric::GeometricSeries& geo,
                         double tolerance);

}  // namespace cubictrace::spectral
