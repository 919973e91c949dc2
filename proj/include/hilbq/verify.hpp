#pragma once

#include <functional>
#include <optional>

#include "hilbq/closed_forms.hpp"
#include "hilbq/operators.hpp"

namespace hilbq {

struct Mismatch {
    int q = 0;
    std::vector<int> z;
    Rational lhs, rhs;
};

struct IdentityReport {
    std::string identity;
    std::string model;
    int qmax = 0;
    bool pass = false;
    std::optional<Mismatch> mismatch;
    std::string note;
};

// Exact comparison of two series; arity differences are tolerated only when
// the z-content is trivial on both sides. Never tolerance-based.
IdentityReport compare_series(const std::string& identity, const std::string& model,
                              const ZQSeries& lhs, const ZQSeries& rhs);
IdentityReport compare_rational(const std::string& identity, const std::string& model, int order,
                                const Rational& lhs, const Rational& rhs);

// Per-coefficient Lagrange interpolation of a model family in chi, evaluated
// at the target. Every q^n coefficient is treated as a polynomial in chi of
// degree at most degree_bound(n) (default n), so the family must contain at
// least degree_bound(n)+1 samples with distinct chi values.
ZQSeries chi_extrapolate(const std::vector<std::pair<Rational, ZQSeries>>& family, const Rational& target,
                         const std::function<int(int)>& degree_bound = {});

bool all_pass(const std::vector<IdentityReport>& reports);
std::string reports_to_json(const std::vector<IdentityReport>& reports);

// Identity groups. Each returns one report row per checked equality.
namespace suites {

// Trace of the bare vertex operator against the Euler product, plus
// z-freeness, on the supplied models.
std::vector<IdentityReport> gottsche(int qmax, const std::vector<SurfaceModel>& models);
// Degree-0 series against its closed form for alpha in {1_X, K, e_1, x}.
std::vector<IdentityReport> f0(int qmax, const std::vector<SurfaceModel>& models);
// Degree-1 series with <K,L> != 0 against its closed form.
std::vector<IdentityReport> f1(int qmax);
// Point-class series for k <= 4 against the weight-(k+2) bracket sums.
std::vector<IdentityReport> fk_point(int qmax);
// Vertex-weighted single-product traces against the closed product formula.
std::vector<IdentityReport> w_trace_closed(int qmax);
// The two expansions of the theta series agree for k <= 4.
std::vector<IdentityReport> theta_routes(int qmax);
// Randomized operator-algebra laws, `instances` cases per law.
std::vector<IdentityReport> fock_properties(int instances);
// Universal-constants table: seeded values, hook recursion, even-row zeros.
std::vector<IdentityReport> constants_table(int imax, int jmax);
// Point-class multi-series from the table against closed forms and traces.
std::vector<IdentityReport> fqxk(int qmax);
// chi -> 0 extrapolation: hook-family extraction and the abelian limits.
std::vector<IdentityReport> abelian(int qmax);

}  // namespace suites

std::vector<std::string> suite_names();
std::vector<IdentityReport> run_suite(const std::string& suite, int qmax,
                                      const std::vector<SurfaceModel>& models);

}  // namespace hilbq
