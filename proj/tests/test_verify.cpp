#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hilbq/verify.hpp"

using namespace hilbq;

TEST_CASE("series comparison reports the first mismatch") {
    ZQSeries a(4, 0), b(4, 0);
    a.add_term(1, {}, 1);
    a.add_term(3, {}, rat(2, 3));
    b.add_term(1, {}, 1);
    b.add_term(3, {}, rat(1, 3));
    auto ok = compare_series("id", "m", a, a);
    CHECK(ok.pass);
    CHECK_FALSE(ok.mismatch.has_value());
    auto bad = compare_series("id", "m", a, b);
    CHECK_FALSE(bad.pass);
    REQUIRE(bad.mismatch.has_value());
    CHECK(bad.mismatch->q == 3);
    CHECK(bad.mismatch->lhs == rat(2, 3));
    CHECK(bad.mismatch->rhs == rat(1, 3));
}

TEST_CASE("comparison tolerates trivial z content only") {
    ZQSeries a(3, 1);
    a.add_term(2, {0}, 5);
    ZQSeries b(3, 0);
    b.add_term(2, {}, 5);
    CHECK(compare_series("id", "m", a, b).pass);
    ZQSeries c(3, 1);
    c.add_term(2, {1}, 5);
    auto rep = compare_series("id", "m", c, b);
    CHECK_FALSE(rep.pass);
    CHECK(rep.note.find("arity") != std::string::npos);
}

TEST_CASE("report json shape") {
    ZQSeries a(2, 0), b(2, 0);
    a.add_term(1, {}, 1);
    std::vector<IdentityReport> reps = {compare_series("alpha", "model-x", a, a),
                                        compare_series("beta", "model-y", a, b)};
    std::string js = reports_to_json(reps);
    CHECK(js.find("\"identity\": \"alpha\"") != std::string::npos);
    CHECK(js.find("\"status\": \"pass\"") != std::string::npos);
    CHECK(js.find("\"status\": \"fail\"") != std::string::npos);
    CHECK(js.find("\"mismatch\"") != std::string::npos);
    CHECK_FALSE(all_pass(reps));
}

TEST_CASE("chi extrapolation on synthetic families") {
    // constant family
    ZQSeries c(3, 0);
    c.add_term(0, {}, 2);
    c.add_term(3, {}, rat(1, 2));
    std::vector<std::pair<Rational, ZQSeries>> fam;
    for (int chi = 3; chi <= 7; ++chi) fam.push_back({Rational(chi), c});
    CHECK(chi_extrapolate(fam, 0) == c);

    // linear family chi * s vanishes at chi = 0
    fam.clear();
    for (int chi = 3; chi <= 7; ++chi) fam.push_back({Rational(chi), c.scaled(chi)});
    CHECK(chi_extrapolate(fam, 0).is_zero());

    // quadratic family is reproduced exactly at a fresh point
    fam.clear();
    for (int chi = 1; chi <= 5; ++chi) fam.push_back({Rational(chi), c.scaled(chi * chi)});
    CHECK(chi_extrapolate(fam, 10) == c.scaled(100));

    // sanity: re-evaluating at a sample node returns the sample
    CHECK(chi_extrapolate(fam, 3) == c.scaled(9));
}

TEST_CASE("chi extrapolation guards") {
    ZQSeries s(4, 0);
    s.add_term(4, {}, 1);
    std::vector<std::pair<Rational, ZQSeries>> fam = {{Rational(3), s}, {Rational(4), s}};
    // q^4 coefficient needs degree <= 4, i.e. five samples
    CHECK_THROWS_AS(chi_extrapolate(fam, 0), std::invalid_argument);
    fam.push_back({Rational(4), s});
    CHECK_THROWS_AS(chi_extrapolate(fam, 0), std::invalid_argument);  // repeated node
    CHECK_THROWS_AS(chi_extrapolate({}, 0), std::invalid_argument);
}

TEST_CASE("identities hold on a model with a dense rational pairing") {
    SurfaceModel X = SurfaceModel::from_json_text(
        R"({"name":"dense","r":2,"P":["2","1","1","1"],"K":["1/2","0"],"lineBundles":{"La":["1","1"]}})");
    auto g = suites::gottsche(4, {X});
    auto f = suites::f0(4, {X});
    for (const auto& r : g) CHECK(r.pass);
    for (const auto& r : f) CHECK(r.pass);
}

TEST_CASE("suite dispatch") {
    CHECK(suite_names().size() == 5);
    CHECK_THROWS_AS(run_suite("bogus", 3, {}), std::invalid_argument);
    // a small identities run passes and yields enough rows
    auto reports = run_suite("identities", 3, {});
    CHECK(reports.size() >= 10);
    for (const auto& r : reports) {
        INFO(r.identity, " on ", r.model, ": ", r.note);
        CHECK(r.pass);
    }
}
