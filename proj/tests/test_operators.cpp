#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hilbq/operators.hpp"

using namespace hilbq;

namespace {

FockVec<Rational> vac() { return {{CreationMonomial{}, Rational(1)}}; }

FockVec<ZQSeries> vac_series(int qmax, int nz) {
    return {{CreationMonomial{}, ZQSeries::one(qmax, nz)}};
}

}  // namespace

TEST_CASE("degree-0 chern operator contracts with the cup product") {
    for (const auto& name : {"kpos", "two-class"}) {
        SurfaceModel X = SurfaceModel::preset(name);
        CohClass alpha = X.basis_class(1) + Rational(2) * X.one();
        CohClass beta = X.basis_class(1) + X.point();
        auto start = apply_heisenberg(X, -1, beta, vac());
        auto lhs = apply_chern(X, 0, alpha, start, 5);
        auto rhs = apply_heisenberg(X, -1, X.cup(alpha, beta), vac());
        CHECK(lhs == rhs);
    }
    SurfaceModel X = SurfaceModel::preset("kpos");
    CHECK(apply_chern(X, 0, X.point(), vac(), 5).empty());
}

TEST_CASE("higher chern operators guard the unknown constants") {
    SurfaceModel Xk = SurfaceModel::preset("kpos");
    SurfaceModel X0 = SurfaceModel::preset("two-class");
    // point class is always fine: K.x = 0 in degree > 4
    CHECK_NOTHROW(check_chern_admissible(Xk, 3, Xk.point()));
    // K != 0 with alpha = 1_X is refused for k >= 2 and the message names them
    try {
        check_chern_admissible(Xk, 2, Xk.one());
        CHECK(false);
    } catch (const AdmissibilityError& e) {
        std::string msg = e.what();
        CHECK(msg.find("g_{1,lambda}") != std::string::npos);
        CHECK(msg.find("g_{2,lambda}") != std::string::npos);
    }
    // K = 0 models admit every k
    CHECK_NOTHROW(check_chern_admissible(X0, 4, X0.one()));
}

TEST_CASE("vertex operator on the vacuum creates the expected weight-1 term") {
    SurfaceModel X = SurfaceModel::preset("kpos");
    auto img = apply_w(X, 0, vac_series(4, 1), 4);
    // Gamma_+ is the identity on |0>; weight-1 piece is z a_{-1}(1_X - K_X)|0>
    CohClass lk = X.one() - X.canonical();
    for (auto& [idx, comp] : X.decompose(lk)) {
        CreationMonomial m;
        m.insert(1, idx);
        auto it = img.find(m);
        REQUIRE(it != img.end());
        CHECK(it->second == ZQSeries::monomial(4, 1, 0, {1}, comp));
    }
    // vacuum coefficient stays 1
    CHECK(img.at(CreationMonomial{}) == ZQSeries::one(4, 1));
}

TEST_CASE("the two halves of W commute exactly for its classes") {
    // <-1_X, 1_X - K_X> = 0, so the exchange relation has no binomial factor
    SurfaceModel X = SurfaceModel::preset("kpos");
    CohClass minus_one = Rational(-1) * X.one();
    CohClass lk = X.one() - X.canonical();
    FockVec<ZQSeries> v;
    CreationMonomial m;
    m.insert(1, X.r() + 1);
    m.insert(2, 0);
    v.emplace(m, ZQSeries::one(0, 2));
    const int cap = 3;
    auto pm = apply_gamma_plus(X, minus_one, 0, apply_gamma_minus(X, lk, 1, v, cap), cap);
    auto mp = apply_gamma_minus(X, lk, 1, apply_gamma_plus(X, minus_one, 0, v, cap), cap);
    CHECK(pm == mp);
}

TEST_CASE("bare trace reproduces the Euler product") {
    for (const auto& name : {"minimal", "two-class", "three-class"}) {
        SurfaceModel X = SurfaceModel::preset(name);
        FockSpace fs(X);
        ZQSeries tr = oracle_f(X, fs, {}, {}, 6);
        CHECK(tr.z_free());
        CHECK(tr.coe_z0() == euler_pow(-X.chi(), 6));
    }
}

TEST_CASE("F series examples") {
    SurfaceModel X = SurfaceModel::preset("kpos");
    FockSpace fs(X);
    // F_0^{1_X} = q d/dq of the Euler product power
    ZQSeries f0 = oracle_f(X, fs, {0}, {X.one()}, 6);
    CHECK(f0.z_free());
    CHECK(f0.coe_z0() == euler_pow(-X.chi(), 6).q_ddq());
    // F_1^x vanishes by degree
    ZQSeries f1x = oracle_f(X, fs, {1}, {X.point()}, 5);
    CHECK(f1x.is_zero());
}

TEST_CASE("bare trace of a single normalized product") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    FockSpace fs(X);
    // e_X.x = 0 kills the trace
    ZQSeries t1 = oracle_trace_product(X, fs, {GenPartition::of({-1, 1})}, {X.point()}, false, 5);
    CHECK(t1.is_zero());
    // alpha = 1_X gives -chi q/(1-q) times the Euler product power
    ZQSeries t2 = oracle_trace_product(X, fs, {GenPartition::of({-1, 1})}, {X.one()}, false, 5);
    ZQSeries expect = euler_pow(-X.chi(), 5) * block(1, 1, 1, 0, 5).scaled(-X.chi());
    CHECK(t2 == expect);
    // general part size n: -chi n q^n/(1-q^n)
    ZQSeries t3 = oracle_trace_product(X, fs, {GenPartition::of({-3, 3})}, {X.one()}, false, 5);
    CHECK(t3 == euler_pow(-X.chi(), 5) * block(3, 1, 1, 0, 5).scaled(-3 * X.chi()));
}

TEST_CASE("unbalanced products carry a single z power under W") {
    SurfaceModel X = SurfaceModel::preset("kpos");
    FockSpace fs(X);
    GenPartition lam = GenPartition::of({-2});
    ZQSeries tr = oracle_trace_product(X, fs, {lam}, {X.point()}, true, 4);
    for (auto& [k, c] : tr.terms()) CHECK(k.z == std::vector<int>{-2});
    CHECK_FALSE(tr.is_zero());
}

TEST_CASE("ch series expansion and admissibility") {
    SurfaceModel X0 = SurfaceModel::preset("two-class");
    FockSpace fs0(X0);
    // ch_0 has only the G_0(1_X) term: the number-of-points series
    ZQSeries ch0 = series_ch(X0, fs0, {"L1"}, {0}, false, 5);
    ZQSeries f0 = oracle_f(X0, fs0, {0}, {X0.one()}, 5);
    CHECK(ch0 == f0);
    // K = 0 admits every k
    CHECK_NOTHROW(series_ch(X0, fs0, {"L1"}, {3}, false, 3));
    // K != 0 refuses k >= 2
    SurfaceModel Xk = SurfaceModel::preset("kpos");
    FockSpace fsk(Xk);
    CHECK_THROWS_AS(series_ch(Xk, fsk, {"L1"}, {2}, false, 3), AdmissibilityError);
    // reduced version divides by the generating function
    ZQSeries red = series_ch(X0, fs0, {"L1"}, {0}, true, 5);
    CHECK(red.coe_z0() == f0.coe_z0() * euler_pow(X0.chi(), 5));
}

TEST_CASE("ch series with two factors sums the expansion grid") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    FockSpace fs(X);
    // ch_1(L1) ch_1(L2): each factor expands as G_1(1_X) + G_0(L), so the
    // series is the four-term sum of F series
    ZQSeries s = series_ch(X, fs, {"L1", "L2"}, {1, 1}, false, 4);
    CohClass one = X.one(), l1 = X.line_bundle("L1"), l2 = X.line_bundle("L2");
    ZQSeries manual = oracle_f(X, fs, {1, 1}, {one, one}, 4) + oracle_f(X, fs, {1, 0}, {one, l2}, 4) +
                      oracle_f(X, fs, {0, 1}, {l1, one}, 4) + oracle_f(X, fs, {0, 0}, {l1, l2}, 4);
    CHECK(s == manual);
}

TEST_CASE("trace ignores the off-diagonal weight components") {
    // a creation-only factor shifts every weight, so the bare trace vanishes
    SurfaceModel X = SurfaceModel::preset("minimal");
    FockSpace fs(X);
    ZQSeries tr = oracle_trace_product(X, fs, {GenPartition::of({-1})}, {X.point()}, false, 4);
    CHECK(tr.is_zero());
}
