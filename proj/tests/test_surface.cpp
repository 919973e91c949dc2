#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "hilbq/surface.hpp"

using namespace hilbq;

namespace {

Rational det(std::vector<std::vector<Rational>> m) {
    const size_t n = m.size();
    Rational d = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (size_t row = col + 1; row < n; ++row) {
            if (m[row][col] == 0) continue;
            Rational f = m[row][col] / m[col][col];
            for (size_t j = col; j < n; ++j) m[row][j] -= f * m[col][j];
        }
    }
    return d;
}

}  // namespace

TEST_CASE("cup products and pairing") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    CohClass alpha = X.basis_class(1) + Rational(3) * X.point();
    CHECK(X.cup(X.one(), alpha) == alpha);
    CHECK(X.cup(X.canonical(), X.point()).is_zero());  // degree 6 vanishes
    CHECK(X.pair(X.basis_class(1), X.basis_class(1)) == 1);
    CHECK(X.pair(X.basis_class(2), X.basis_class(2)) == -1);
    CHECK(X.pair(X.basis_class(1), X.basis_class(2)) == 0);
    CHECK(X.pair(X.one(), X.point()) == 1);
    CHECK(X.pair(X.one(), X.one()) == 0);

    SurfaceModel Xk = SurfaceModel::preset("kpos");
    CHECK(X.cup(X.euler_class(), alpha).is_zero());  // e_X kills degree >= 2
    CHECK(Xk.pair(Xk.canonical(), Xk.canonical()) == 1);
}

TEST_CASE("chi and euler class are derived") {
    CHECK(SurfaceModel::preset("minimal").chi() == 3);
    CHECK(SurfaceModel::preset("two-class").chi() == 4);
    CHECK(SurfaceModel::preset("three-class").chi() == 5);
    SurfaceModel X = SurfaceModel::preset("minimal");
    CHECK(X.euler_class() == Rational(3) * X.point());
}

TEST_CASE("diagonal of the point class") {
    SurfaceModel X = SurfaceModel::preset("kpos");
    auto d = X.diagonal_basis(2, X.point());
    REQUIRE(d.size() == 1);
    CHECK(d[0].first == 1);
    CHECK(d[0].second == std::vector<int>{2, 2});  // x tensor x
}

TEST_CASE("diagonal of 1_X pairs dual classes") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    auto d = X.diagonal_basis(2, X.one());
    // 1 x x + x x 1 + sum (P^{-1})_{ab} e_a x e_b; check duality by pairing
    Rational trace = 0;
    for (auto& [c, tup] : d) trace += c * X.pair(X.basis_class(tup[0]), X.basis_class(tup[1]));
    CHECK(trace == Rational(X.chi()));
    // middle terms contract to the identity: sum_b (P^{-1})_{ab} <e_b, e_c> = delta
    for (int a = 1; a <= X.r(); ++a)
        for (int c2 = 1; c2 <= X.r(); ++c2) {
            Rational s = 0;
            for (auto& [c, tup] : d)
                if (tup[0] == a) s += c * X.pair(X.basis_class(tup[1]), X.basis_class(c2));
            // <slot2 dual of e_a, e_c> should be delta_{a,c}
            CHECK(s == (a == c2 ? Rational(1) : Rational(0)));
        }
}

TEST_CASE("diagonal is coassociative") {
    for (const auto& name : {"minimal", "two-class", "kpos"}) {
        SurfaceModel X = SurfaceModel::preset(name);
        // (tau_2 x 1) tau_2 and (1 x tau_2) tau_2 on 1_X, expanded to triples
        std::map<std::vector<int>, Rational> left, right;
        for (auto& [c, tup] : X.diagonal_basis(2, X.one())) {
            for (auto& [c2, tup2] : X.diagonal_basis(2, X.basis_class(tup[0])))
                left[{tup2[0], tup2[1], tup[1]}] += c * c2;
            for (auto& [c2, tup2] : X.diagonal_basis(2, X.basis_class(tup[1])))
                right[{tup[0], tup2[0], tup2[1]}] += c * c2;
        }
        for (auto it = left.begin(); it != left.end();)
            it = (it->second == 0) ? left.erase(it) : std::next(it);
        for (auto it = right.begin(); it != right.end();)
            it = (it->second == 0) ? right.erase(it) : std::next(it);
        CHECK(left == right);
        // and both match the built-in length-3 expansion
        std::map<std::vector<int>, Rational> built;
        for (auto& [c, tup] : X.diagonal_basis(3, X.one())) built[tup] += c;
        CHECK(left == built);
    }
}

TEST_CASE("counit reconstructs the class") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    std::vector<CohClass> samples = {X.one(), X.point(), X.basis_class(1),
                                     X.basis_class(1) + Rational(2) * X.point() + Rational(-3) * X.one()};
    for (const auto& alpha : samples) {
        CohClass rec = X.zero_class();
        for (auto& [c, tup] : X.diagonal_basis(2, alpha)) {
            // integrate the second slot
            Rational integral = X.pair(X.one(), X.basis_class(tup[1]));
            rec = rec + (c * integral) * X.basis_class(tup[0]);
        }
        CHECK(rec == alpha);
    }
}

TEST_CASE("full pairing is nondegenerate") {
    for (const auto& name : SurfaceModel::preset_names()) {
        SurfaceModel X = SurfaceModel::preset(name);
        CHECK(det(X.full_pairing()) != 0);
    }
}

TEST_CASE("model json round trip and validation") {
    SurfaceModel X = SurfaceModel::preset("kpos");
    SurfaceModel back = SurfaceModel::from_json_text(X.to_json_text());
    CHECK(back.r() == X.r());
    CHECK(back.pairing_matrix() == X.pairing_matrix());
    CHECK(back.canonical() == X.canonical());
    CHECK(back.line_bundle("L1") == X.line_bundle("L1"));

    // singular pairing is rejected
    CHECK_THROWS_AS(SurfaceModel::from_json_text(R"({"r":2,"P":[1,1,1,1],"K":[0,0]})"), ModelError);
    // non-symmetric pairing is rejected
    CHECK_THROWS_AS(SurfaceModel::from_json_text(R"({"r":2,"P":[1,2,3,1],"K":[0,0]})"), ModelError);
    // rational entries parse
    SurfaceModel Y = SurfaceModel::from_json_text(
        R"({"r":1,"P":["2/3"],"K":["1/2"],"lineBundles":{"M":["3"]}})");
    CHECK(Y.pair(Y.canonical(), Y.canonical()) == rat(1, 6));
    CHECK(Y.pair(Y.line_bundle("M"), Y.canonical()) == 1);
}

TEST_CASE("one_minus_k_pow expands with binomials") {
    SurfaceModel X = SurfaceModel::preset("kpos");
    CohClass p3 = X.one_minus_k_pow(3);
    CHECK(p3.c0 == 1);
    CHECK(p3.c2[0] == -3);
    CHECK(p3.c4 == 3);  // C(3,2) <K,K> = 3
    CHECK(X.one_minus_k_pow(0) == X.one());
}

TEST_CASE("homogeneous degree detection") {
    SurfaceModel X = SurfaceModel::preset("minimal");
    CHECK(X.one().degree() == 0);
    CHECK(X.basis_class(1).degree() == 2);
    CHECK(X.point().degree() == 4);
    CHECK_THROWS_AS((X.one() + X.point()).degree(), ModelError);
}
