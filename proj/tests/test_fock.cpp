#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>

#include "doctest.h"
#include "hilbq/fock.hpp"

using namespace hilbq;

namespace {

FockVec<Rational> vac() { return {{CreationMonomial{}, Rational(1)}}; }

FockVec<Rational> mono(std::initializer_list<std::pair<int, int>> parts, Rational c = 1) {
    CreationMonomial m;
    for (auto& [n, b] : parts) m.insert(n, b);
    return {{m, c}};
}

// independent oracle: colored partitions of n with B colors per part
long colored_partitions(int n, int maxPart, int colors) {
    if (n == 0) return 1;
    long total = 0;
    // choose the multiset of parts, then count color multisets per part size
    std::function<long(int, int)> rec = [&](int rem, int mp) -> long {
        if (rem == 0) return 1;
        long acc = 0;
        for (int p = std::min(rem, mp); p >= 1; --p) {
            // take k copies of part p, color them as a multiset
            for (int k = 1; p * k <= rem; ++k) {
                // multichoose(colors, k)
                long ways = 1;
                for (int t = 0; t < k; ++t) ways = ways * (colors + t) / (t + 1);
                acc += ways * rec(rem - p * k, p - 1);
            }
        }
        return acc;
    };
    total = rec(n, maxPart);
    return total;
}

}  // namespace

TEST_CASE("heisenberg action on monomials") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    const int xI = X.r() + 1;

    // a_1(alpha) a_{-1}(beta)|0> = -<alpha,beta>|0>
    CohClass alpha = X.basis_class(1) + Rational(2) * X.point();
    CohClass beta = X.basis_class(1) + X.one();
    auto v = apply_heisenberg(X, -1, beta, vac());
    auto w = apply_heisenberg(X, 1, alpha, v);
    CHECK(w == fock_scale(vac(), -X.pair(alpha, beta)));

    // annihilators kill the vacuum
    CHECK(apply_heisenberg(X, 2, alpha, vac()).empty());

    // creations stack up
    auto two = apply_heisenberg(X, -2, X.one(), apply_heisenberg(X, -1, X.point(), vac()));
    CHECK(two == mono({{1, xI}, {2, 0}}));
}

TEST_CASE("normalized products via the diagonal") {
    SurfaceModel X = SurfaceModel::preset("kpos");
    const int xI = X.r() + 1;

    // annihilator acts first: a_{(-1,1)}(x) kills |0>
    CHECK(apply_a_lambda(X, GenPartition::of({-1, 1}), X.point(), vac()).empty());

    // (a_{-1} a_{-1})(x) |0> = a_{-1}(x) a_{-1}(x) |0>
    auto d = apply_a_lambda(X, GenPartition::of({-1, -1}), X.point(), vac());
    CHECK(d == mono({{1, xI}, {1, xI}}));

    // a_{(-1,1)}(alpha) on a_{-1}(beta)|0> agrees with the commutator route:
    // the only surviving term is -a_{-1}(alpha beta)|0>
    for (const auto& name : {"kpos", "two-class"}) {
        SurfaceModel Y = SurfaceModel::preset(name);
        CohClass alpha = Y.basis_class(1) + Rational(3) * Y.one();
        CohClass beta = Y.basis_class(1);
        auto start = apply_heisenberg(Y, -1, beta, vac());
        auto lhs = apply_a_lambda(Y, GenPartition::of({-1, 1}), alpha, start);
        // commutator route: a_{-1}(g1) [a_1(g2), a_{-1}(beta)] |0>
        FockVec<Rational> rhs;
        for (auto& [c, tup] : Y.diagonal_basis(2, alpha)) {
            Rational f = Rational(-1) * Y.pair(Y.basis_class(tup[1]), beta) * c;
            for (auto& [m, cc] : apply_heisenberg(Y, -1, Y.basis_class(tup[0]), vac()))
                fock_add(rhs, m, Rational(cc * f));
        }
        CHECK(lhs == rhs);
        // and equals -a_{-1}(alpha beta)|0>
        auto direct = fock_scale(apply_heisenberg(Y, -1, Y.cup(alpha, beta), vac()), -1);
        CHECK(lhs == direct);
    }
}

TEST_CASE("fock pairing via the adjoint rule") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    CohClass alpha = X.basis_class(1) + X.basis_class(2);
    CohClass beta = Rational(2) * X.basis_class(1);

    auto u = apply_heisenberg(X, -1, alpha, vac());
    auto w = apply_heisenberg(X, -1, beta, vac());
    CHECK(fock_pair(X, u, w) == X.pair(alpha, beta));

    auto a = apply_heisenberg(X, -2, X.one(), vac());
    auto b = apply_heisenberg(X, -2, X.point(), vac());
    CHECK(fock_pair(X, a, b) == -2);

    CHECK(fock_pair(X, vac(), vac()) == 1);
    // weight mismatch pairs to zero
    CHECK(fock_pair(X, u, b) == 0);
}

TEST_CASE("gram matrices are symmetric and dual bases invert them") {
    for (const auto& name : {"minimal", "two-class", "kpos"}) {
        SurfaceModel X = SurfaceModel::preset(name);
        FockSpace fs(X);
        for (int n = 0; n <= 3; ++n) {
            const auto& bs = fs.basis(n);
            const auto& g = fs.gram(n);
            const auto& duals = fs.dual_basis(n);
            REQUIRE(g.size() == bs.size());
            for (size_t i = 0; i < bs.size(); ++i)
                for (size_t j = 0; j < bs.size(); ++j) {
                    CHECK(g[i][j] == g[j][i]);
                    FockVec<Rational> ui{{bs[i], Rational(1)}};
                    CHECK(fock_pair(X, ui, duals[j]) == (i == j ? Rational(1) : Rational(0)));
                }
        }
    }
}

TEST_CASE("weight-block dimensions match colored partitions") {
    for (const auto& name : {"minimal", "two-class", "three-class"}) {
        SurfaceModel X = SurfaceModel::preset(name);
        FockSpace fs(X);
        for (int n = 0; n <= 6; ++n)
            CHECK(long(fs.basis(n).size()) == colored_partitions(n, n, X.basis_size()));
    }
}

TEST_CASE("trace of identity and of a rank-one operator") {
    SurfaceModel X = SurfaceModel::preset("two-class");
    FockSpace fs(X);
    auto identity = [&](const CreationMonomial& u) {
        return FockVec<ZQSeries>{{u, ZQSeries::one(6, 0)}};
    };
    CHECK(fs.trace_block(identity, 1, 6, 0) == ZQSeries::constant(6, 0, X.chi()));

    // q^d summed over weights reproduces the Euler product power
    ZQSeries total(6, 0);
    for (int n = 0; n <= 6; ++n)
        total += fs.trace_block(identity, n, 6, 0).shifted(n, {}, 1);
    CHECK(total == euler_pow(-X.chi(), 6));

    // a_{-1}(x) a_1(1_X) at weight 1, computed as trace and by hand
    auto op = [&](const CreationMonomial& u) {
        FockVec<Rational> in{{u, Rational(1)}};
        auto mid = apply_heisenberg(X, 1, X.one(), in);
        auto out = apply_heisenberg(X, -1, X.point(), mid);
        FockVec<ZQSeries> res;
        for (auto& [m, c] : out) res.emplace(m, ZQSeries::constant(6, 0, c));
        return res;
    };
    // only u = a_{-1}(x) contributes: a_1(1_X) a_{-1}(x)|0> = -|0>
    CHECK(fs.trace_block(op, 1, 6, 0) == ZQSeries::constant(6, 0, -1));
}

TEST_CASE("pairing against the sum of fundamental classes") {
    SurfaceModel X = SurfaceModel::preset("minimal");
    const int xI = X.r() + 1;
    CHECK(vacuum_to_one(X, mono({{1, xI}})) == 1);
    CHECK(vacuum_to_one(X, mono({{2, xI}})) == 0);
    CHECK(vacuum_to_one(X, vac()) == 1);
    CHECK(vacuum_to_one(X, mono({{1, 0}})) == 0);
    CHECK(vacuum_to_one(X, mono({{1, xI}, {1, xI}}, rat(5, 2))) == rat(5, 2));
}

TEST_CASE("monomial containment and difference") {
    CreationMonomial a;
    a.insert(1, 0);
    a.insert(1, 0);
    a.insert(2, 1);
    CreationMonomial b;
    b.insert(1, 0);
    CHECK(a.contains(b));
    CreationMonomial c = a.minus(b);
    CHECK(c.parts.size() == 2);
    CHECK(c.weight() == 3);
    CreationMonomial d;
    d.insert(3, 0);
    CHECK_FALSE(a.contains(d));
}
