#include "hilbq/operators.hpp"

#include <sstream>

namespace hilbq {

void check_chern_admissible(const SurfaceModel& X, int k, const CohClass& alpha) {
    if (k < 0) throw AdmissibilityError("chern operator: k must be >= 0");
    if (k <= 1) return;
    if (!X.cup(X.canonical(), alpha).is_zero()) {
        std::ostringstream os;
        os << "chern operator: k = " << k << " with K_X.alpha != 0 depends on the undetermined "
           << "universal constants g_{1,lambda} (and g_{2,lambda} through K_X^2.alpha); "
           << "only k <= 1 or K_X.alpha = 0 is computable";
        throw AdmissibilityError(os.str());
    }
}

namespace {

// Coefficient of the multiset {n^{m_n}} in exp(sum_n t_n a/n) expansions:
// prod_n 1/(n^{m_n} m_n!).
Rational exp_multiset_coeff(const std::vector<int>& parts) {
    Rational c = 1;
    for (size_t i = 0; i < parts.size();) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        unsigned m = unsigned(j - i);
        Rational nn = 1;
        for (unsigned t = 0; t < m; ++t) nn *= parts[i];
        c /= nn * Rational(factorial(m));
        i = j;
    }
    return c;
}

FockVec<ZQSeries> apply_gamma(const SurfaceModel& X, int dir, const CohClass& gamma, int zslot,
                              const FockVec<ZQSeries>& v, int cap) {
    FockVec<ZQSeries> out = v;  // weight-0 term of the exponential
    if (v.empty()) return out;
    const int nz = v.begin()->second.nz();
    for (int w = 1; w <= cap; ++w) {
        for (const auto& mu : partitions_of(w)) {
            if (mu.empty()) continue;
            Rational coeff = exp_multiset_coeff(mu);
            FockVec<ZQSeries> cur = v;
            for (int n : mu) {
                cur = apply_heisenberg(X, dir * n, gamma, cur);
                if (cur.empty()) break;
            }
            if (cur.empty()) continue;
            std::vector<int> dz(nz, 0);
            dz.at(zslot) = -dir * w;  // creation carries z^{+w}, annihilation z^{-w}
            for (auto& [m, c] : cur) fock_add(out, m, c.shifted(0, dz, coeff));
        }
    }
    return out;
}

}  // namespace

FockVec<ZQSeries> apply_gamma_minus(const SurfaceModel& X, const CohClass& gamma, int zslot,
                                    const FockVec<ZQSeries>& v, int cap) {
    return apply_gamma(X, -1, gamma, zslot, v, cap);
}

FockVec<ZQSeries> apply_gamma_plus(const SurfaceModel& X, const CohClass& gamma, int zslot,
                                   const FockVec<ZQSeries>& v, int cap) {
    return apply_gamma(X, +1, gamma, zslot, v, cap);
}

FockVec<ZQSeries> apply_w(const SurfaceModel& X, int zslot, const FockVec<ZQSeries>& v, int cap) {
    CohClass minus_one = Rational(-1) * X.one();
    CohClass lk = X.one() - X.canonical();
    auto mid = apply_gamma_plus(X, minus_one, zslot, v, cap);
    return apply_gamma_minus(X, lk, zslot, mid, cap);
}

namespace {

// Applies the factor list (rightmost first) to the single monomial u.
FockVec<Rational> apply_factors(const SurfaceModel& X, const std::vector<TraceFactor>& factors,
                                const CreationMonomial& u, int qmax) {
    FockVec<Rational> cur{{u, Rational(1)}};
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        if (cur.empty()) break;
        if (const auto* cf = std::get_if<ChernFactor>(&*it)) {
            cur = apply_chern(X, cf->k, cf->alpha, cur, qmax);
        } else {
            const auto& lf = std::get<LambdaFactor>(*it);
            cur = apply_a_lambda(X, lf.lam, lf.alpha, cur);
            cur = fock_scale(cur, Rational(1) / Rational(lf.lam.factorial()));
        }
    }
    return cur;
}

// Sub-multisets of the point-class factors of v, with binomial weights:
// these are exactly the contractions of Gamma_+(-1_X, z) against v. Each
// entry is (remaining monomial, multiplicity, removed weight).
struct Core {
    CreationMonomial rest;
    Rational coeff;
    int removed;
};

std::vector<Core> gamma_plus_cores(const SurfaceModel& X, const CreationMonomial& v) {
    const int xIdx = X.r() + 1;
    std::vector<std::pair<int, int>> xgroups;  // (part size, count)
    for (size_t i = 0; i < v.parts.size();) {
        size_t j = i;
        while (j < v.parts.size() && v.parts[j] == v.parts[i]) ++j;
        if (v.parts[i].second == xIdx) xgroups.emplace_back(v.parts[i].first, int(j - i));
        i = j;
    }
    std::vector<Core> out;
    std::vector<int> pick(xgroups.size(), 0);
    for (;;) {
        Rational c = 1;
        CreationMonomial rest = v;
        int removed = 0;
        for (size_t g = 0; g < xgroups.size(); ++g) {
            auto [n, avail] = xgroups[g];
            int m = pick[g];
            if (m) {
                c *= Rational(binom(unsigned(avail), unsigned(m)));
                removed += n * m;
                CreationMonomial sub;
                for (int t = 0; t < m; ++t) sub.insert(n, xIdx);
                rest = rest.minus(sub);
            }
        }
        out.push_back(Core{std::move(rest), c, removed});
        size_t g = 0;
        while (g < xgroups.size() && pick[g] == xgroups[g].second) pick[g++] = 0;
        if (g == xgroups.size()) break;
        ++pick[g];
    }
    return out;
}

// Coefficient with which Gamma_-(1_X - K_X, z) creates exactly the factor
// multiset d on top of a core: prod over part sizes n of
// (1/n^{m_n}) * prod_b gamma_b^{m_{n,b}} / m_{n,b}!  with gamma = 1_X - K_X.
Rational gamma_minus_create_coeff(const SurfaceModel& X, const CreationMonomial& d) {
    const int xIdx = X.r() + 1;
    const CohClass gamma = X.one() - X.canonical();
    Rational c = 1;
    for (size_t i = 0; i < d.parts.size();) {
        size_t j = i;
        while (j < d.parts.size() && d.parts[j] == d.parts[i]) ++j;
        auto [n, b] = d.parts[i];
        unsigned m = unsigned(j - i);
        if (b == xIdx) return 0;  // gamma has no point component
        Rational comp = (b == 0) ? gamma.c0 : gamma.c2[size_t(b - 1)];
        if (comp == 0) return 0;
        Rational nn = 1;
        for (unsigned t = 0; t < m; ++t) nn *= Rational(n);
        Rational cm = 1;
        for (unsigned t = 0; t < m; ++t) cm *= comp;
        c *= cm / (nn * Rational(factorial(m)));
        i = j;
    }
    return c;
}

}  // namespace

ZQSeries trace_product(const SurfaceModel& X, const FockSpace& fs, const std::vector<TraceFactor>& factors,
                       bool withW, int qmax) {
    for (const auto& f : factors)
        if (const auto* cf = std::get_if<ChernFactor>(&f)) check_chern_admissible(X, cf->k, cf->alpha);
    const int nz = withW ? 1 : 0;
    ZQSeries total = ZQSeries::zero(qmax, nz);
    std::mutex total_mu;
    for (int n = 0; n <= qmax; ++n) {
        const auto& bs = fs.basis(n);
        parallel_for(bs.size(), [&](std::size_t i) {
            const CreationMonomial& u = bs[i];
            FockVec<Rational> g = apply_factors(X, factors, u, qmax);
            if (g.empty()) return;
            ZQSeries local = ZQSeries::zero(qmax, nz);
            if (!withW) {
                auto it = g.find(u);
                if (it != g.end()) local.add_term(n, {}, it->second);
            } else {
                for (auto& [v, cv] : g) {
                    int zexp = n - v.weight();
                    for (const auto& core : gamma_plus_cores(X, v)) {
                        if (!u.contains(core.rest)) continue;
                        CreationMonomial d = u.minus(core.rest);
                        Rational cc = gamma_minus_create_coeff(X, d);
                        if (cc == 0) continue;
                        local.add_term(n, {zexp}, cv * core.coeff * cc);
                    }
                }
            }
            if (!local.is_zero()) {
                std::lock_guard<std::mutex> lk(total_mu);
                total += local;
            }
        });
    }
    return total;
}

ZQSeries oracle_f(const SurfaceModel& X, const FockSpace& fs, const std::vector<int>& ks,
                  const std::vector<CohClass>& alphas, int qmax) {
    if (ks.size() != alphas.size()) throw FockError("oracle_f: ks/alphas size mismatch");
    std::vector<TraceFactor> factors;
    for (size_t i = 0; i < ks.size(); ++i) factors.push_back(ChernFactor{ks[i], alphas[i]});
    return trace_product(X, fs, factors, /*withW=*/true, qmax);
}

ZQSeries oracle_trace_product(const SurfaceModel& X, const FockSpace& fs,
                              const std::vector<GenPartition>& lams, const std::vector<CohClass>& alphas,
                              bool withW, int qmax) {
    if (lams.size() != alphas.size()) throw FockError("oracle_trace_product: size mismatch");
    std::vector<TraceFactor> factors;
    for (size_t i = 0; i < lams.size(); ++i) factors.push_back(LambdaFactor{lams[i], alphas[i]});
    return trace_product(X, fs, factors, withW, qmax);
}

ZQSeries series_ch(const SurfaceModel& X, const FockSpace& fs, const std::vector<std::string>& Ls,
                   const std::vector<int>& ks, bool reduced, int qmax) {
    if (Ls.size() != ks.size()) throw FockError("series_ch: Ls/ks size mismatch");
    const size_t N = ks.size();
    // per position: the Grothendieck-Riemann-Roch expansion of ch_k(L^[n])
    std::vector<std::vector<std::pair<int, CohClass>>> options(N);
    for (size_t i = 0; i < N; ++i) {
        CohClass L = X.line_bundle(Ls[i]);
        options[i].push_back({ks[i], X.one()});
        if (ks[i] >= 1) options[i].push_back({ks[i] - 1, L});
        if (ks[i] >= 2) options[i].push_back({ks[i] - 2, rat(1, 2) * X.cup(L, L)});
        for (auto& [k, a] : options[i]) check_chern_admissible(X, k, a);
    }
    ZQSeries total = ZQSeries::zero(qmax, 1);
    std::vector<size_t> choice(N, 0);
    for (;;) {
        std::vector<int> kk(N);
        std::vector<CohClass> aa;
        for (size_t i = 0; i < N; ++i) {
            kk[i] = options[i][choice[i]].first;
            aa.push_back(options[i][choice[i]].second);
        }
        total += oracle_f(X, fs, kk, aa, qmax);
        size_t i = 0;
        while (i < N && choice[i] + 1 == options[i].size()) choice[i++] = 0;
        if (i == N) break;
        ++choice[i];
    }
    if (reduced) total *= euler_pow(X.chi(), qmax).lifted(1);
    return total;
}

}  // namespace hilbq
