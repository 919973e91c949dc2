#pragma once

#include <variant>

#include "hilbq/fock.hpp"

namespace hilbq {

// Raised when an operator would need the universal constants that are not
// pinned down (the g_{1,lambda}, g_{2,lambda} families).
struct AdmissibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Validates that the degree-k Chern character operator applied to alpha is
// fully determined: k <= 1 always is; k >= 2 needs K_X.alpha = 0 so that the
// terms with unknown coefficients drop out. Throws AdmissibilityError.
void check_chern_admissible(const SurfaceModel& X, int k, const CohClass& alpha);

// Chern character operator G_k(alpha). For k = 0 and k = 1 the full
// expansion in Heisenberg monomials is used; for k >= 2 the normal-ordered
// sum over balanced partitions of length k+2 plus the Euler-class term with
// coefficient (|lambda|^2 - 2)/24. Sums are truncated at positive weight
// qmax, which is exact on states of weight <= qmax.
template <class C>
FockVec<C> apply_chern(const SurfaceModel& X, int k, const CohClass& alpha, const FockVec<C>& v, int qmax);

// Half vertex operators Gamma_-(gamma, z) = exp(sum z^n/n a_{-n}(gamma)) and
// Gamma_+(gamma, z) = exp(sum z^{-n}/n a_n(gamma)); the expansion keeps
// operator terms of total weight <= cap.
FockVec<ZQSeries> apply_gamma_minus(const SurfaceModel& X, const CohClass& gamma, int zslot,
                                    const FockVec<ZQSeries>& v, int cap);
FockVec<ZQSeries> apply_gamma_plus(const SurfaceModel& X, const CohClass& gamma, int zslot,
                                   const FockVec<ZQSeries>& v, int cap);

// W(z) = Gamma_-(1_X - K_X, z) Gamma_+(-1_X, z), the trace-weighting vertex
// operator (the equivariant parameter is fixed to 1).
FockVec<ZQSeries> apply_w(const SurfaceModel& X, int zslot, const FockVec<ZQSeries>& v, int cap);

// One factor of a trace product: either a Chern operator G_k(alpha) or a
// normalized Heisenberg product a_lambda(alpha)/lambda!.
struct ChernFactor {
    int k;
    CohClass alpha;
};
struct LambdaFactor {
    GenPartition lam;
    CohClass alpha;
};
using TraceFactor = std::variant<ChernFactor, LambdaFactor>;

// Tr q^d [W(z)] f_1 ... f_N, the graded trace over weights 0..qmax; factors
// act right to left. With the vertex operator the result is a one-variable
// z-series; without it the result has no z variables.
ZQSeries trace_product(const SurfaceModel& X, const FockSpace& fs, const std::vector<TraceFactor>& factors,
                       bool withW, int qmax);

// F series: Tr q^d W(z) prod_i G_{k_i}(alpha_i). Callers check z-freeness.
ZQSeries oracle_f(const SurfaceModel& X, const FockSpace& fs, const std::vector<int>& ks,
                  const std::vector<CohClass>& alphas, int qmax);

// Tr q^d [W(z)] prod_i a_{lambda^(i)}(alpha_i) / lambda^(i)!.
ZQSeries oracle_trace_product(const SurfaceModel& X, const FockSpace& fs,
                              const std::vector<GenPartition>& lams, const std::vector<CohClass>& alphas,
                              bool withW, int qmax);

// Generating series of products of Chern characters of tautological bundles:
// each ch_k(L^[n]) expands as G_k(1_X) + G_{k-1}(L) + G_{k-2}(L^2/2) and the
// series is the sum of the corresponding F series. reduced=true multiplies
// by the Euler product to the power chi.
ZQSeries series_ch(const SurfaceModel& X, const FockSpace& fs, const std::vector<std::string>& Ls,
                   const std::vector<int>& ks, bool reduced, int qmax);

// ---- template implementation ----

template <class C>
FockVec<C> apply_chern(const SurfaceModel& X, int k, const CohClass& alpha, const FockVec<C>& v, int qmax) {
    check_chern_admissible(X, k, alpha);
    FockVec<C> out;
    auto add_scaled = [&](const FockVec<C>& w, const Rational& c) {
        for (auto& [m, cc] : w) fock_add(out, m, detail::coeff_times(cc, c));
    };
    if (k == 0) {
        // -sum_{n>0} (a_{-n} a_n)(alpha)
        for (int n = 1; n <= qmax; ++n)
            add_scaled(apply_a_lambda(X, GenPartition::of({-n, n}), alpha, v), -1);
        return out;
    }
    if (k == 1) {
        for (const auto& lam : enum_balanced_cached(3, qmax))
            add_scaled(apply_a_lambda(X, lam, alpha, v), Rational(-1) / Rational(lam.factorial()));
        CohClass ka = X.cup(X.canonical(), alpha);
        if (!ka.is_zero())
            for (int n = 1; n <= qmax; ++n)
                add_scaled(apply_a_lambda(X, GenPartition::of({-n, n}), ka, v), rat(-(n - 1), 2));
        return out;
    }
    for (const auto& lam : enum_balanced_cached(k + 2, qmax))
        add_scaled(apply_a_lambda(X, lam, alpha, v), Rational(-1) / Rational(lam.factorial()));
    CohClass ea = X.cup(X.euler_class(), alpha);
    if (!ea.is_zero())
        for (const auto& lam : enum_balanced_cached(k, qmax))
            add_scaled(apply_a_lambda(X, lam, ea, v),
                       Rational(lam.norm_sq() - 2) / (Rational(24) * Rational(lam.factorial())));
    return out;
}

}  // namespace hilbq
