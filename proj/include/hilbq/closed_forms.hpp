#pragma once

#include "hilbq/partitions.hpp"
#include "hilbq/surface.hpp"
#include "hilbq/zqseries.hpp"

namespace hilbq {

// One slot of a nested-sum signature: contributes
//   n^npow * q^{n*qpow} / (1-q^n)^w
// at summation index n, with the z-balance of the slot given by its weight w.
struct BracketSlot {
    int w = 1;     // weight
    int qpow = 0;  // power of q^n carried by the slot
    int npow = 0;  // polynomial factor n^npow
};

// Signature of a multiple q-zeta bracket: S-slots sum over a strictly
// decreasing chain n_1 > ... > n_a (z-exponent +n_i w_i), T-slots over a
// strictly decreasing chain m_1 > ... > m_b (z-exponent -m_j w_j). The
// bracket below is the coefficient of z^0, i.e. the sum restricted to
// sum n_i w_i = sum m_j w_j.
struct BracketSignature {
    std::vector<BracketSlot> S;
    std::vector<BracketSlot> T;
};

// Balanced nested sum of the signature, truncated at qmax. Every S slot must
// carry qpow >= 1, which makes the enumeration finite.
ZQSeries mzv_bracket(const BracketSignature& sig, int qmax);

// sum over ordered pairs of compositions (s_1..s_a), (t_1..t_b) with
// sum s + sum t = total of prod (-1)^{s_i}/s_i! * prod 1/t_j! * bracket.
// This is the composition-indexed core shared by several closed forms.
ZQSeries bracket_composition_sum(int total, int qmax);

enum class ThetaRoute { Compositions, GenPartitions };

// Theta series of weight k+2 attached to alpha, with the z^0 coefficient
// already extracted. The two routes expand the same sum by compositions or
// by balanced generalized partitions and must agree exactly.
ZQSeries theta(const SurfaceModel& X, const CohClass& alpha, int k, int qmax, ThetaRoute route);

// Closed form for the degree-0 series F_0^alpha.
ZQSeries closed_f0(const SurfaceModel& X, const CohClass& alpha, int qmax);

// Closed form for F_1^alpha; requires e_X.alpha = 0.
ZQSeries closed_f1(const SurfaceModel& X, const CohClass& alpha, int qmax);

// Closed form for F_k^alpha with alpha = c * x (point class multiples);
// vanishes for odd k by cancellation.
ZQSeries closed_fk_point(const Rational& c, int k, int chi, int qmax);

// <ch_1^L> with e_X = 0, as a formula in the pairings <K,L> and <K,K>.
ZQSeries closed_ch1(const Rational& kl, const Rational& kk, int qmax);

// <ch_k^L>' on an abelian surface (chi = 0, K = 0), k >= 2, as a formula in
// <L,L>; vanishes for odd k.
ZQSeries closed_chk_abelian(const Rational& ll, int k, int qmax);

// Closed form for the vertex-weighted trace of a single normalized
// Heisenberg product Tr q^d W(z) a_lambda(alpha)/lambda!: the leading
// product over parts plus the Euler-class correction over matched parts,
// carrying the z^{|lambda|} prefactor. One z variable.
ZQSeries closed_w_trace(const SurfaceModel& X, const GenPartition& lam, const CohClass& alpha, int qmax);

// Table of the universal constants attached to hook-shaped partitions
// (i, 1^j), plus the families extracted from trace data.
struct ConstantsTable {
    struct Row {
        Rational value;
        bool seeded = false;  // true: from the known closed list; false: computed
    };
    int imax = 0;
    int jmax = 0;
    int qmax = 0;
    std::map<std::pair<int, int>, Row> b;  // (i, j) -> b_{(i,1^j)}
    std::map<int, ZQSeries> B;             // i -> sum_j btilde_{(i,1^j)} q^{i+j}

    // btilde_{(i,1^j)}: (j+1) b_{(1^{j+1})} for i = 1, b_{(i,1^j)} otherwise.
    Rational btilde(int i, int j) const;
    std::string to_json_text() const;
    std::string to_csv_text() const;
};

// Seeds the i = 1 row from sigma_1 and computes every row i in [2, imax] by
// the hook-length recursion; even-i rows come out as exact zeros of the
// computation rather than by fiat.
ConstantsTable b_table(int imax, int jmax);

enum class InnerRoute { Collapsed, Expanded };

// Evaluation of F^{x,...,x}_{k_1..k_N} from the constants table. The inner
// sum over repeated hooks is either collapsed to a power of the generating
// series B_s or enumerated term by term; the two must agree.
ZQSeries fqxk_eval(const std::vector<int>& ks, const ConstantsTable& table, int chi, int qmax,
                   InnerRoute route = InnerRoute::Collapsed);

// Extraction of the degree-two hook families from trace data. Inputs are
// the reduced series (multiplied by the Euler product to the power chi):
//   f1red_chi0_*: F^{1_X}_1 extrapolated to chi = 0 for two values of <K,K>;
//   reducedFL1:   F^L_1 on a model with <L,K> != 0.
struct ConstantsExtraction {
    ZQSeries gseries{0, 0}, hseries{0, 0}, fseriesA{0, 0};  // g, h and the chi=0 f-tilde input at kkA
    std::vector<Rational> g, h, g_plus_h;                   // coefficients at q^{2+j}
};
ConstantsExtraction extract_constants(const ZQSeries& f1red_chi0_A, const Rational& kkA,
                                      const ZQSeries& f1red_chi0_B, const Rational& kkB,
                                      const ZQSeries& reducedFL1, const Rational& LK, int qmax);

}  // namespace hilbq
