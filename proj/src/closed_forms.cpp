#include "hilbq/closed_forms.hpp"

#include <functional>
#include <sstream>

#include "json.hpp"

namespace hilbq {

namespace {

Rational ipow(const Rational& base, int e) {
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Chain value: prod over slots of n^npow q^{n qpow} / (1-q^n)^w.
ZQSeries chain_series(const std::vector<BracketSlot>& slots, const std::vector<int>& ns, int qmax) {
    ZQSeries s = ZQSeries::one(qmax, 0);
    for (size_t i = 0; i < slots.size(); ++i) {
        s *= block(ns[i], slots[i].w, slots[i].qpow, 0, qmax);
        if (s.is_zero()) break;
        if (slots[i].npow) s = s.scaled(ipow(Rational(ns[i]), slots[i].npow));
    }
    return s;
}

// Enumerates strictly decreasing chains over the slots. The q-budget bounds
// sum n_i qpow_i for S-sides; the balance target bounds sum n_i w_i exactly
// for T-sides (target < 0 means unconstrained balance, q-budget only).
void enum_chains(const std::vector<BracketSlot>& slots, int qbudget, int balance_target,
                 const std::function<void(const std::vector<int>&, int)>& emit) {
    std::vector<int> ns(slots.size());
    std::function<void(size_t, int, int, int)> rec = [&](size_t i, int prev, int qleft, int bal) {
        if (i == slots.size()) {
            if (balance_target < 0 || bal == balance_target) emit(ns, bal);
            return;
        }
        int hi = prev - 1;
        if (slots[i].qpow > 0) hi = std::min(hi, qleft / slots[i].qpow);
        if (balance_target >= 0) hi = std::min(hi, (balance_target - bal) / slots[i].w);
        for (int n = hi; n >= 1; --n) {
            int q2 = qleft - n * slots[i].qpow;
            int b2 = bal + n * slots[i].w;
            if (q2 < 0) continue;
            if (balance_target >= 0 && b2 > balance_target) continue;
            ns[i] = n;
            rec(i + 1, n, q2, b2);
        }
    };
    rec(0, INT32_MAX, qbudget, 0);
}

}  // namespace

ZQSeries mzv_bracket(const BracketSignature& sig, int qmax) {
    for (const auto& s : sig.S)
        if (s.qpow < 1) throw SeriesError("mzv_bracket: S slots need qpow >= 1 for a finite sum");
    for (const auto& s : sig.S)
        if (s.w < 1) throw SeriesError("mzv_bracket: slot weight must be >= 1");
    for (const auto& t : sig.T)
        if (t.w < 1 || t.qpow < 0) throw SeriesError("mzv_bracket: bad T slot");

    // group S-side chains by balance value
    std::map<int, ZQSeries> by_balance;
    enum_chains(sig.S, qmax, -1, [&](const std::vector<int>& ns, int bal) {
        ZQSeries c = chain_series(sig.S, ns, qmax);
        if (c.is_zero()) return;
        auto it = by_balance.find(bal);
        if (it == by_balance.end())
            by_balance.emplace(bal, std::move(c));
        else
            it->second += c;
    });
    if (sig.S.empty()) by_balance.emplace(0, ZQSeries::one(qmax, 0));

    ZQSeries total = ZQSeries::zero(qmax, 0);
    for (auto& [bal, sser] : by_balance) {
        if (sser.is_zero()) continue;
        ZQSeries tser = ZQSeries::zero(qmax, 0);
        if (sig.T.empty()) {
            if (bal == 0) tser = ZQSeries::one(qmax, 0);
        } else {
            enum_chains(sig.T, qmax * 64, bal, [&](const std::vector<int>& ms, int) {
                tser += chain_series(sig.T, ms, qmax);
            });
        }
        if (!tser.is_zero()) total += sser * tser;
    }
    return total;
}

ZQSeries bracket_composition_sum(int total, int qmax) {
    ZQSeries acc = ZQSeries::zero(qmax, 0);
    for (int sw = 1; sw <= total - 1; ++sw) {
        int tw = total - sw;
        for (const auto& scomp : compositions_of(sw)) {
            for (const auto& tcomp : compositions_of(tw)) {
                Rational f = 1;
                BracketSignature sig;
                for (int s : scomp) {
                    f *= Rational((s % 2) ? -1 : 1) / Rational(factorial(unsigned(s)));
                    sig.S.push_back({s, s, 0});
                }
                for (int t : tcomp) {
                    f /= Rational(factorial(unsigned(t)));
                    sig.T.push_back({t, 0, 0});
                }
                acc += mzv_bracket(sig, qmax).scaled(f);
            }
        }
    }
    return acc;
}

ZQSeries theta(const SurfaceModel& X, const CohClass& alpha, int k, int qmax, ThetaRoute route) {
    ZQSeries acc = ZQSeries::zero(qmax, 0);
    if (route == ThetaRoute::Compositions) {
        for (int sw = 1; sw <= k + 1; ++sw) {
            int tw = k + 2 - sw;
            Rational pairing = X.pair(X.one_minus_k_pow(sw), alpha);
            if (pairing == 0) continue;
            for (const auto& scomp : compositions_of(sw)) {
                for (const auto& tcomp : compositions_of(tw)) {
                    Rational f = -pairing;
                    BracketSignature sig;
                    for (int s : scomp) {
                        f *= Rational((s % 2) ? -1 : 1) / Rational(factorial(unsigned(s)));
                        sig.S.push_back({s, s, 0});
                    }
                    for (int t : tcomp) {
                        f /= Rational(factorial(unsigned(t)));
                        sig.T.push_back({t, 0, 0});
                    }
                    acc += mzv_bracket(sig, qmax).scaled(f);
                }
            }
        }
        return acc;
    }
    for (const auto& lam : enum_balanced(k + 2, qmax)) {
        int possum = 0;
        for (auto& [p, m] : lam.mults())
            if (p > 0) possum += m;
        Rational f = -X.pair(X.one_minus_k_pow(possum), alpha);
        if (f == 0) continue;
        ZQSeries s = ZQSeries::one(qmax, 0);
        for (auto& [p, m] : lam.mults()) {
            if (p < 0) continue;
            int in = m, itn = lam.mult(-p);
            f *= Rational((in % 2) ? -1 : 1) / (Rational(factorial(unsigned(in))) * Rational(factorial(unsigned(itn))));
            s *= block(p, in + itn, in, 0, qmax);
        }
        for (auto& [p, m] : lam.mults()) {
            if (p > 0 || lam.mult(-p) > 0) continue;  // negative parts without positive partner
            f /= Rational(factorial(unsigned(m)));
            s *= block(-p, m, 0, 0, qmax);
        }
        acc += s.scaled(f);
    }
    return acc;
}

ZQSeries closed_f0(const SurfaceModel& X, const CohClass& alpha, int qmax) {
    ZQSeries a = ZQSeries::zero(qmax, 0), b = ZQSeries::zero(qmax, 0);
    for (int n = 1; n <= qmax; ++n) {
        a += block(n, 2, 1, 0, qmax);
        b += block(n, 1, 1, 0, qmax).scaled(n);
    }
    ZQSeries inner = a.scaled(X.pair(X.one_minus_k_pow(1), alpha)) + b.scaled(X.pair(X.euler_class(), alpha));
    return euler_pow(-X.chi(), qmax) * inner;
}

ZQSeries closed_f1(const SurfaceModel& X, const CohClass& alpha, int qmax) {
    if (!X.cup(X.euler_class(), alpha).is_zero())
        throw ModelError("closed_f1: requires e_X.alpha = 0");
    CohClass K = X.canonical();
    Rational val = X.pair(K - X.cup(K, K), alpha) / 2;
    ZQSeries inner = ZQSeries::zero(qmax, 0);
    for (int n = 1; n <= qmax; ++n) inner += block(n, 2, 1, 0, qmax).scaled(n - 1);
    inner += mzv_bracket({{{1, 1, 0}}, {{2, 0, 0}}}, qmax);
    inner += mzv_bracket({{{1, 1, 0}}, {{1, 0, 0}, {1, 0, 0}}}, qmax).scaled(2);
    return euler_pow(-X.chi(), qmax) * inner.scaled(val);
}

ZQSeries closed_fk_point(const Rational& c, int k, int chi, int qmax) {
    return euler_pow(-chi, qmax) * bracket_composition_sum(k + 2, qmax).scaled(-c);
}

ZQSeries closed_ch1(const Rational& kl, const Rational& kk, int qmax) {
    ZQSeries sig1 = ZQSeries::zero(qmax, 0), sig_nm1 = ZQSeries::zero(qmax, 0);
    for (int n = 1; n <= qmax; ++n) {
        sig1 += block(n, 2, 1, 0, qmax);
        sig_nm1 += block(n, 2, 1, 0, qmax).scaled(n - 1);
    }
    ZQSeries zpart = mzv_bracket({{{1, 1, 0}}, {{2, 0, 0}}}, qmax) +
                     mzv_bracket({{{1, 1, 0}}, {{1, 0, 0}, {1, 0, 0}}}, qmax).scaled(2);
    return sig1.scaled(-kl) + (sig_nm1 + zpart).scaled(-kk / 2);
}

ZQSeries closed_chk_abelian(const Rational& ll, int k, int qmax) {
    if (k < 2) throw std::invalid_argument("closed_chk_abelian: defined for k >= 2");
    return bracket_composition_sum(k, qmax).scaled(-ll / 2);
}

ZQSeries closed_w_trace(const SurfaceModel& X, const GenPartition& lam, const CohClass& alpha, int qmax) {
    // positive/negative multiplicities per part size
    std::map<int, std::pair<int, int>> mults;  // n -> (m_n, mtilde_n)
    for (auto& [p, m] : lam.mults()) {
        if (p > 0)
            mults[p].first = m;
        else
            mults[-p].second = m;
    }
    auto product_part = [&](int skip_at) {  // skip_at > 0 lowers both mults at that size by one
        Rational f = 1;
        ZQSeries s = ZQSeries::one(qmax, 0);
        int possum = 0;
        for (auto& [n, mm] : mults) {
            int mn = mm.first - (n == skip_at ? 1 : 0);
            int mt = mm.second - (n == skip_at ? 1 : 0);
            possum += mn;
            f *= Rational((mn % 2) ? -1 : 1) /
                 (Rational(factorial(unsigned(mn))) * Rational(factorial(unsigned(mt))));
            if (mn + mt > 0) s *= block(n, mn + mt, mn, 0, qmax);
        }
        return std::tuple<Rational, ZQSeries, int>(f, s, possum);
    };

    auto [f0, s0, possum] = product_part(0);
    ZQSeries inner = s0.scaled(f0 * X.pair(X.one_minus_k_pow(possum), alpha));

    // matched-pair correction: each contracted size contributes -n q^n/(1-q^n),
    // the same sign as the bare-trace seed
    Rational ea = X.pair(X.euler_class(), alpha);
    if (ea != 0) {
        for (auto& [n, mm] : mults) {
            if (mm.first < 1 || mm.second < 1) continue;
            auto [f1, s1, ignored] = product_part(n);
            inner += (s1 * block(n, 1, 1, 0, qmax).scaled(-n)).scaled(f1 * ea);
        }
    }
    ZQSeries lifted = (euler_pow(-X.chi(), qmax) * inner).lifted(1);
    return lifted.shifted(0, {lam.sum()}, 1);
}

Rational ConstantsTable::btilde(int i, int j) const {
    auto it = B.find(i);
    if (it == B.end()) throw std::out_of_range("ConstantsTable: no such row");
    return it->second.coeff_q(i + j);
}

ConstantsTable b_table(int imax, int jmax) {
    if (imax < 1) throw std::invalid_argument("b_table: imax must be >= 1");
    ConstantsTable tab;
    tab.imax = imax;
    tab.jmax = jmax;
    tab.qmax = imax + jmax;
    const int qmax = tab.qmax;

    ZQSeries B1 = ZQSeries::zero(qmax, 0);
    for (int n = 1; n <= qmax; ++n) B1.add_term(n, {}, Rational(sigma1(unsigned(n))));
    tab.B.emplace(1, B1);
    for (int j = 0; j <= jmax && 1 + j <= qmax; ++j)
        tab.b[{1, j}] = {Rational(sigma1(unsigned(j + 1))) / Rational(j + 1), true};

    for (int i = 2; i <= imax; ++i) {
        // sum over multisets {m_s : s < i} with sum (s+1) m_s = i + 1
        ZQSeries first = ZQSeries::zero(qmax, 0);
        std::vector<int> m(size_t(i), 0);  // m[s] for s = 1..i-1
        std::function<void(int, int)> rec = [&](int s, int rem) {
            if (rem == 0) {
                int smsum = 0;
                for (int t = 1; t < i; ++t) smsum += t * m[size_t(t)];
                ZQSeries term = ZQSeries::one(qmax, 0).scaled(Rational(1) / Rational(factorial(unsigned(smsum))));
                for (int t = 1; t < i && !term.is_zero(); ++t) {
                    int mt = m[size_t(t)];
                    if (!mt) continue;
                    term *= tab.B.at(t).scaled(-t).pow(unsigned(mt));
                    term = term.scaled(Rational(1) / Rational(factorial(unsigned(mt))));
                }
                first += term;
                return;
            }
            if (s >= i) return;
            for (int cnt = 0; (s + 1) * cnt <= rem; ++cnt) {
                m[size_t(s)] = cnt;
                rec(s + 1, rem - (s + 1) * cnt);
            }
            m[size_t(s)] = 0;
        };
        rec(1, i + 1);

        ZQSeries psi = first - bracket_composition_sum(i + 1, qmax);
        ZQSeries Bi = psi.scaled(Rational(factorial(unsigned(i - 1))));
        tab.B.emplace(i, Bi);
        for (int j = 0; j <= jmax && i + j <= qmax; ++j) tab.b[{i, j}] = {Bi.coeff_q(i + j), false};
    }
    return tab;
}

ZQSeries fqxk_eval(const std::vector<int>& ks, const ConstantsTable& table, int chi, int qmax,
                   InnerRoute route) {
    const size_t N = ks.size();
    // per position: maps s -> m_{i,s} with sum (s+1) m_{i,s} = k_i + 2
    std::vector<std::vector<std::map<int, int>>> sols(N);
    for (size_t i = 0; i < N; ++i) {
        int target = ks[i] + 2;
        std::map<int, int> cur;
        std::function<void(int, int)> rec = [&](int s, int rem) {
            if (rem == 0) {
                sols[i].push_back(cur);
                return;
            }
            if ((s + 1) > rem) return;
            for (int cnt = 0; (s + 1) * cnt <= rem; ++cnt) {
                if (cnt) cur[s] = cnt;
                rec(s + 1, rem - (s + 1) * cnt);
                cur.erase(s);
            }
        };
        rec(1, target);
        if (table.qmax < ks[i] + 1)
            throw std::out_of_range("fqxk_eval: table does not cover the requested k");
    }
    if (table.qmax < qmax) throw std::out_of_range("fqxk_eval: table truncation is below qmax");

    auto inner_series = [&](int s, int m) -> ZQSeries {
        // collapsed: ((-s) B_s)^m / m!; expanded: explicit sum over tuples t_j
        if (route == InnerRoute::Collapsed) {
            ZQSeries p = table.B.at(s).truncated(qmax).scaled(-s).pow(unsigned(m));
            return p.scaled(Rational(1) / Rational(factorial(unsigned(m))));
        }
        ZQSeries acc = ZQSeries::zero(qmax, 0);
        int jmaxs = table.qmax - s;
        std::vector<int> t(size_t(jmaxs + 1), 0);
        std::function<void(int, int)> rec = [&](int j, int rem) {
            if (j > jmaxs) {
                if (rem) return;
                ZQSeries term = ZQSeries::one(qmax, 0);
                for (int jj = 0; jj <= jmaxs && !term.is_zero(); ++jj) {
                    int tj = t[size_t(jj)];
                    if (!tj) continue;
                    Rational base = table.btilde(s, jj) * Rational(-s);
                    ZQSeries mono = ZQSeries::monomial(qmax, 0, s + jj, {}, base);
                    term *= mono.pow(unsigned(tj)).scaled(Rational(1) / Rational(factorial(unsigned(tj))));
                }
                acc += term;
                return;
            }
            for (int cnt = 0; cnt <= rem; ++cnt) {
                t[size_t(j)] = cnt;
                rec(j + 1, rem - cnt);
            }
            t[size_t(j)] = 0;
        };
        rec(0, m);
        return acc;
    };

    ZQSeries total = ZQSeries::zero(qmax, 0);
    std::vector<size_t> choice(N, 0);
    for (;;) {
        std::map<int, int> msum;                   // s -> m_s
        std::map<int, std::vector<int>> per_pos;   // s -> list of m_{i,s}
        Rational coeff = 1;
        for (size_t i = 0; i < N; ++i) {
            const auto& sol = sols[i][choice[i]];
            int smsum = 0;
            for (auto& [s, cnt] : sol) {
                msum[s] += cnt;
                per_pos[s].push_back(cnt);
                smsum += s * cnt;
            }
            coeff /= Rational(factorial(unsigned(smsum)));
        }
        ZQSeries term = ZQSeries::one(qmax, 0).scaled(coeff);
        for (auto& [s, ms] : msum) {
            if (term.is_zero()) break;
            // (-s)^{m_s} m_s! / prod_i m_{i,s}!  times the inner sum; the
            // (-s)^{m_s} and 1/m_s! live inside inner_series already.
            Rational f = Rational(factorial(unsigned(ms)));
            for (int mi : per_pos[s]) f /= Rational(factorial(unsigned(mi)));
            term *= inner_series(s, ms).scaled(f);
        }
        total += term;
        size_t i = 0;
        while (i < N && choice[i] + 1 == sols[i].size()) choice[i++] = 0;
        if (i == N) break;
        ++choice[i];
    }
    if (N % 2) total = -total;
    return euler_pow(-chi, qmax) * total;
}

ConstantsExtraction extract_constants(const ZQSeries& f1red_chi0_A, const Rational& kkA,
                                      const ZQSeries& f1red_chi0_B, const Rational& kkB,
                                      const ZQSeries& reducedFL1, const Rational& LK, int qmax) {
    if (LK == 0) throw std::invalid_argument("extract_constants: underdetermined, <L,K> = 0");
    if (kkA == kkB) throw std::invalid_argument("extract_constants: underdetermined, equal <K,K> samples");
    ConstantsExtraction out;
    ZQSeries fl = reducedFL1.nz() > 0 ? reducedFL1.coe_z0() : reducedFL1;
    ZQSeries fA = f1red_chi0_A.nz() > 0 ? f1red_chi0_A.coe_z0() : f1red_chi0_A;
    ZQSeries fB = f1red_chi0_B.nz() > 0 ? f1red_chi0_B.coe_z0() : f1red_chi0_B;
    out.gseries = fl.scaled(Rational(1) / LK);
    out.hseries = (fA - fB).scaled(Rational(1) / (kkA - kkB));
    out.fseriesA = fA;
    for (int j = 0; 2 + j <= qmax; ++j) {
        out.g.push_back(out.gseries.coeff_q(2 + j));
        out.h.push_back(out.hseries.coeff_q(2 + j));
        out.g_plus_h.push_back(out.g.back() + out.h.back());
    }
    return out;
}

std::string ConstantsTable::to_json_text() const {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& [ij, row] : b) {
        nlohmann::ordered_json r;
        r["i"] = ij.first;
        r["j"] = ij.second;
        r["value"] = rat_str(row.value);
        r["provenance"] = row.seeded ? "seeded" : "computed";
        rows.push_back(std::move(r));
    }
    nlohmann::ordered_json j;
    j["family"] = "b";
    j["imax"] = imax;
    j["jmax"] = jmax;
    j["rows"] = std::move(rows);
    return j.dump(2);
}

std::string ConstantsTable::to_csv_text() const {
    std::ostringstream os;
    os << "i,j,value,provenance\n";
    for (const auto& [ij, row] : b)
        os << ij.first << "," << ij.second << "," << rat_str(row.value) << ","
           << (row.seeded ? "seeded" : "computed") << "\n";
    return os.str();
}

}  // namespace hilbq
