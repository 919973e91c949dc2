#pragma once

#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hilbq/partitions.hpp"
#include "hilbq/surface.hpp"
#include "hilbq/zqseries.hpp"

namespace hilbq {

struct FockError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Normal-ordered creation monomial a_{-n_1}(b_1) ... a_{-n_k}(b_k)|0>,
// stored as a sorted multiset of (n, basis index) factors. The empty
// monomial is the vacuum.
struct CreationMonomial {
    std::vector<std::pair<int, int>> parts;  // sorted ascending

    int weight() const {
        int w = 0;
        for (auto& [n, b] : parts) w += n;
        return w;
    }
    void insert(int n, int b);
    // Multiplicity-wise containment and difference.
    bool contains(const CreationMonomial& sub) const;
    CreationMonomial minus(const CreationMonomial& sub) const;

    bool operator<(const CreationMonomial& o) const { return parts < o.parts; }
    bool operator==(const CreationMonomial& o) const { return parts == o.parts; }
};

// A Fock space element: finite rational (or series valued) combination of
// creation monomials. Plain maps with value semantics; zero coefficients are
// pruned by the helpers below.
template <class C>
using FockVec = std::map<CreationMonomial, C>;

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_zero(const ZQSeries& c) { return c.is_zero(); }

template <class C>
void fock_add(FockVec<C>& v, const CreationMonomial& m, const C& c) {
    if (coeff_is_zero(c)) return;
    auto [it, fresh] = v.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (coeff_is_zero(it->second)) v.erase(it);
    }
}

template <class C>
FockVec<C> fock_scale(const FockVec<C>& v, const Rational& c);

template <class C>
FockVec<C> fock_sum(const FockVec<C>& a, const FockVec<C>& b) {
    FockVec<C> r = a;
    for (auto& [m, c] : b) fock_add(r, m, c);
    return r;
}

// Single Heisenberg operator a_m(alpha): creation for m < 0, annihilation
// for m > 0 (annihilators act through the commutation relation
// [a_m, a_n] = -m delta_{m,-n} <.,.> and kill the vacuum).
template <class C>
FockVec<C> apply_heisenberg(const SurfaceModel& X, int m, const CohClass& alpha, const FockVec<C>& v);

// Ordered product (a_{ms[0]} ... a_{ms.back()})(alpha) via the Kunneth
// expansion of the length-|ms| diagonal; the rightmost factor acts first.
template <class C>
FockVec<C> apply_sequence(const SurfaceModel& X, const std::vector<int>& ms, const CohClass& alpha,
                          const FockVec<C>& v);

// a_lambda(alpha) with factors in canonical order ... a_{-2} a_{-1} a_1 a_2 ...
template <class C>
FockVec<C> apply_a_lambda(const SurfaceModel& X, const GenPartition& lam, const CohClass& alpha,
                          const FockVec<C>& v);

// Bilinear Fock pairing <u, w>: the adjoint of a_m(beta) is (-1)^m a_{-m}(beta),
// every creation on the left converts to an annihilator on the right.
Rational fock_pair(const SurfaceModel& X, const FockVec<Rational>& u, const FockVec<Rational>& w);

// <v, |1>> where |1> = exp(a_{-1}(1_X))|0>: a monomial pairs nonzero exactly
// when every factor is a_{-1}(x).
Rational vacuum_to_one(const SurfaceModel& X, const FockVec<Rational>& v);

// Lazily computed, thread-safe per-weight data for one surface model.
class FockSpace {
public:
    explicit FockSpace(const SurfaceModel& X) : X_(&X) {}

    const SurfaceModel& model() const { return *X_; }

    // Weight-n monomial basis in canonical order.
    const std::vector<CreationMonomial>& basis(int n) const;
    int basis_index(int n, const CreationMonomial& m) const;

    // Gram matrix of the weight-n basis under fock_pair.
    const std::vector<std::vector<Rational>>& gram(int n) const;

    // Gram-dual vectors: <basis[i], dual[j]> = delta_{ij}. Computed in closed
    // form from the dual basis of H*(X); validated against gram() in tests.
    const std::vector<FockVec<Rational>>& dual_basis(int n) const;

    // Trace of the weight-n block of an operator given as its action on
    // basis monomials; only the weight-preserving component contributes.
    ZQSeries trace_block(const std::function<FockVec<ZQSeries>(const CreationMonomial&)>& op, int n,
                         int qmax, int nzvars) const;

private:
    struct WeightData {
        std::vector<CreationMonomial> basis;
        std::map<CreationMonomial, int> index;
    };
    const SurfaceModel* X_;

    template <class V>
    class Memo {
    public:
        template <class F>
        std::shared_ptr<const V> get(int key, F&& make) const {
            std::shared_future<std::shared_ptr<const V>> fut;
            std::promise<std::shared_ptr<const V>> prom;
            bool owner = false;
            {
                std::lock_guard<std::mutex> lk(mu_);
                auto it = cells_.find(key);
                if (it == cells_.end()) {
                    fut = prom.get_future().share();
                    cells_.emplace(key, fut);
                    owner = true;
                } else {
                    fut = it->second;
                }
            }
            if (owner) {
                auto val = std::make_shared<const V>(make());
                prom.set_value(val);
                return val;
            }
            return fut.get();
        }

    private:
        mutable std::mutex mu_;
        mutable std::map<int, std::shared_future<std::shared_ptr<const V>>> cells_;
    };

    Memo<WeightData> weights_;
    Memo<std::vector<std::vector<Rational>>> grams_;
    Memo<std::vector<FockVec<Rational>>> duals_;

    const WeightData& weight_data(int n) const;
};

// Thread budget for parallel sections; respects the HILBQ_THREADS cap.
int thread_budget();
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// ---- template implementations ----

template <class C>
FockVec<C> fock_scale(const FockVec<C>& v, const Rational& c) {
    FockVec<C> r;
    if (c == 0) return r;
    for (auto& [m, cc] : v) {
        if constexpr (std::is_same_v<C, Rational>)
            r.emplace(m, cc * c);
        else
            r.emplace(m, cc.scaled(c));
    }
    return r;
}

namespace detail {
template <class C>
C coeff_times(const C& c, const Rational& r) {
    if constexpr (std::is_same_v<C, Rational>)
        return c * r;
    else
        return c.scaled(r);
}
}  // namespace detail

template <class C>
FockVec<C> apply_heisenberg(const SurfaceModel& X, int m, const CohClass& alpha, const FockVec<C>& v) {
    if (m == 0) return {};
    FockVec<C> out;
    if (m < 0) {
        int n = -m;
        for (auto& [idx, comp] : X.decompose(alpha)) {
            for (auto& [mono, c] : v) {
                CreationMonomial nm = mono;
                nm.insert(n, idx);
                fock_add(out, nm, detail::coeff_times(c, comp));
            }
        }
        return out;
    }
    // annihilator: contract against matching creation factors
    for (auto& [mono, c] : v) {
        for (size_t i = 0; i < mono.parts.size(); ++i) {
            if (i > 0 && mono.parts[i] == mono.parts[i - 1]) continue;  // distinct factors once
            auto [n, b] = mono.parts[i];
            if (n != m) continue;
            int mult = 0;
            for (auto& p : mono.parts)
                if (p == mono.parts[i]) ++mult;
            Rational f = Rational(-m) * Rational(mult) * X.pair(alpha, X.basis_class(b));
            if (f == 0) continue;
            CreationMonomial nm = mono;
            nm.parts.erase(nm.parts.begin() + long(i));
            fock_add(out, nm, detail::coeff_times(c, f));
        }
    }
    return out;
}

template <class C>
FockVec<C> apply_sequence(const SurfaceModel& X, const std::vector<int>& ms, const CohClass& alpha,
                          const FockVec<C>& v) {
    if (ms.empty()) return {};  // a_empty == 0 (G(alpha, 0) = 0)
    FockVec<C> out;
    for (auto& [coef, slots] : X.diagonal_basis(int(ms.size()), alpha)) {
        FockVec<C> cur = fock_scale(v, coef);
        for (size_t i = ms.size(); i-- > 0;) {
            cur = apply_heisenberg(X, ms[i], X.basis_class(slots[i]), cur);
            if (cur.empty()) break;
        }
        for (auto& [m, c] : cur) fock_add(out, m, c);
    }
    return out;
}

template <class C>
FockVec<C> apply_a_lambda(const SurfaceModel& X, const GenPartition& lam, const CohClass& alpha,
                          const FockVec<C>& v) {
    return apply_sequence(X, lam.expanded(), alpha, v);
}

}  // namespace hilbq
