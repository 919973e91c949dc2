#include "hilbq/fock.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

namespace hilbq {

void CreationMonomial::insert(int n, int b) {
    if (n < 1) throw FockError("CreationMonomial: part must be positive");
    auto it = std::upper_bound(parts.begin(), parts.end(), std::make_pair(n, b));
    parts.insert(it, {n, b});
}

bool CreationMonomial::contains(const CreationMonomial& sub) const {
    size_t i = 0;
    for (auto& p : sub.parts) {
        while (i < parts.size() && parts[i] < p) ++i;
        if (i == parts.size() || !(parts[i] == p)) return false;
        ++i;
    }
    return true;
}

CreationMonomial CreationMonomial::minus(const CreationMonomial& sub) const {
    CreationMonomial out;
    size_t j = 0;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (j < sub.parts.size() && parts[i] == sub.parts[j]) {
            ++j;
            continue;
        }
        out.parts.push_back(parts[i]);
    }
    if (j != sub.parts.size()) throw FockError("CreationMonomial::minus: not a submultiset");
    return out;
}

Rational fock_pair(const SurfaceModel& X, const FockVec<Rational>& u, const FockVec<Rational>& w) {
    Rational total = 0;
    CreationMonomial vac;
    for (auto& [mu, cu] : u) {
        FockVec<Rational> cur = w;
        Rational sign = 1;
        for (auto& [n, b] : mu.parts) {
            if (n % 2) sign = -sign;  // adjoint of a_{-n} is (-1)^n a_n
            cur = apply_heisenberg(X, n, X.basis_class(b), cur);
            if (cur.empty()) break;
        }
        auto it = cur.find(vac);
        if (it != cur.end()) total += cu * sign * it->second;
    }
    return total;
}

Rational vacuum_to_one(const SurfaceModel& X, const FockVec<Rational>& v) {
    const int xIdx = X.r() + 1;
    Rational total = 0;
    for (auto& [mono, c] : v) {
        bool ok = true;
        for (auto& [n, b] : mono.parts)
            if (n != 1 || b != xIdx) { ok = false; break; }
        if (ok) total += c;
    }
    return total;
}

const FockSpace::WeightData& FockSpace::weight_data(int n) const {
    auto ptr = weights_.get(n, [&] {
        WeightData wd;
        const int B = X_->basis_size();
        CreationMonomial cur;
        // factors chosen non-increasing in (n, b) so every multiset appears once
        std::function<void(int, int, int)> rec = [&](int rem, int maxN, int maxB) {
            if (rem == 0) {
                CreationMonomial m = cur;
                std::sort(m.parts.begin(), m.parts.end());
                wd.basis.push_back(std::move(m));
                return;
            }
            for (int p = std::min(maxN, rem); p >= 1; --p) {
                int bstart = (p == maxN) ? maxB : B - 1;
                for (int b = bstart; b >= 0; --b) {
                    cur.parts.push_back({p, b});
                    rec(rem - p, p, b);
                    cur.parts.pop_back();
                }
            }
        };
        rec(n, n, B - 1);
        std::sort(wd.basis.begin(), wd.basis.end());
        for (size_t i = 0; i < wd.basis.size(); ++i) wd.index.emplace(wd.basis[i], int(i));
        return wd;
    });
    return *ptr;
}

const std::vector<CreationMonomial>& FockSpace::basis(int n) const { return weight_data(n).basis; }

int FockSpace::basis_index(int n, const CreationMonomial& m) const {
    const auto& idx = weight_data(n).index;
    auto it = idx.find(m);
    if (it == idx.end()) throw FockError("basis_index: monomial not in weight block");
    return it->second;
}

const std::vector<std::vector<Rational>>& FockSpace::gram(int n) const {
    auto ptr = grams_.get(n, [&] {
        const auto& bs = basis(n);
        const size_t d = bs.size();
        std::vector<std::vector<Rational>> g(d, std::vector<Rational>(d, 0));
        for (size_t i = 0; i < d; ++i) {
            FockVec<Rational> ui{{bs[i], Rational(1)}};
            for (size_t j = i; j < d; ++j) {
                FockVec<Rational> uj{{bs[j], Rational(1)}};
                g[i][j] = fock_pair(*X_, ui, uj);
                g[j][i] = g[i][j];
            }
        }
        return g;
    });
    return *ptr;
}

const std::vector<FockVec<Rational>>& FockSpace::dual_basis(int n) const {
    auto ptr = duals_.get(n, [&] {
        const auto& bs = basis(n);
        const SurfaceModel& X = *X_;
        const int r = X.r();
        auto dual_class = [&](int b) -> CohClass {
            if (b == 0) return X.point();
            if (b == r + 1) return X.one();
            CohClass d = X.zero_class();
            for (int c = 0; c < r; ++c) d.c2[c] = X.pairing_inverse()[b - 1][c];
            return d;
        };
        std::vector<FockVec<Rational>> out;
        out.reserve(bs.size());
        for (const auto& u : bs) {
            FockVec<Rational> v{{CreationMonomial{}, Rational(1)}};
            Rational norm = 1;
            for (auto& [p, b] : u.parts) {
                v = apply_heisenberg(X, -p, dual_class(b), v);
                norm *= Rational(p) * (p % 2 ? 1 : -1);  // <a_{-p}(beta), a_{-p}(gamma)> = (-1)^{p+1} p <beta,gamma>
            }
            // automorphisms of the factor multiset
            Rational aut = 1;
            for (size_t i = 0; i < u.parts.size();) {
                size_t j = i;
                while (j < u.parts.size() && u.parts[j] == u.parts[i]) ++j;
                aut *= Rational(factorial(unsigned(j - i)));
                i = j;
            }
            out.push_back(fock_scale(v, Rational(1) / (norm * aut)));
        }
        return out;
    });
    return *ptr;
}

ZQSeries FockSpace::trace_block(const std::function<FockVec<ZQSeries>(const CreationMonomial&)>& op,
                                int n, int qmax, int nzvars) const {
    const auto& bs = basis(n);
    const int threads = thread_budget();
    std::vector<ZQSeries> partial(size_t(std::max(threads, 1)), ZQSeries::zero(qmax, nzvars));
    if (threads <= 1 || bs.size() < 8) {
        for (const auto& u : bs) {
            auto img = op(u);
            auto it = img.find(u);
            if (it != img.end()) partial[0] += it->second;
        }
        return partial[0];
    }
    std::atomic<size_t> next{0};
    auto worker = [&](int tid) {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= bs.size()) break;
            auto img = op(bs[i]);
            auto it = img.find(bs[i]);
            if (it != img.end()) partial[size_t(tid)] += it->second;
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (auto& th : pool) th.join();
    ZQSeries total = ZQSeries::zero(qmax, nzvars);
    for (auto& p : partial) total += p;
    return total;
}

int thread_budget() {
    static const int budget = [] {
        if (const char* env = std::getenv("HILBQ_THREADS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        unsigned hc = std::thread::hardware_concurrency();
        return int(hc == 0 ? 1 : std::min(hc, 8u));
    }();
    return budget;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
    const int threads = thread_budget();
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) break;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

}  // namespace hilbq
