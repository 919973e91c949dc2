#include "hilbq/partitions.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>
#include <sstream>

namespace hilbq {

GenPartition GenPartition::of(std::initializer_list<int> parts) {
    GenPartition p;
    for (int x : parts) p.add(x);
    return p;
}

GenPartition GenPartition::negative_of(const std::vector<int>& mu) {
    GenPartition p;
    for (int x : mu) p.add(-x);
    return p;
}

void GenPartition::add(int part, int mult) {
    if (part == 0) throw std::invalid_argument("GenPartition: zero part");
    if (mult < 0) throw std::invalid_argument("GenPartition: negative multiplicity");
    if (mult == 0) return;
    m_[part] += mult;
}

int GenPartition::mult(int part) const {
    auto it = m_.find(part);
    return it == m_.end() ? 0 : it->second;
}

int GenPartition::length() const {
    int l = 0;
    for (auto& [p, m] : m_) l += m;
    return l;
}

int GenPartition::sum() const {
    int s = 0;
    for (auto& [p, m] : m_) s += p * m;
    return s;
}

long GenPartition::norm_sq() const {
    long s = 0;
    for (auto& [p, m] : m_) s += long(p) * p * m;
    return s;
}

Integer GenPartition::factorial() const {
    Integer f = 1;
    for (auto& [p, m] : m_) f *= hilbq::factorial(unsigned(m));
    return f;
}

int GenPartition::pos_weight() const {
    int s = 0;
    for (auto& [p, m] : m_)
        if (p > 0) s += p * m;
    return s;
}

int GenPartition::neg_weight() const {
    int s = 0;
    for (auto& [p, m] : m_)
        if (p < 0) s += -p * m;
    return s;
}

std::optional<GenPartition> GenPartition::minus(const GenPartition& o) const {
    GenPartition out;
    auto m = m_;
    for (auto& [p, cnt] : o.m_) {
        auto it = m.find(p);
        if (it == m.end() || it->second < cnt) return std::nullopt;
        it->second -= cnt;
    }
    for (auto& [p, cnt] : m)
        if (cnt > 0) out.add(p, cnt);
    return out;
}

std::vector<int> GenPartition::expanded() const {
    std::vector<int> v;
    for (auto& [p, m] : m_) v.insert(v.end(), size_t(m), p);
    return v;
}

std::string GenPartition::str() const {
    std::ostringstream os;
    os << "(";
    bool first = true;
    for (auto& [p, m] : m_) {
        if (!first) os << " ";
        first = false;
        os << p;
        if (m > 1) os << "^" << m;
    }
    os << ")";
    return os.str();
}

std::vector<std::vector<int>> partitions_exact(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k == 0) {
        if (n == 0) out.push_back({});
        return out;
    }
    if (n < k) return out;
    std::vector<int> cur;
    // parts non-increasing, each >= 1
    std::function<void(int, int, int)> rec = [&](int rem, int parts, int maxPart) {
        if (parts == 0) {
            if (rem == 0) out.push_back(cur);
            return;
        }
        for (int p = std::min(maxPart, rem - (parts - 1)); p >= 1; --p) {
            if (rem - p < parts - 1) continue;
            cur.push_back(p);
            rec(rem - p, parts - 1, p);
            cur.pop_back();
        }
    };
    rec(n, k, n);
    return out;
}

std::vector<std::vector<int>> partitions_of(int n) {
    std::vector<std::vector<int>> out;
    for (int k = (n == 0 ? 0 : 1); k <= n; ++k) {
        auto ps = partitions_exact(n, k);
        out.insert(out.end(), ps.begin(), ps.end());
    }
    if (n == 0) out.push_back({});
    return out;
}

std::vector<std::vector<int>> compositions_of(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int rem) {
        if (rem == 0) {
            if (!cur.empty()) out.push_back(cur);
            return;
        }
        for (int p = 1; p <= rem; ++p) {
            cur.push_back(p);
            rec(rem - p);
            cur.pop_back();
        }
    };
    rec(n);
    return out;
}

const std::vector<GenPartition>& enum_balanced_cached(int length, int maxPosWeight) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const std::vector<GenPartition>>> cache;
    std::pair<int, int> key{length, maxPosWeight};
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return *it->second;
    }
    auto fresh = std::make_shared<const std::vector<GenPartition>>(enum_balanced(length, maxPosWeight));
    std::lock_guard<std::mutex> lk(mu);
    auto [it, ignored] = cache.emplace(key, std::move(fresh));
    return *it->second;
}

std::vector<GenPartition> enum_balanced(int length, int maxPosWeight) {
    if (length < 2) throw std::invalid_argument("enum_balanced: length must be >= 2");
    std::vector<GenPartition> out;
    for (int w = 1; w <= maxPosWeight; ++w) {
        for (int p = 1; p <= length - 1; ++p) {
            auto pos = partitions_exact(w, p);
            auto neg = partitions_exact(w, length - p);
            for (const auto& pp : pos)
                for (const auto& nn : neg) {
                    GenPartition gp;
                    for (int v : pp) gp.add(v);
                    for (int v : nn) gp.add(-v);
                    out.push_back(std::move(gp));
                }
        }
    }
    std::sort(out.begin(), out.end(), [](const GenPartition& a, const GenPartition& b) {
        if (a.pos_weight() != b.pos_weight()) return a.pos_weight() < b.pos_weight();
        return a.expanded() < b.expanded();
    });
    return out;
}

}  // namespace hilbq
