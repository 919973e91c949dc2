#include "hilbq/zqseries.hpp"

#include <sstream>

#include "json.hpp"

namespace hilbq {

ZQSeries ZQSeries::one(int qmax, int nz) { return constant(qmax, nz, 1); }

ZQSeries ZQSeries::constant(int qmax, int nz, const Rational& c) {
    ZQSeries s(qmax, nz);
    s.add_term(0, std::vector<int>(nz, 0), c);
    return s;
}

ZQSeries ZQSeries::monomial(int qmax, int nz, int q, std::vector<int> zexp, const Rational& c) {
    ZQSeries s(qmax, nz);
    s.add_term(q, std::move(zexp), c);
    return s;
}

bool ZQSeries::z_free() const {
    for (const auto& [k, c] : terms_)
        for (int e : k.z)
            if (e != 0) return false;
    return true;
}

Rational ZQSeries::coeff(int q, const std::vector<int>& zexp) const {
    if ((int)zexp.size() != nz_) throw SeriesError("coeff: z arity mismatch");
    auto it = terms_.find(TermKey{q, zexp});
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational ZQSeries::coeff_q(int q) const { return coeff(q, std::vector<int>(nz_, 0)); }

void ZQSeries::add_term(int q, std::vector<int> zexp, const Rational& c) {
    if ((int)zexp.size() != nz_) throw SeriesError("add_term: z arity mismatch");
    if (q < 0) throw SeriesError("add_term: negative q exponent");
    if (q > qmax_) return;
    Rational cc = c;
    cc.canonicalize();  // guard against raw two-argument constructions upstream
    if (cc == 0) return;
    TermKey key{q, std::move(zexp)};
    auto [it, fresh] = terms_.emplace(key, cc);
    if (!fresh) {
        it->second += cc;
        if (it->second == 0) terms_.erase(it);
    }
}

ZQSeries ZQSeries::operator-() const {
    ZQSeries r(qmax_, nz_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

ZQSeries ZQSeries::operator+(const ZQSeries& o) const {
    check_arity(o);
    ZQSeries r(std::min(qmax_, o.qmax_), nz_);
    for (const auto& [k, c] : terms_) r.add_term(k.q, k.z, c);
    for (const auto& [k, c] : o.terms_) r.add_term(k.q, k.z, c);
    return r;
}

ZQSeries ZQSeries::operator-(const ZQSeries& o) const { return *this + (-o); }

ZQSeries ZQSeries::operator*(const ZQSeries& o) const {
    check_arity(o);
    ZQSeries r(std::min(qmax_, o.qmax_), nz_);
    for (const auto& [ka, ca] : terms_) {
        if (ka.q > r.qmax_) continue;
        for (const auto& [kb, cb] : o.terms_) {
            int q = ka.q + kb.q;
            if (q > r.qmax_) continue;
            std::vector<int> z(nz_);
            for (int i = 0; i < nz_; ++i) z[i] = ka.z[i] + kb.z[i];
            r.add_term(q, std::move(z), ca * cb);
        }
    }
    return r;
}

ZQSeries ZQSeries::scaled(const Rational& c) const {
    ZQSeries r(qmax_, nz_);
    if (c == 0) return r;
    for (const auto& [k, t] : terms_) r.terms_.emplace(k, t * c);
    return r;
}

ZQSeries ZQSeries::shifted(int dq, const std::vector<int>& dz, const Rational& c) const {
    if ((int)dz.size() != nz_) throw SeriesError("shifted: z arity mismatch");
    ZQSeries r(qmax_, nz_);
    if (c == 0) return r;
    for (const auto& [k, t] : terms_) {
        int q = k.q + dq;
        if (q < 0) throw SeriesError("shifted: negative q exponent");
        if (q > qmax_) continue;
        std::vector<int> z(nz_);
        for (int i = 0; i < nz_; ++i) z[i] = k.z[i] + dz[i];
        r.add_term(q, std::move(z), t * c);
    }
    return r;
}

ZQSeries ZQSeries::coe_z0() const {
    ZQSeries r(qmax_, 0);
    for (const auto& [k, c] : terms_) {
        bool all0 = true;
        for (int e : k.z)
            if (e != 0) { all0 = false; break; }
        if (all0) r.add_term(k.q, {}, c);
    }
    return r;
}

ZQSeries ZQSeries::q_ddq() const {
    ZQSeries r(qmax_, nz_);
    for (const auto& [k, c] : terms_)
        if (k.q != 0) r.terms_.emplace(k, c * k.q);
    return r;
}

ZQSeries ZQSeries::truncated(int new_qmax) const {
    ZQSeries r(new_qmax, nz_);
    for (const auto& [k, c] : terms_)
        if (k.q <= new_qmax) r.terms_.emplace(k, c);
    return r;
}

ZQSeries ZQSeries::lifted(int new_nz) const {
    if (new_nz < nz_) throw SeriesError("lifted: cannot drop z variables");
    ZQSeries r(qmax_, new_nz);
    for (const auto& [k, c] : terms_) {
        std::vector<int> z(new_nz, 0);
        for (int i = 0; i < nz_; ++i) z[i] = k.z[i];
        r.terms_.emplace(TermKey{k.q, std::move(z)}, c);
    }
    return r;
}

ZQSeries ZQSeries::pow(unsigned k) const {
    ZQSeries acc = one(qmax_, nz_);
    ZQSeries base = *this;
    while (k) {
        if (k & 1) acc = acc * base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

ZQSeries ZQSeries::inverted() const {
    Rational c0 = coeff(0, std::vector<int>(nz_, 0));
    if (c0 == 0) throw SeriesError("inverted: constant term is zero");
    // Split as c0 (1 + t) with t of positive q-order in the q-adic sense:
    // requires every non-constant term to carry q > 0.
    ZQSeries t(qmax_, nz_);
    for (const auto& [k, c] : terms_) {
        if (k.q == 0) {
            bool all0 = true;
            for (int e : k.z)
                if (e != 0) all0 = false;
            if (all0) continue;
            throw SeriesError("inverted: non-scalar constant term");
        }
        t.add_term(k.q, k.z, c / c0);
    }
    ZQSeries inv = one(qmax_, nz_);
    ZQSeries pw = one(qmax_, nz_);
    for (int i = 1; i <= qmax_; ++i) {
        pw = pw * t;
        if (pw.is_zero()) break;
        inv += (i % 2 ? -pw : pw);
    }
    return inv.scaled(Rational(1) / c0);
}

std::string ZQSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.get_str() << ")";
        if (k.q) os << " q^" << k.q;
        for (int i = 0; i < nz_; ++i)
            if (k.z[i]) os << " z" << i << "^" << k.z[i];
    }
    return os.str();
}

ZQSeries euler_pow(int c, int qmax) {
    ZQSeries base = ZQSeries::one(qmax, 0);
    for (int m = 1; m <= qmax; ++m) {
        ZQSeries f = ZQSeries::one(qmax, 0);
        f.add_term(m, {}, -1);
        base = base * f;
    }
    if (c >= 0) return base.pow(unsigned(c));
    return base.inverted().pow(unsigned(-c));
}

ZQSeries block(int n, int w, int a, int zstep, int qmax) {
    if (n < 1 || w < 1 || a < 0) throw SeriesError("block: bad parameters");
    int nz = zstep == 0 ? 0 : 1;
    ZQSeries r(qmax, nz);
    // q^{na} z^{n zstep} sum_j C(w-1+j, j) q^{nj}
    for (int j = 0; n * (a + j) <= qmax; ++j) {
        std::vector<int> z;
        if (nz) z.push_back(n * zstep);
        r.add_term(n * (a + j), std::move(z), Rational(binom(unsigned(w - 1 + j), unsigned(j))));
    }
    return r;
}

std::string series_to_json(const ZQSeries& s) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [k, c] : s.terms()) {
        nlohmann::ordered_json t;
        t["q"] = k.q;
        t["z"] = k.z;
        t["c"] = rat_str(c);
        arr.push_back(std::move(t));
    }
    return arr.dump();
}

ZQSeries series_from_json(const std::string& text, int qmax, int nz) {
    auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw SeriesError("series_from_json: expected array");
    ZQSeries s(qmax, nz);
    for (const auto& t : arr) {
        std::vector<int> z = t.at("z").get<std::vector<int>>();
        s.add_term(t.at("q").get<int>(), std::move(z), rat_parse(t.at("c").get<std::string>()));
    }
    return s;
}

}  // namespace hilbq
