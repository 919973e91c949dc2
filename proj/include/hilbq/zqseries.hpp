#pragma once

#include <map>
#include <string>
#include <vector>

#include "hilbq/rational.hpp"

namespace hilbq {

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent key of one term: q-exponent plus one integer exponent per z
// variable. Ordered by q first, then lexicographically in z, which is also
// the canonical serialization order.
struct TermKey {
    int q = 0;
    std::vector<int> z;

    bool operator<(const TermKey& o) const {
        if (q != o.q) return q < o.q;
        return z < o.z;
    }
    bool operator==(const TermKey& o) const { return q == o.q && z == o.z; }
};

// Truncated formal series in q with Laurent bookkeeping in a fixed number of
// z variables. q-exponents live in [0, qmax]; z-exponents are arbitrary
// integers. Coefficients are exact rationals; zero coefficients are never
// stored. Values are immutable in spirit: every operation returns a fresh
// series, so sharing across threads is safe.
class ZQSeries {
public:
    ZQSeries(int qmax, int nz) : qmax_(qmax), nz_(nz) {
        if (qmax < 0 || nz < 0) throw SeriesError("ZQSeries: bad shape");
    }

    static ZQSeries zero(int qmax, int nz) { return ZQSeries(qmax, nz); }
    static ZQSeries one(int qmax, int nz);
    static ZQSeries constant(int qmax, int nz, const Rational& c);
    static ZQSeries monomial(int qmax, int nz, int q, std::vector<int> zexp, const Rational& c);

    int qmax() const { return qmax_; }
    int nz() const { return nz_; }
    const std::map<TermKey, Rational>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool z_free() const;

    Rational coeff(int q, const std::vector<int>& zexp) const;
    Rational coeff_q(int q) const;  // requires nz()==0 or z-free content at that order

    void add_term(int q, std::vector<int> zexp, const Rational& c);

    ZQSeries operator-() const;
    ZQSeries operator+(const ZQSeries& o) const;
    ZQSeries operator-(const ZQSeries& o) const;
    ZQSeries operator*(const ZQSeries& o) const;
    ZQSeries& operator+=(const ZQSeries& o) { return *this = *this + o; }
    ZQSeries& operator-=(const ZQSeries& o) { return *this = *this - o; }
    ZQSeries& operator*=(const ZQSeries& o) { return *this = *this * o; }

    ZQSeries scaled(const Rational& c) const;
    // Multiplies by the monomial c * q^dq * z^dz, dropping overflow past qmax.
    ZQSeries shifted(int dq, const std::vector<int>& dz, const Rational& c) const;

    // Keeps only terms with every z-exponent zero; result has nz() == 0.
    ZQSeries coe_z0() const;
    // q d/dq: maps q^n z^m to n q^n z^m.
    ZQSeries q_ddq() const;

    ZQSeries truncated(int new_qmax) const;
    // Re-embeds into a larger z arity (existing exponents padded with zeros).
    ZQSeries lifted(int new_nz) const;

    ZQSeries pow(unsigned k) const;
    // Multiplicative inverse; requires a unit constant term.
    ZQSeries inverted() const;

    bool operator==(const ZQSeries& o) const {
        return qmax_ == o.qmax_ && nz_ == o.nz_ && terms_ == o.terms_;
    }
    bool operator!=(const ZQSeries& o) const { return !(*this == o); }

    std::string str() const;

private:
    int qmax_;
    int nz_;
    std::map<TermKey, Rational> terms_;

    void check_arity(const ZQSeries& o) const {
        if (nz_ != o.nz_) throw SeriesError("ZQSeries: z-variable arity mismatch");
    }
};

// prod_{m=1..qmax} (1-q^m)^c, i.e. the truncation of (q;q)_infty^c. nz()==0.
ZQSeries euler_pow(int c, int qmax);

// q^{n a} z^{n zstep} / (1-q^n)^w expanded to qmax. zstep==0 gives nz()==0,
// otherwise a one-variable series.
ZQSeries block(int n, int w, int a, int zstep, int qmax);

// Serialization schema: array of {q:int, z:[int], c:"num/den"} objects in
// ascending (q, lex z) order. Round trips bit-exactly.
std::string series_to_json(const ZQSeries& s);
ZQSeries series_from_json(const std::string& text, int qmax, int nz);

}  // namespace hilbq
