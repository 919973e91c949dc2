#include "hilbq/rational.hpp"

namespace hilbq {

Rational rat_parse(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("rat_parse: malformed rational '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("rat_parse: zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rational& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer factorial(unsigned n) {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

Integer binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

Rational binom_rat(const Rational& x, unsigned k) {
    Rational acc = 1;
    for (unsigned i = 0; i < k; ++i) acc *= (x - int(i));
    return acc / Rational(factorial(k));
}

Integer sigma1(unsigned n) {
    Integer s = 0;
    for (unsigned d = 1; d <= n; ++d)
        if (n % d == 0) s += d;
    return s;
}

}  // namespace hilbq
