#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hilbq {

// Exact scalar type used everywhere. No floating point in this library.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "n" or "n/d" (optionally signed). Throws on malformed input.
Rational rat_parse(const std::string& s);

// Canonical "num/den" form, denominator always present and positive.
std::string rat_str(const Rational& r);

Integer factorial(unsigned n);

// C(n, k) for non-negative integers.
Integer binom(unsigned n, unsigned k);

// Generalized binomial coefficient x(x-1)...(x-k+1)/k! for rational x.
Rational binom_rat(const Rational& x, unsigned k);

// Divisor sum sigma_1(n) = sum of divisors of n, n >= 1.
Integer sigma1(unsigned n);

}  // namespace hilbq
