#pragma once

// Exact scalars and the integer toolbox shared by every module: lcm of an
// initial segment, prime valuations, sieving, generalized binomials.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mlegendre/errors.hpp"

namespace mlegendre {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Integer floor_of(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

/// Fractional part {x} = x - [x], always in [0, 1).
inline Rational frac_of(const Rational& x) { return x - Rational(floor_of(x)); }

inline Integer factorial(std::uint64_t m) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), m);
  return r;
}

/// Natural log of |x| for arbitrarily large integers, x != 0.
inline double log_abs(const Integer& x) {
  if (x == 0) throw DomainError("log of zero");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

inline double log_abs(const Rational& x) {
  return log_abs(x.get_num()) - log_abs(x.get_den());
}

/// Sieve of Eratosthenes, processed in fixed-size segments so memory stays
/// bounded by sqrt(hi) + segment.
inline std::vector<std::uint64_t> primes_upto(std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2) return out;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<bool> small(root + 1, true);
  std::vector<std::uint64_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (!small[i]) continue;
    base.push_back(i);
    for (std::uint64_t j = i * i; j <= root; j += i) small[j] = false;
  }
  constexpr std::uint64_t kSegment = 1 << 16;
  std::vector<bool> seg(kSegment);
  for (std::uint64_t lo = 2; lo <= hi; lo += kSegment) {
    const std::uint64_t top = std::min(hi, lo + kSegment - 1);
    std::fill(seg.begin(), seg.end(), true);
    for (std::uint64_t p : base) {
      if (p * p > top) break;
      std::uint64_t start = std::max(p * p, (lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= top; j += p) seg[j - lo] = false;
    }
    for (std::uint64_t x = lo; x <= top; ++x)
      if (seg[x - lo]) out.push_back(x);
  }
  return out;
}

/// All primes s with lo < s <= hi, ascending.
inline std::vector<std::uint64_t> primes_in_range(double lo, double hi) {
  if (lo < 0 || lo > hi) throw PreconditionError("primes_in_range needs 0 <= lo <= hi");
  auto all = primes_upto(static_cast<std::uint64_t>(std::floor(hi)));
  std::vector<std::uint64_t> out;
  for (auto s : all)
    if (static_cast<double>(s) > lo) out.push_back(s);
  return out;
}

/// d_l = lcm(1, ..., l), with d_0 = 1. Built as the product of maximal prime
/// powers not exceeding l.
inline Integer lcm_upto(std::uint64_t l) {
  Integer r = 1;
  for (auto s : primes_upto(l)) {
    std::uint64_t pw = s;
    while (pw <= l / s) pw *= s;
    r *= Integer(static_cast<unsigned long>(pw));
  }
  return r;
}

/// d_{[x]} for a nonnegative rational bound x.
inline Integer lcm_upto(const Rational& x) {
  if (x < 0) throw PreconditionError("lcm_upto of a negative bound");
  return lcm_upto(floor_of(x).get_ui());
}

/// nu_s(m): exponent of the prime s in m.
inline std::uint64_t prime_valuation(std::uint64_t s, const Integer& m) {
  if (m == 0) throw DomainError("prime_valuation of zero");
  if (s < 2) throw PreconditionError("prime_valuation needs a prime");
  Integer rest;
  const Integer prime(static_cast<unsigned long>(s));
  return mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), prime.get_mpz_t());
}

/// C(x, m) = x (x-1) ... (x-m+1) / m! for any integer x.
inline Integer binomial_integer(const Integer& x, std::uint64_t m) {
  Integer num = 1;
  for (std::uint64_t i = 0; i < m; ++i) num *= x - static_cast<unsigned long>(i);
  Integer r;
  mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), factorial(m).get_mpz_t());
  return r;
}

/// Same falling-factorial binomial at a rational argument.
inline Rational binomial_rational(const Rational& x, std::uint64_t m) {
  Rational num = 1;
  for (std::uint64_t i = 0; i < m; ++i) num *= x - Rational(static_cast<unsigned long>(i));
  return num / Rational(factorial(m));
}

/// Accepts "a/b" or "a"; the result is reduced.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  Integer num;
  Integer den = 1;
  try {
    if (slash == std::string::npos) {
      num = Integer(s);
    } else {
      num = Integer(s.substr(0, slash));
      den = Integer(s.substr(slash + 1));
    }
  } catch (const std::invalid_argument&) {
    throw PreconditionError("not an exact rational: '" + s + "'");
  }
  return make_rational(num, den);
}

/// Canonical "num/den" text (denominator always written).
inline std::string to_fraction_string(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

}  // namespace mlegendre
