#pragma once

// Real-root counting by Sturm sequences over primitive integer polynomials.

#include <vector>

#include "mlegendre/polynomial.hpp"

namespace mlegendre {

namespace detail {

inline IntPoly primitive_part(IntPoly p) {
  if (p.is_zero()) return p;
  Integer g = 0;
  for (const auto& c : p.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1)
    for (auto& c : p.raw()) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return p;
}

/// lc(b)^(deg a - deg b + 1) * a mod b, computed without fractions.
inline IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const long db = b.degree();
  const Integer& lb = b.leading();
  while (!a.is_zero() && a.degree() >= db) {
    const Integer la = a.leading();
    const auto shift = static_cast<std::size_t>(a.degree() - db);
    a *= lb;
    auto& c = a.raw();
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= la * b.coeffs()[i];
    a.trim();
  }
  return a;
}

inline int sign_at(const IntPoly& p, const Rational& x) { return sgn(evaluate_exact(p, x)); }

inline int sign_at_infinity(const IntPoly& p, bool positive) {
  const int s = sgn(p.leading());
  return (positive || p.degree() % 2 == 0) ? s : -s;
}

inline int sign_changes(const std::vector<int>& signs) {
  int count = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace detail

/// P / gcd(P, P'): same roots, all simple.
inline IntPoly square_free_part(const IntPoly& p) {
  if (p.degree() <= 0) return p;
  IntPoly a = detail::primitive_part(p);
  IntPoly b = detail::primitive_part(derivative(p));
  while (!b.is_zero()) {
    IntPoly r = detail::primitive_part(detail::pseudo_remainder(a, b));
    a = std::move(b);
    b = std::move(r);
  }
  // a is gcd up to a constant; divide exactly over the rationals.
  if (a.degree() == 0) return detail::primitive_part(p);
  RatPoly num = to_rational(p);
  const RatPoly den = to_rational(a);
  std::vector<Rational> quot(static_cast<std::size_t>(num.degree() - den.degree() + 1));
  while (!num.is_zero() && num.degree() >= den.degree()) {
    const auto k = static_cast<std::size_t>(num.degree() - den.degree());
    const Rational f = num.leading() / den.leading();
    quot[k] = f;
    num -= shift_up(den * f, k);
  }
  RatPoly q(std::move(quot));
  const Integer cd = common_denominator(q);
  return detail::primitive_part(to_integer(q * Rational(cd)));
}

/// Sturm chain p, p', -rem(...), ... for a square-free p.
class SturmChain {
 public:
  explicit SturmChain(const IntPoly& p) {
    chain_.push_back(detail::primitive_part(p));
    if (p.degree() <= 0) return;
    chain_.push_back(detail::primitive_part(derivative(p)));
    while (true) {
      const IntPoly& a = chain_[chain_.size() - 2];
      const IntPoly& b = chain_.back();
      IntPoly r = detail::pseudo_remainder(a, b);
      if (r.is_zero()) break;
      // The pseudo-remainder scale lc(b)^k must stay positive for the chain to be valid.
      const long k = a.degree() - b.degree() + 1;
      const bool flip = sgn(b.leading()) < 0 && (k % 2 == 1);
      r = detail::primitive_part(std::move(r));
      chain_.push_back(flip ? r : -r);
    }
  }

  int variations_at(const Rational& x) const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(detail::sign_at(p, x));
    return detail::sign_changes(s);
  }
  int variations_at_infinity(bool positive) const {
    std::vector<int> s;
    for (const auto& p : chain_) s.push_back(detail::sign_at_infinity(p, positive));
    return detail::sign_changes(s);
  }

  /// Distinct real roots in (a, b].
  int count_in(const Rational& a, const Rational& b) const { return variations_at(a) - variations_at(b); }
  int count_real() const { return variations_at_infinity(false) - variations_at_infinity(true); }

 private:
  std::vector<IntPoly> chain_;
};

}  // namespace mlegendre
