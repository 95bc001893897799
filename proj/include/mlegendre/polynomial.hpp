#pragma once

// Dense univariate polynomials in the monomial basis, coefficient index =
// power. The zero polynomial is the empty coefficient list; no trailing zeros
// are ever stored.

#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mlegendre/errors.hpp"
#include "mlegendre/exact.hpp"

namespace mlegendre {

/// Degree reported for the zero polynomial.
inline constexpr long kZeroDegree = std::numeric_limits<long>::min();

template <class Coeff>
class Polynomial {
 public:
  using coeff_type = Coeff;

  Polynomial() = default;
  explicit Polynomial(std::vector<Coeff> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Coeff> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Coeff& v) { return Polynomial(std::vector<Coeff>{v}); }
  static Polynomial monomial(std::size_t k, const Coeff& v = Coeff(1)) {
    std::vector<Coeff> c(k + 1, Coeff(0));
    c[k] = v;
    return Polynomial(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  long degree() const { return c_.empty() ? kZeroDegree : static_cast<long>(c_.size()) - 1; }
  std::size_t size() const { return c_.size(); }
  const std::vector<Coeff>& coeffs() const { return c_; }

  /// Coefficient of z^k, zero beyond the degree.
  Coeff coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Coeff(0); }
  const Coeff& leading() const { return c_.back(); }

  /// Lowest power with a nonzero coefficient (order at 0); 0 for the zero polynomial.
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && c_[k] == 0) ++k;
    return c_.empty() ? 0 : k;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Coeff(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Coeff& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Coeff& s) { return a *= s; }
  friend Polynomial operator*(const Coeff& s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Coeff> r(a.c_.size() + b.c_.size() - 1, Coeff(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Mutable access for algorithms that fix up the canonical form themselves.
  std::vector<Coeff>& raw() { return c_; }
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

 private:
  std::vector<Coeff> c_;
};

using IntPoly = Polynomial<Integer>;
using RatPoly = Polynomial<Rational>;

/// Horner evaluation; Value must accept multiplication by Coeff.
template <class Coeff, class Value>
Value evaluate(const Polynomial<Coeff>& p, const Value& x) {
  Value acc(0);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc *= x;
    acc += Value(*it);
  }
  return acc;
}

inline Rational evaluate_exact(const IntPoly& p, const Rational& x) { return evaluate(p, x); }
inline Rational evaluate_exact(const RatPoly& p, const Rational& x) { return evaluate(p, x); }

inline RatPoly to_rational(const IntPoly& p) {
  std::vector<Rational> c;
  c.reserve(p.size());
  for (const auto& x : p.coeffs()) c.emplace_back(x);
  return RatPoly(std::move(c));
}

inline bool is_integral(const RatPoly& p) {
  for (const auto& x : p.coeffs())
    if (x.get_den() != 1) return false;
  return true;
}

/// Throws InvariantViolation if any coefficient is not an integer.
inline IntPoly to_integer(const RatPoly& p) {
  std::vector<Integer> c;
  c.reserve(p.size());
  for (const auto& x : p.coeffs()) {
    if (x.get_den() != 1) throw InvariantViolation("non-integral coefficient " + to_fraction_string(x));
    c.push_back(x.get_num());
  }
  return IntPoly(std::move(c));
}

/// Least common denominator of the coefficients.
inline Integer common_denominator(const RatPoly& p) {
  Integer d = 1;
  for (const auto& x : p.coeffs()) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.get_den_mpz_t());
  return d;
}

/// z^k P(z).
template <class C>
Polynomial<C> shift_up(const Polynomial<C>& p, std::size_t k) {
  if (p.is_zero() || k == 0) return p;
  std::vector<C> c(k, C(0));
  c.insert(c.end(), p.coeffs().begin(), p.coeffs().end());
  return Polynomial<C>(std::move(c));
}

/// (1 - z)^k P(z), by k in-place passes c_i <- c_i - c_{i-1}.
template <class C>
Polynomial<C> times_one_minus_z_pow(Polynomial<C> p, std::size_t k) {
  if (p.is_zero()) return p;
  auto& c = p.raw();
  for (std::size_t pass = 0; pass < k; ++pass) {
    c.push_back(C(0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] -= c[i - 1];
  }
  p.trim();
  return p;
}

/// P(z) / z^k; throws InvariantViolation when z^k does not divide P.
template <class C>
Polynomial<C> divide_by_z_pow(const Polynomial<C>& p, std::size_t k) {
  if (p.is_zero()) return p;
  if (p.low_order() < k) throw InvariantViolation("z^" + std::to_string(k) + " does not divide polynomial");
  return Polynomial<C>(std::vector<C>(p.coeffs().begin() + static_cast<long>(k), p.coeffs().end()));
}

/// P(z) / (1 - z)^k by repeated synthetic division; throws on remainder.
template <class C>
Polynomial<C> divide_by_one_minus_z_pow(Polynomial<C> p, std::size_t k) {
  for (std::size_t pass = 0; pass < k && !p.is_zero(); ++pass) {
    // P = (z - 1) R + P(1); then P / (1 - z) = -R.
    const auto& c = p.coeffs();
    const std::size_t d = c.size() - 1;
    std::vector<C> r(d, C(0));
    C carry = c[d];
    for (std::size_t i = d; i > 0; --i) {
      r[i - 1] = -carry;
      carry = c[i - 1] + carry;
    }
    if (carry != 0) throw InvariantViolation("(1-z) does not divide polynomial");
    p = Polynomial<C>(std::move(r));
  }
  return p;
}

/// D_m P = P^{(m)} / m!: on z^k this is C(k, m) z^{k-m}. Binomials are built
/// incrementally, C(k+1, m) = C(k, m) (k+1) / (k+1-m).
template <class C>
Polynomial<C> normalized_derivative(const Polynomial<C>& p, std::size_t m) {
  if (m == 0 || p.is_zero()) return p;
  if (p.size() <= m) return {};
  std::vector<C> out(p.size() - m, C(0));
  Integer binom = 1;
  for (std::size_t k = m; k < p.size(); ++k) {
    if (k > m) {
      binom *= static_cast<unsigned long>(k);
      mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(k - m));
    }
    out[k - m] = p.coeffs()[k] * C(binom);
  }
  return Polynomial<C>(std::move(out));
}

/// Ordinary first derivative.
template <class C>
Polynomial<C> derivative(const Polynomial<C>& p) {
  if (p.size() <= 1) return {};
  std::vector<C> out(p.size() - 1, C(0));
  for (std::size_t k = 1; k < p.size(); ++k) out[k - 1] = p.coeffs()[k] * C(static_cast<unsigned long>(k));
  return Polynomial<C>(std::move(out));
}

/// P(1 - z), via Horner in the variable (1 - z).
template <class C>
Polynomial<C> substitute_one_minus(const Polynomial<C>& p) {
  Polynomial<C> acc;
  const Polynomial<C> u{C(1), C(-1)};
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = acc * u;
    acc += Polynomial<C>::constant(*it);
  }
  return acc;
}

/// Canonical text form: one "num/den" coefficient per line, lowest degree
/// first. The zero polynomial renders as the empty string.
template <class C>
std::string render(const Polynomial<C>& p) {
  std::ostringstream os;
  for (const auto& x : p.coeffs()) os << to_fraction_string(Rational(x)) << '\n';
  return os.str();
}

inline RatPoly parse_polynomial(const std::string& text) {
  std::istringstream is(text);
  std::vector<Rational> c;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    c.push_back(parse_rational(line));
  }
  return RatPoly(std::move(c));
}

}  // namespace mlegendre
