#pragma once

// The series picture: (1-z) P(z) = sum_k Q(k) w^k with the basis rule
// (1-z)^j <-> C(k+j, j). Q is a polynomial in k of the same degree as P.

#include <string>
#include <vector>

#include "mlegendre/errors.hpp"
#include "mlegendre/exact.hpp"
#include "mlegendre/legendre.hpp"
#include "mlegendre/params.hpp"
#include "mlegendre/polynomial.hpp"

namespace mlegendre {

/// Polynomial in the summation variable k, monomial basis.
using KPolynomial = RatPoly;

/// prod_j C(k + p_j t + shift, (p_j + q_j) t).
inline Integer series_coefficient(const std::vector<long>& p, const std::vector<long>& q, long t, const Integer& k,
                                  long shift = 0) {
  Integer r = 1;
  for (std::size_t j = 0; j < p.size() && r != 0; ++j)
    r *= binomial_integer(k + p[j] * t + shift, static_cast<std::uint64_t>((p[j] + q[j]) * t));
  return r;
}

inline Integer series_coefficient(const ParamSet& params, long t, const Integer& k) {
  return series_coefficient(params.p, params.q, t, k);
}

namespace detail {

/// Monomial expansions of C(k+j, j) for j = 0..d.
inline std::vector<KPolynomial> shifted_binomial_basis(std::size_t d) {
  std::vector<KPolynomial> basis;
  basis.push_back(KPolynomial::constant(Rational(1)));
  for (std::size_t j = 1; j <= d; ++j) {
    const auto uj = static_cast<unsigned long>(j);
    KPolynomial factor{Rational(1), Rational(1, uj)};  // (k + j) / j
    basis.push_back(basis.back() * factor);
  }
  return basis;
}

}  // namespace detail

/// P = sum a_j (1-z)^j  ->  Q(k) = sum a_j C(k+j, j).
inline KPolynomial p_to_q(const RatPoly& poly) {
  if (poly.is_zero()) return {};
  const RatPoly a = substitute_one_minus(poly);  // coefficients in u = 1 - z
  const auto basis = detail::shifted_binomial_basis(a.size() - 1);
  KPolynomial out;
  for (std::size_t j = 0; j < a.size(); ++j)
    if (a.coeffs()[j] != 0) out += basis[j] * a.coeffs()[j];
  return out;
}

inline KPolynomial p_to_q(const IntPoly& poly) { return p_to_q(to_rational(poly)); }

/// Inverse of p_to_q. At k = -1-i only the terms j <= i survive, with
/// C(j-i-1, j) = (-1)^j C(i, j), so the coordinates are binomial transforms
/// of the values Q(-1), Q(-2), ...
inline RatPoly q_to_p(const KPolynomial& qk) {
  if (qk.is_zero()) return {};
  const std::size_t d = qk.size() - 1;
  std::vector<Rational> vals(d + 1);
  for (std::size_t i = 0; i <= d; ++i) vals[i] = evaluate(qk, Rational(-1 - static_cast<long>(i)));
  // b_j = sum_i (-1)^{j-i} C(j, i) Q(-1-i), a_j = (-1)^j b_j.
  std::vector<Rational> a(d + 1);
  Integer binom;
  for (std::size_t j = 0; j <= d; ++j) {
    Rational acc = 0;
    binom = 1;
    for (std::size_t i = 0; i <= j; ++i) {
      if (i > 0) {
        binom *= static_cast<unsigned long>(j - i + 1);
        mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(i));
      }
      const bool neg = ((j - i) % 2) == 1;
      if (neg)
        acc -= vals[i] * Rational(binom);
      else
        acc += vals[i] * Rational(binom);
    }
    a[j] = (j % 2 == 1) ? Rational(-acc) : acc;
  }
  return substitute_one_minus(RatPoly(std::move(a)));
}

/// Newton forward-difference interpolation through (k, values[k]), k = 0..d.
inline KPolynomial interpolate_at_naturals(const std::vector<Rational>& values) {
  std::vector<Rational> diff = values;
  const std::size_t d = values.empty() ? 0 : values.size() - 1;
  std::vector<Rational> lead(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    lead[i] = diff[0];
    for (std::size_t r = 0; r + 1 < diff.size() - i; ++r) diff[r] = diff[r + 1] - diff[r];
  }
  KPolynomial out;
  KPolynomial basis = KPolynomial::constant(Rational(1));  // C(k, i)
  for (std::size_t i = 0; i <= d && !values.empty(); ++i) {
    if (i > 0) {
      const auto ui = static_cast<unsigned long>(i);
      basis = basis * KPolynomial{Rational(-static_cast<long>(i - 1), ui), Rational(1, ui)};
    }
    if (lead[i] != 0) out += basis * lead[i];
  }
  return out;
}

struct OracleOptions {
  long max_weight = 200;
};

/// L_n rebuilt from the series coefficients alone: interpolate Q on
/// k = 0..M t, then map back to the z-side.
inline IntPoly oracle_legendre(const std::vector<long>& p, const std::vector<long>& q, long t,
                               const OracleOptions& opt = {}) {
  check_exponents(p, q);
  long weight = 0;
  for (std::size_t i = 0; i < p.size(); ++i) weight += (p[i] + q[i]) * t;
  if (weight > opt.max_weight)
    throw PreconditionError("oracle limited to M t <= " + std::to_string(opt.max_weight));
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(weight) + 1);
  for (long k = 0; k <= weight; ++k) values.emplace_back(series_coefficient(p, q, t, Integer(k)));
  const KPolynomial qk = interpolate_at_naturals(values);
  if (qk.degree() != weight && !(weight == 0 && qk.degree() == 0))
    throw InvariantViolation("interpolated series polynomial has degree " + std::to_string(qk.degree()));
  const RatPoly poly = q_to_p(qk);
  if (!is_integral(poly)) throw InvariantViolation("oracle reconstruction is not integral");
  return to_integer(poly);
}

inline IntPoly oracle_legendre(const ParamSet& params, long t, const OracleOptions& opt = {}) {
  return oracle_legendre(params.p, params.q, t, opt);
}

struct IdentityCheck {
  bool holds = true;
  long j = 0;
  long k = 0;
  Rational lhs;
  Rational rhs;
};

/// C(k+j, j) sum_{i=1..j} 1/(k+i) against sum_{i=1..j} C(k+j-i, j-i)/i.
inline IdentityCheck hyperharmonic_identity(long j, long k) {
  if (j < 0 || k < 0) throw PreconditionError("hyperharmonic identity needs j, k >= 0");
  IdentityCheck r;
  r.j = j;
  r.k = k;
  Rational h = 0;
  for (long i = 1; i <= j; ++i) h += Rational(1, static_cast<unsigned long>(k + i));
  r.lhs = Rational(binomial_integer(Integer(k + j), static_cast<std::uint64_t>(j))) * h;
  for (long i = 1; i <= j; ++i)
    r.rhs += Rational(binomial_integer(Integer(k + j - i), static_cast<std::uint64_t>(j - i))) /
             Rational(static_cast<unsigned long>(i));
  r.holds = r.lhs == r.rhs;
  return r;
}

/// First failure over 0 <= j, k <= max, or a passing record.
inline IdentityCheck hyperharmonic_exhaustive(long max) {
  for (long j = 0; j <= max; ++j)
    for (long k = 0; k <= max; ++k) {
      IdentityCheck r = hyperharmonic_identity(j, k);
      if (!r.holds) return r;
    }
  return {};
}

struct SeriesDerivativeCheck {
  bool holds = true;
  KPolynomial transformed;    // p_to_q(T(P))
  KPolynomial derivative_q;   // d/dk p_to_q(P)
};

/// T acts on the k-side as Q -> -Q'. The minus sign follows from T(1-z) = -1
/// against Q = k+1.
inline SeriesDerivativeCheck derivative_series_identity(const RatPoly& poly) {
  SeriesDerivativeCheck r;
  r.transformed = p_to_q(christoffel_transform(poly));
  r.derivative_q = derivative(p_to_q(poly));
  r.holds = r.transformed == -r.derivative_q;
  return r;
}

/// Series polynomial of (1-z)^{(p_1+q_1)t} L*_n, i.e. Q shifted by q_1 t.
inline KPolynomial shifted_series_polynomial(const std::vector<long>& p, const std::vector<long>& q, long t) {
  long weight = 0;
  for (std::size_t i = 0; i < p.size(); ++i) weight += (p[i] + q[i]) * t;
  std::vector<Rational> values;
  for (long k = 0; k <= weight; ++k) values.emplace_back(series_coefficient(p, q, t, Integer(k), q[0] * t));
  return interpolate_at_naturals(values);
}

struct VanishingCheck {
  bool holds = true;
  long failing_k = 0;
  Rational value;
};

/// Q(k) = 0 for k = 0..q_1 t - 1.
inline VanishingCheck series_vanishing_check(const std::vector<long>& p, const std::vector<long>& q, long t) {
  VanishingCheck r;
  for (long k = 0; k < q[0] * t; ++k) {
    const Integer v = series_coefficient(p, q, t, Integer(k));
    if (v != 0) return {false, k, Rational(v)};
  }
  return r;
}

/// Under the monotone prefix, the m-th k-derivative of the shifted series
/// polynomial vanishes at k = -1, ..., -(p_1+q_1) t.
inline VanishingCheck derivative_shift_check(const ParamSet& params, long t, int m) {
  if (!params.monotone_prefix(m + 1)) throw PreconditionError("derivative shift needs a monotone prefix");
  KPolynomial poly = shifted_series_polynomial(params.p, params.q, t);
  for (int i = 0; i < m; ++i) poly = derivative(poly);
  const long top = params.diagonal(0) * t;
  for (long k = 1; k <= top; ++k) {
    const Rational v = evaluate(poly, Rational(-k));
    if (v != 0) return {false, -k, v};
  }
  return {};
}

}  // namespace mlegendre
