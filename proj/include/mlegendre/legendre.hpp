#pragma once

// Multiple Legendre polynomials L_n(p_1,q_1; ...; p_n,q_n; z), the reduced
// form L*_n, the transform T(P)(z) = int_0^1 (P(z) - P(y)) / (z - y) dy, and
// the approximation forms I_n^j = L_n log^j(z/(z-1)) - T^j(L_n).

#include <algorithm>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mlegendre/bigfloat.hpp"
#include "mlegendre/errors.hpp"
#include "mlegendre/exact.hpp"
#include "mlegendre/params.hpp"
#include "mlegendre/polynomial.hpp"
#include "mlegendre/sturm.hpp"

namespace mlegendre {

/// D_{p,q}(P) = z^q (1-z)^p D_{p+q}(z^p (1-z)^q P).
template <class C>
Polynomial<C> apply_dpq(long p, long q, const Polynomial<C>& poly) {
  if (p < 0 || q < 0) throw PreconditionError("apply_dpq needs p, q >= 0");
  const auto up = static_cast<std::size_t>(p);
  const auto uq = static_cast<std::size_t>(q);
  Polynomial<C> inner = times_one_minus_z_pow(shift_up(poly, up), uq);
  inner = normalized_derivative(inner, up + uq);
  return times_one_minus_z_pow(shift_up(inner, uq), up);
}

/// L_n at the scaled exponents (p_j t, q_j t). The innermost operator is
/// D_{p_n t, q_n t}; t = 0 gives the constant 1.
inline IntPoly legendre_poly(const std::vector<long>& p, const std::vector<long>& q, long t) {
  check_exponents(p, q);
  if (t < 0) throw PreconditionError("scale t must be nonnegative");
  IntPoly poly = IntPoly::constant(Integer(1));
  for (std::size_t j = p.size(); j-- > 0;) poly = apply_dpq(p[j] * t, q[j] * t, poly);
  const long weight = t * (std::accumulate(p.begin(), p.end(), 0L) + std::accumulate(q.begin(), q.end(), 0L));
  if (poly.degree() != weight)
    throw InvariantViolation("legendre_poly degree " + std::to_string(poly.degree()) + " != " + std::to_string(weight));
  return poly;
}

inline IntPoly legendre_poly(const ParamSet& params, long t) { return legendre_poly(params.p, params.q, t); }

/// L*_n = (-1)^{q_1 t} z^{-q_1 t} (1-z)^{-p_1 t} L_n.
inline IntPoly lstar(const std::vector<long>& p, const std::vector<long>& q, long t, const IntPoly& l) {
  const auto q1 = static_cast<std::size_t>(q.at(0) * t);
  const auto p1 = static_cast<std::size_t>(p.at(0) * t);
  IntPoly r = divide_by_one_minus_z_pow(divide_by_z_pow(l, q1), p1);
  if (q1 % 2 == 1) r = -r;
  return r;
}

inline IntPoly lstar(const ParamSet& params, long t, const IntPoly& l) { return lstar(params.p, params.q, t, l); }

/// T on the monomial basis: z^k -> sum_{i<k} z^i / (k - i). Computed over a
/// common denominator so the O(deg^2) inner loop is integer-only.
inline RatPoly christoffel_transform(const RatPoly& poly) {
  if (poly.degree() <= 0) return {};
  const auto deg = static_cast<std::size_t>(poly.degree());
  const Integer den = common_denominator(poly);
  std::vector<Integer> num(deg + 1);
  for (std::size_t k = 0; k <= deg; ++k) {
    const Rational scaled = poly.coeffs()[k] * Rational(den);
    num[k] = scaled.get_num();
  }
  const Integer d = lcm_upto(deg);
  std::vector<Integer> quot(deg + 1);  // d / j
  for (std::size_t j = 1; j <= deg; ++j) mpz_divexact_ui(quot[j].get_mpz_t(), d.get_mpz_t(), j);
  std::vector<Rational> out(deg);
  const Integer scale = den * d;
  Integer acc;
  for (std::size_t i = 0; i < deg; ++i) {
    acc = 0;
    for (std::size_t k = i + 1; k <= deg; ++k) {
      if (num[k] == 0) continue;
      mpz_addmul(acc.get_mpz_t(), num[k].get_mpz_t(), quot[k - i].get_mpz_t());
    }
    out[i] = make_rational(acc, scale);
  }
  return RatPoly(std::move(out));
}

inline RatPoly christoffel_transform(const IntPoly& poly) { return christoffel_transform(to_rational(poly)); }

/// [T(P), T^2(P), ..., T^m(P)] with no preconditions on P.
inline std::vector<RatPoly> christoffel_iterates(const RatPoly& poly, int m) {
  std::vector<RatPoly> out;
  RatPoly cur = poly;
  for (int i = 0; i < m; ++i) {
    cur = christoffel_transform(cur);
    out.push_back(cur);
  }
  return out;
}

/// T(P)(x) evaluated exactly, using S_k(x) = x S_{k-1}(x) + 1/k, the image
/// of z^k evaluated at x.
inline Rational christoffel_value(const RatPoly& poly, const Rational& x) {
  Rational s = 0;
  Rational total = 0;
  for (std::size_t k = 1; k < poly.size(); ++k) {
    s = s * x + Rational(1, static_cast<unsigned long>(k));
    if (poly.coeffs()[k] != 0) total += poly.coeffs()[k] * s;
  }
  return total;
}

/// Iterates of T applied to L_n for a parameter set satisfying the monotone
/// prefix p_1 <= ... <= p_{m+1}, q_1 <= ... <= q_{m+1}.
inline std::vector<RatPoly> transform_iterates(const ParamSet& params, long t, const IntPoly& l, int m) {
  if (m < 1 || m > params.n() - 1) throw PreconditionError("transform_iterates needs 1 <= m <= n-1");
  if (!params.monotone_prefix(m + 1))
    throw PreconditionError("transform_iterates needs monotone p and q up to index m+1");
  (void)t;
  return christoffel_iterates(to_rational(l), m);
}

/// Multiplier d_{H_1 t} d_{max(H_2 t, [H_1 t/2])} ... d_{max(H_m t, [H_1 t/m])},
/// H the diagonal sums p_l + q_l in descending order.
inline Integer trivial_integrality_multiplier(const std::vector<long>& p, const std::vector<long>& q, long t, int m) {
  std::vector<long> h(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) h[i] = (p[i] + q[i]) * t;
  std::sort(h.begin(), h.end(), std::greater<>());
  Integer mult = 1;
  for (int i = 1; i <= m; ++i) {
    const long hi = i - 1 < static_cast<int>(h.size()) ? h[static_cast<std::size_t>(i - 1)] : 0;
    const long bound = std::max(hi, h[0] / i);
    mult *= lcm_upto(static_cast<std::uint64_t>(bound));
  }
  return mult;
}

/// d_{E_1} ... d_{E_m} with E_1 >= E_2 >= ... the largest entries of the
/// multiset {[H_s t / i] : s = 1..n, i >= 1}. Agrees with the multiplier
/// above for m <= 2 and can be larger from m = 3 on.
inline Integer refined_integrality_multiplier(const std::vector<long>& p, const std::vector<long>& q, long t, int m) {
  std::vector<long> pool;
  for (std::size_t s = 0; s < p.size(); ++s)
    for (long i = 1; i <= m; ++i) pool.push_back((p[s] + q[s]) * t / i);
  std::sort(pool.begin(), pool.end(), std::greater<>());
  Integer mult = 1;
  for (int i = 0; i < m && i < static_cast<int>(pool.size()); ++i)
    mult *= lcm_upto(static_cast<std::uint64_t>(pool[static_cast<std::size_t>(i)]));
  return mult;
}

/// Tuning for the high-precision evaluation of I_n^j.
struct EvaluationOptions {
  /// Hard ceiling on working precision; exceeding it raises PrecisionError.
  Bits max_working_bits = Bits(1) << 22;
  /// Optional growth hint log|v_1| + |log W| from the characteristic values.
  std::optional<double> log_growth_hint;
};

namespace detail {

inline BigFloat log_w(const Rational& z, Bits prec) {
  const Rational w = z / (z - Rational(1));
  if (w <= 0) throw PreconditionError("z must lie outside [0, 1]");
  return bf::log_abs(w, prec);
}

inline long log2_magnitude(const Rational& x) {
  if (x == 0) return 0;
  return static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 2)) -
         static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 2));
}

}  // namespace detail

/// I_n^j(...; z) = L_n log^j(z/(z-1)) - T^j(L_n)(z) at the scaled parameters.
/// The two terms are exponentially large and cancel, so the working precision
/// is raised until the result carries at least `precision` correct bits.
inline BigFloat legendre_function_value(const ParamSet& params, long t, int j, Bits precision,
                                        const EvaluationOptions& options = {}) {
  if (j < 1) throw PreconditionError("legendre_function_value needs j >= 1");
  if (params.m && j > *params.m) throw PreconditionError("legendre_function_value needs j <= m");
  const Rational& z = params.z;
  if (z >= 0 && z <= 1) throw PreconditionError("z must lie outside [0, 1]");
  const IntPoly l = legendre_poly(params, t);
  RatPoly base = to_rational(l);
  for (int i = 1; i < j; ++i) base = christoffel_transform(base);
  const Rational lz = evaluate_exact(l, z);
  const Rational tz = christoffel_value(base, z);

  const long head_bits = detail::log2_magnitude(lz) + 8;
  long guess = 0;
  if (options.log_growth_hint) {
    guess = static_cast<long>(std::ceil(static_cast<double>(t) * *options.log_growth_hint / std::log(2.0)));
  } else {
    guess = head_bits + params.weight() * t;
  }
  Bits working = precision + 64 + std::max(0L, guess);
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (working > options.max_working_bits)
      throw PrecisionError("evaluation of I at t=" + std::to_string(t) + " needs more than " +
                           std::to_string(options.max_working_bits) + " working bits");
    BigFloat lw = detail::log_w(z, working);
    BigFloat head = BigFloat(lz, working) * bf::pow_ui(lw, static_cast<unsigned long>(j));
    BigFloat value = head - BigFloat(tz, working);
    if (value.is_zero() || head.is_zero()) {
      if (head.is_zero() && tz == 0) return BigFloat(precision);
      working *= 2;
      continue;
    }
    const long lost = head.exponent2() - value.exponent2();
    if (working - lost >= precision + 16) return value.with_precision(precision);
    working = precision + lost + 64;
  }
  throw PrecisionError("evaluation of I did not stabilise");
}

// ---------------------------------------------------------------------------
// Structural identities

struct IdentityResult {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct IdentityReport {
  std::vector<IdentityResult> results;
  bool all_passed() const {
    return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.passed; });
  }
  const IdentityResult* find(const std::string& name) const {
    for (const auto& r : results)
      if (r.name == name) return &r;
    return nullptr;
  }
};

struct StructuralOptions {
  long max_weight = 60;           ///< refuse instances with M t above this
  long grid_denominator = 1000;   ///< unit-interval sampling step 1/grid_denominator
  long max_sturm_degree = 60;     ///< skip the root-location check above this degree
  std::size_t permutation_samples = 6;
  unsigned seed = 12345;
};

namespace detail {

inline Integer diagonal_factorial_product(const std::vector<long>& p, const std::vector<long>& q, long t) {
  Integer r = 1;
  for (std::size_t i = 0; i < p.size(); ++i) r *= factorial(static_cast<std::uint64_t>((p[i] + q[i]) * t));
  return r;
}

/// A few permutations of 0..n-1: every one when n! is small, otherwise the
/// identity plus random samples.
inline std::vector<std::vector<std::size_t>> sample_permutations(std::size_t n, std::size_t samples,
                                                                 std::mt19937& rng) {
  std::vector<std::size_t> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  if (n <= 3) {
    auto perm = id;
    do out.push_back(perm);
    while (std::next_permutation(perm.begin(), perm.end()));
    return out;
  }
  out.push_back(id);
  for (std::size_t s = 0; s < samples; ++s) {
    auto perm = id;
    std::shuffle(perm.begin(), perm.end(), rng);
    out.push_back(perm);
  }
  return out;
}

template <class V>
V permute(const V& v, const std::vector<std::size_t>& perm) {
  V out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[perm[i]];
  return out;
}

inline std::string describe(const std::vector<long>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace detail

/// Orthogonality: T^m(W L*) == W T^m(L*) for deg W <= (p_1+q_1) t under the
/// monotone prefix.
inline IdentityResult orthogonality_check(const std::vector<long>& p, const std::vector<long>& q, long t, int m,
                                          const IntPoly& w) {
  ParamSet ps{p, q, m, Rational(-1), {}};
  if (!ps.monotone_prefix(m + 1)) throw PreconditionError("orthogonality needs a monotone prefix up to m+1");
  if (w.degree() > (p[0] + q[0]) * t) throw PreconditionError("orthogonality needs deg W <= (p_1+q_1) t");
  const IntPoly ls = lstar(p, q, t, legendre_poly(p, q, t));
  const RatPoly lhs = christoffel_iterates(to_rational(w * ls), m).back();
  const RatPoly rhs = to_rational(w) * christoffel_iterates(to_rational(ls), m).back();
  IdentityResult r{"orthogonality", lhs == rhs, {}};
  if (!r.passed) r.witness = "p=" + detail::describe(p) + " q=" + detail::describe(q) + " t=" + std::to_string(t);
  return r;
}

/// The multiplier clears T^1(L_n), ..., T^m(L_n). With `refined` the check
/// uses refined_integrality_multiplier instead.
inline IdentityResult trivial_integrality_check(const std::vector<long>& p, const std::vector<long>& q, long t,
                                                int m, bool refined = false) {
  const auto iter = christoffel_iterates(to_rational(legendre_poly(p, q, t)), m);
  const Integer mult =
      refined ? refined_integrality_multiplier(p, q, t, m) : trivial_integrality_multiplier(p, q, t, m);
  IdentityResult r{refined ? "refined-integrality" : "trivial-integrality", true, {}};
  for (std::size_t i = 0; i < iter.size(); ++i) {
    const RatPoly scaled = iter[i] * Rational(mult);
    if (!is_integral(scaled)) {
      r.passed = false;
      r.witness = "T^" + std::to_string(i + 1) + " not cleared for p=" + detail::describe(p) +
                  " q=" + detail::describe(q) + " t=" + std::to_string(t) + ", leftover denominator " +
                  common_denominator(scaled).get_str();
      break;
    }
  }
  return r;
}

/// Degree, orders at 0 and 1, integrality, pair symmetry, bisymmetry, mirror,
/// the unit-interval bound and root location, each reported separately.
inline IdentityReport structural_identity_suite(const std::vector<long>& p, const std::vector<long>& q, long t,
                                                const StructuralOptions& opt = {}) {
  check_exponents(p, q);
  const long weight = t * (std::accumulate(p.begin(), p.end(), 0L) + std::accumulate(q.begin(), q.end(), 0L));
  if (weight > opt.max_weight)
    throw PreconditionError("structural suite limited to M t <= " + std::to_string(opt.max_weight));
  const std::string tag = "p=" + detail::describe(p) + " q=" + detail::describe(q) + " t=" + std::to_string(t);
  IdentityReport report;
  const IntPoly l = legendre_poly(p, q, t);

  {
    IdentityResult r{"degree", l.degree() == weight, {}};
    if (!r.passed) r.witness = tag + " degree " + std::to_string(l.degree());
    report.results.push_back(r);
  }
  {
    const long expect = t * *std::max_element(q.begin(), q.end());
    const auto got = static_cast<long>(l.low_order());
    IdentityResult r{"order-at-0", got == expect, {}};
    if (!r.passed) r.witness = tag + " ord_0=" + std::to_string(got) + " expected " + std::to_string(expect);
    report.results.push_back(r);
  }
  {
    const long expect = t * *std::max_element(p.begin(), p.end());
    const IntPoly mirrored = substitute_one_minus(l);
    const auto got = static_cast<long>(mirrored.low_order());
    IdentityResult r{"order-at-1", got == expect, {}};
    if (!r.passed) r.witness = tag + " ord_1=" + std::to_string(got) + " expected " + std::to_string(expect);
    report.results.push_back(r);
  }

  std::mt19937 rng(opt.seed);
  const auto perms = detail::sample_permutations(p.size(), opt.permutation_samples, rng);
  {
    IdentityResult r{"pair-symmetry", true, {}};
    for (const auto& perm : perms) {
      if (legendre_poly(detail::permute(p, perm), detail::permute(q, perm), t) != l) {
        r.passed = false;
        r.witness = tag + " differs under pair permutation";
        break;
      }
    }
    report.results.push_back(r);
  }
  {
    IdentityResult r{"bisymmetry", true, {}};
    const IntPoly ref = l * detail::diagonal_factorial_product(p, q, t);
    for (const auto& pp : perms) {
      const auto p2 = detail::permute(p, pp);
      for (const auto& qp : perms) {
        const auto q2 = detail::permute(q, qp);
        const IntPoly other = legendre_poly(p2, q2, t) * detail::diagonal_factorial_product(p2, q2, t);
        if (other != ref) {
          r.passed = false;
          r.witness = tag + " vs p'=" + detail::describe(p2) + " q'=" + detail::describe(q2);
          break;
        }
      }
      if (!r.passed) break;
    }
    report.results.push_back(r);
  }
  {
    IntPoly other = substitute_one_minus(legendre_poly(q, p, t));
    if (weight % 2 == 1) other = -other;
    IdentityResult r{"mirror", other == l, {}};
    if (!r.passed) r.witness = tag + " L(p,q;z) != (-1)^M L(q,p;1-z)";
    report.results.push_back(r);
  }
  {
    // |L*| on [0,1] against M!/prod (p_l+q_l)!, at the scaled exponents.
    const IntPoly ls = lstar(p, q, t, l);
    const Rational bound(factorial(static_cast<std::uint64_t>(weight)) / detail::diagonal_factorial_product(p, q, t));
    IdentityResult r{"unit-interval-bound", true, {}};
    for (long i = 0; i <= opt.grid_denominator; ++i) {
      const Rational x = make_rational(Integer(i), Integer(opt.grid_denominator));
      const Rational v = evaluate_exact(ls, x);
      if (abs(v) > bound) {
        r.passed = false;
        r.witness = tag + " at z=" + to_fraction_string(x) + " |L*|=" + to_fraction_string(Rational(abs(v)));
        break;
      }
    }
    report.results.push_back(r);
  }
  if (l.degree() <= opt.max_sturm_degree) {
    // Every root real and inside [0, 1]: the square-free part has as many
    // distinct real roots as its degree, all in [0, 1].
    const IntPoly sf = square_free_part(l);
    const SturmChain chain(sf);
    const int total = chain.count_real();
    const int at_zero = sgn(evaluate_exact(sf, Rational(0))) == 0 ? 1 : 0;
    const int inside = chain.count_in(Rational(0), Rational(1)) + at_zero;
    IdentityResult r{"roots-in-unit-interval", total == sf.degree() && inside == total, {}};
    if (!r.passed)
      r.witness = tag + " real roots " + std::to_string(total) + "/" + std::to_string(sf.degree()) + ", in [0,1] " +
                  std::to_string(inside);
    report.results.push_back(r);
  }
  return report;
}

}  // namespace mlegendre
