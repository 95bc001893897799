#pragma once

// Characteristic roots y_h of zeta prod(y + p_j) = (zeta - 1) prod(y - q_j),
// the values v_h, growth-rate estimation, and per-t recurrence witnesses.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mlegendre/bigfloat.hpp"
#include "mlegendre/errors.hpp"
#include "mlegendre/exact.hpp"
#include "mlegendre/legendre.hpp"
#include "mlegendre/params.hpp"
#include "mlegendre/polynomial.hpp"

namespace mlegendre {

/// zeta prod(y + p_j) - (zeta - 1) prod(y - q_j); monic of degree n.
inline RatPoly characteristic_polynomial(const ParamSet& params) {
  const Rational& zeta = params.z;
  if (zeta == 0 || zeta == 1) throw PreconditionError("characteristic polynomial needs zeta outside {0, 1}");
  RatPoly plus = RatPoly::constant(Rational(1));
  RatPoly minus = RatPoly::constant(Rational(1));
  for (int j = 0; j < params.n(); ++j) {
    plus = plus * RatPoly{Rational(params.p[static_cast<std::size_t>(j)]), Rational(1)};
    minus = minus * RatPoly{Rational(-params.q[static_cast<std::size_t>(j)]), Rational(1)};
  }
  RatPoly r = plus * zeta - minus * Rational(zeta - Rational(1));
  if (r.degree() != params.n() || r.leading() != 1) throw InvariantViolation("characteristic polynomial is not monic");
  return r;
}

struct RootOptions {
  std::size_t max_iterations = 2000;
};

struct RootResult {
  std::vector<BigComplex> roots;
  std::size_t iterations = 0;
  bool near_multiple = false;
  Bits precision = 0;
};

namespace detail {

inline void horner_with_derivative(const std::vector<BigFloat>& c, const BigComplex& x, BigComplex& value,
                                   BigComplex& deriv) {
  const Bits prec = x.precision();
  value = BigComplex(BigFloat(prec), BigFloat(prec));
  deriv = value;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    deriv = deriv * x + value;
    value = value * x;
    value.re += *it;
  }
}

inline BigFloat complex_distance(const BigComplex& a, const BigComplex& b) { return (a - b).abs(); }

}  // namespace detail

/// All roots of a real polynomial by Aberth iteration, starting on the circle of
/// radius 1 + max|c_i| (monic form) with a fixed angular offset.
inline RootResult polynomial_roots(const RatPoly& poly, Bits precision, const RootOptions& opt = {}) {
  if (poly.degree() < 1) throw PreconditionError("root finding needs degree >= 1");
  const Bits wp = precision + 64;
  const auto n = static_cast<std::size_t>(poly.degree());
  std::vector<BigFloat> c;
  for (const auto& x : poly.coeffs()) c.emplace_back(Rational(x / poly.leading()), wp);

  RootResult out;
  out.precision = precision;
  BigFloat radius(1L, wp);
  {
    BigFloat mx(wp);
    for (std::size_t i = 0; i < n; ++i) mx = std::max(mx, bf::abs(c[i]));
    radius += mx;
  }
  const BigFloat two_pi = bf::pi(wp) * BigFloat(2L, wp);
  std::vector<BigComplex> y;
  for (std::size_t k = 0; k < n; ++k) {
    const BigFloat ang = two_pi * BigFloat(static_cast<long>(k), wp) / BigFloat(static_cast<long>(n), wp) +
                         BigFloat(0.4, wp);
    y.emplace_back(radius * bf::cos(ang), radius * bf::sin(ang));
  }

  const BigFloat tol = bf::pow2(-static_cast<long>(wp) + 12, wp);
  BigComplex val(wp), der(wp);
  bool done = false;
  for (std::size_t it = 0; it < opt.max_iterations && !done; ++it) {
    out.iterations = it + 1;
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      detail::horner_with_derivative(c, y[i], val, der);
      if (val.re.is_zero() && val.im.is_zero()) continue;
      const BigComplex ratio = val / der;
      BigComplex sum(wp);
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) sum += BigComplex(BigFloat(1L, wp), BigFloat(wp)) / (y[i] - y[j]);
      const BigComplex denom = BigComplex(BigFloat(1L, wp), BigFloat(wp)) - ratio * sum;
      const BigComplex step = ratio / denom;
      y[i] -= step;
      if (step.abs() > tol * (BigFloat(1L, wp) + y[i].abs())) done = false;
    }
  }
  if (!done) {
    std::string diag = "Aberth iteration did not converge after " + std::to_string(out.iterations) + " sweeps; iterates:";
    for (const auto& r : y) diag += " (" + r.re.to_string(12) + ", " + r.im.to_string(12) + ")";
    throw ConvergenceError(diag);
  }
  // Real roots of a real polynomial: clear round-off imaginary parts.
  const BigFloat im_tol = bf::pow2(-static_cast<long>(wp) / 2, wp);
  for (auto& r : y)
    if (bf::abs(r.im) < im_tol * (BigFloat(1L, wp) + bf::abs(r.re))) r.im = BigFloat(wp);

  const BigFloat sep_tol = bf::pow2(-static_cast<long>(precision) / 4, wp);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (detail::complex_distance(y[i], y[j]) < sep_tol) out.near_multiple = true;
  out.roots = std::move(y);
  return out;
}

/// Largest residual |P(y_h)| / (1 + |y_h|)^n over the returned roots.
inline BigFloat root_residual(const RatPoly& poly, const std::vector<BigComplex>& roots) {
  BigFloat worst(roots.empty() ? Bits(64) : roots[0].precision());
  const auto n = static_cast<unsigned long>(poly.degree());
  for (const auto& y : roots) {
    const Bits prec = y.precision();
    std::vector<BigFloat> c;
    for (const auto& x : poly.coeffs()) c.emplace_back(x, prec);
    BigComplex val(prec), der(prec);
    detail::horner_with_derivative(c, y, val, der);
    const BigFloat scale = bf::pow_ui(BigFloat(1L, prec) + y.abs(), n);
    worst = std::max(worst, val.abs() / scale);
  }
  return worst;
}

/// Roots, characteristic values and the V / W selection.
struct SpectralData {
  std::vector<BigComplex> y;
  std::vector<BigComplex> v;
  std::vector<BigFloat> log_abs_v;
  std::size_t v_index = 0;
  std::optional<std::size_t> w_index;
  BigFloat log_v;
  BigFloat log_w;
  BigFloat log_b;
  Bits precision = 0;
  std::size_t iterations = 0;
  bool near_multiple_root = false;
  bool threshold_ambiguous = false;
  bool values_distinct = true;
  bool moduli_distinct = true;
};

namespace detail {

inline BigFloat xlogx(long x, Bits prec) {
  if (x == 0) return BigFloat(prec);
  const BigFloat bx(x, prec);
  return bx * bf::log(bx);
}

}  // namespace detail

/// log B = p_1 log p_1 + q_1 log q_1 + M log M - 2 (p_1+q_1) log(p_1+q_1)
///         - sum_{j>=2} (p_j+q_j) log(p_j+q_j), with 0 log 0 = 0.
inline BigFloat log_threshold(const ParamSet& params, Bits prec) {
  BigFloat r = detail::xlogx(params.p[0], prec) + detail::xlogx(params.q[0], prec) +
               detail::xlogx(params.weight(), prec) -
               detail::xlogx(params.diagonal(0), prec) * BigFloat(2L, prec);
  for (int j = 1; j < params.n(); ++j) r -= detail::xlogx(params.diagonal(j), prec);
  return r;
}

/// v_h = prod_j (y_h - q_j)^{q_j} (y_h + p_j)^{p_j} / (p_j + q_j)^{p_j + q_j}.
inline SpectralData char_values(const ParamSet& params, const RootResult& roots) {
  const RatPoly cp = characteristic_polynomial(params);
  for (int j = 0; j < params.n(); ++j) {
    const auto uj = static_cast<std::size_t>(j);
    if (params.q[uj] > 0 && evaluate(cp, Rational(params.q[uj])) == 0)
      throw HypothesisError("characteristic value vanishes: y = q_j is a root");
  }
  const Bits prec = roots.precision;
  const Bits wp = roots.roots.empty() ? prec : roots.roots[0].precision();
  struct Entry {
    BigComplex y, v;
    BigFloat lv;
    BigFloat arg;
  };
  std::vector<Entry> entries;
  for (const auto& y : roots.roots) {
    BigComplex v(BigFloat(1L, wp), BigFloat(wp));
    BigFloat lv(wp);
    for (int j = 0; j < params.n(); ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const long pj = params.p[uj];
      const long qj = params.q[uj];
      const BigComplex a = y - BigComplex(BigFloat(qj, wp), BigFloat(wp));
      const BigComplex b = y + BigComplex(BigFloat(pj, wp), BigFloat(wp));
      const BigFloat s(pj + qj, wp);
      v = v * pow_ui(a, static_cast<unsigned long>(qj)) * pow_ui(b, static_cast<unsigned long>(pj));
      v = v * (BigFloat(1L, wp) / bf::pow_ui(s, static_cast<unsigned long>(pj + qj)));
      if (qj > 0) lv += BigFloat(qj, wp) * bf::log(a.abs());
      lv += BigFloat(pj, wp) * bf::log(b.abs());
      lv -= detail::xlogx(pj + qj, wp);
    }
    entries.push_back({y, v, lv, y.arg()});
  }
  const BigFloat tie = bf::pow2(-static_cast<long>(prec) / 2, wp);
  std::sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    if (bf::abs(a.lv - b.lv) > tie) return a.lv > b.lv;
    return a.arg > b.arg;
  });

  SpectralData sd;
  sd.precision = prec;
  sd.iterations = roots.iterations;
  sd.near_multiple_root = roots.near_multiple;
  for (auto& e : entries) {
    sd.y.push_back(e.y);
    sd.v.push_back(e.v);
    sd.log_abs_v.push_back(e.lv);
  }
  sd.v_index = 0;
  sd.log_v = sd.log_abs_v[0];
  sd.log_b = log_threshold(params, wp);
  const BigFloat slack = bf::pow2(-static_cast<long>(prec) / 4, wp);
  for (std::size_t i = 0; i < sd.log_abs_v.size(); ++i) {
    if (bf::abs(sd.log_abs_v[i] - sd.log_b) < slack) sd.threshold_ambiguous = true;
    if (!sd.w_index && sd.log_abs_v[i] <= sd.log_b) sd.w_index = i;
  }
  if (sd.w_index) sd.log_w = sd.log_abs_v[*sd.w_index];
  for (std::size_t a = 0; a < sd.v.size(); ++a)
    for (std::size_t b = a + 1; b < sd.v.size(); ++b) {
      const BigFloat scale = std::max(sd.v[a].abs(), sd.v[b].abs());
      if (detail::complex_distance(sd.v[a], sd.v[b]) <= slack * scale) sd.values_distinct = false;
      if (bf::abs(sd.log_abs_v[a] - sd.log_abs_v[b]) <= slack) sd.moduli_distinct = false;
    }
  return sd;
}

inline RootResult characteristic_roots(const ParamSet& params, Bits precision, const RootOptions& opt = {}) {
  return polynomial_roots(characteristic_polynomial(params), precision, opt);
}

inline SpectralData spectral_data(const ParamSet& params, Bits precision) {
  return char_values(params, characteristic_roots(params, precision));
}

// ---------------------------------------------------------------------------
// Growth rates

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  /// (t, log of the windowed max) for every window start.
  std::vector<std::pair<long, double>> points;
  std::size_t fitted_from = 0;
};

/// Least-squares slope of log max(|f(t)|, ..., |f(t+window-1)|) against t over
/// the upper half of the available window starts. Entries are log|f(t)| for
/// t = t0, t0+1, ...; -infinity marks f(t) = 0.
inline SlopeFit pituk_slope_logs(const std::vector<double>& log_abs, long t0, int window) {
  if (window < 1) throw PreconditionError("window must be positive");
  if (log_abs.size() < static_cast<std::size_t>(window) + 1) throw PreconditionError("sequence too short for slope fit");
  SlopeFit fit;
  const double ninf = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + static_cast<std::size_t>(window) <= log_abs.size(); ++i) {
    double best = ninf;
    for (int w = 0; w < window; ++w) best = std::max(best, log_abs[i + static_cast<std::size_t>(w)]);
    if (best == ninf) continue;
    fit.points.emplace_back(t0 + static_cast<long>(i), best);
  }
  if (fit.points.empty()) throw DomainError("sequence is identically zero");
  if (fit.points.size() < 2) throw PreconditionError("need at least two nonzero windows");
  fit.fitted_from = fit.points.size() / 2;
  if (fit.points.size() - fit.fitted_from < 2) fit.fitted_from = fit.points.size() - 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto cnt = static_cast<double>(fit.points.size() - fit.fitted_from);
  for (std::size_t i = fit.fitted_from; i < fit.points.size(); ++i) {
    const auto x = static_cast<double>(fit.points[i].first);
    const double y = fit.points[i].second;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = cnt * sxx - sx * sx;
  fit.slope = (cnt * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / cnt;
  return fit;
}

inline SlopeFit pituk_slope(const std::vector<BigFloat>& values, long t0, int window) {
  std::vector<double> logs;
  logs.reserve(values.size());
  for (const auto& v : values) {
    if (v.is_zero())
      logs.push_back(-std::numeric_limits<double>::infinity());
    else
      logs.push_back(bf::log(bf::abs(v)).to_double());
  }
  return pituk_slope_logs(logs, t0, window);
}

// ---------------------------------------------------------------------------
// Recurrence witnesses

struct KernelWitness {
  long t = 0;
  long L = 0;
  std::vector<IntPoly> A;  // A_0 .. A_n
  bool annihilates = false;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

struct KernelOptions {
  std::size_t max_unknowns = 2000;
};

/// L = [M n (n-1) / 2] - n + 1.
inline long kernel_degree_offset(const ParamSet& params) {
  const long n = params.n();
  return params.weight() * n * (n - 1) / 2 - n + 1;
}

/// sum_l A_l L_n(scale t + l) with exact polynomial arithmetic.
inline IntPoly kernel_residual(const ParamSet& params, long t, const std::vector<IntPoly>& A) {
  IntPoly acc;
  for (std::size_t l = 0; l < A.size(); ++l) acc += A[l] * legendre_poly(params, t + static_cast<long>(l));
  return acc;
}

/// Nonzero A_0..A_n with deg A_l <= L + M (n - l) and sum_l A_l L_n(t+l) = 0,
/// by fraction-free elimination on the coefficient system. Stops at the first
/// column that depends on the earlier ones.
inline std::optional<KernelWitness> recurrence_kernel_instance(const ParamSet& params, long t,
                                                               const KernelOptions& opt = {}) {
  if (t < 0) throw PreconditionError("scale t must be nonnegative");
  const long n = params.n();
  const long M = params.weight();
  const long L = std::max(0L, kernel_degree_offset(params));
  std::vector<IntPoly> polys;
  for (long l = 0; l <= n; ++l) polys.push_back(legendre_poly(params, t + l));

  struct Column {
    std::size_t l;
    std::size_t shift;
  };
  std::vector<Column> cols;
  for (long l = 0; l <= n; ++l)
    for (long i = 0; i <= L + M * (n - l); ++i)
      cols.push_back({static_cast<std::size_t>(l), static_cast<std::size_t>(i)});
  if (cols.size() > opt.max_unknowns)
    throw PreconditionError("kernel system has " + std::to_string(cols.size()) + " unknowns");
  const auto rows = static_cast<std::size_t>(L + M * n + M * t + 1);

  // mat[r][c]: coefficient of z^r in z^shift L_n(t + l).
  std::vector<std::vector<Integer>> mat(rows, std::vector<Integer>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& p = polys[cols[c].l];
    for (std::size_t k = 0; k < p.size(); ++k) mat[k + cols[c].shift][c] = p.coeffs()[k];
  }

  std::vector<std::size_t> pivot_cols;
  Integer prev = 1;
  std::size_t k = 0;
  std::optional<std::size_t> free_col;
  Integer tmp;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    std::size_t r = k;
    while (r < rows && mat[r][c] == 0) ++r;
    if (r == rows) {
      free_col = c;
      break;
    }
    std::swap(mat[r], mat[k]);
    for (std::size_t i = k + 1; i < rows; ++i) {
      const bool lead_zero = mat[i][c] == 0;
      for (std::size_t j = c + 1; j < cols.size(); ++j) {
        auto& a = mat[i][j];
        if (lead_zero) {
          if (a == 0) continue;
          a *= mat[k][c];
        } else {
          a *= mat[k][c];
          mpz_submul(a.get_mpz_t(), mat[i][c].get_mpz_t(), mat[k][j].get_mpz_t());
        }
        mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), prev.get_mpz_t());
      }
      mat[i][c] = 0;
    }
    prev = mat[k][c];
    pivot_cols.push_back(c);
    ++k;
  }
  if (!free_col) return std::nullopt;

  const std::size_t f = *free_col;
  std::vector<Rational> x(f + 1);
  x[f] = 1;
  for (std::size_t i = k; i-- > 0;) {
    const std::size_t pc = pivot_cols[i];
    Rational acc(mat[i][f]);
    for (std::size_t j = pc + 1; j < f; ++j)
      if (mat[i][j] != 0) acc += Rational(mat[i][j]) * x[j];
    x[pc] = -acc / Rational(mat[i][pc]);
  }
  Integer den = 1;
  for (const auto& v : x) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());

  KernelWitness w;
  w.t = t;
  w.L = L;
  w.unknowns = cols.size();
  w.equations = rows;
  std::vector<std::vector<Integer>> coeffs(static_cast<std::size_t>(n + 1));
  for (long l = 0; l <= n; ++l) coeffs[static_cast<std::size_t>(l)].resize(static_cast<std::size_t>(L + M * (n - l) + 1));
  for (std::size_t c = 0; c <= f; ++c) {
    const Rational s = x[c] * Rational(den);
    coeffs[cols[c].l][cols[c].shift] = s.get_num();
  }
  for (auto& cv : coeffs) w.A.emplace_back(std::move(cv));
  w.annihilates = kernel_residual(params, t, w.A).is_zero();
  return w;
}

}  // namespace mlegendre
