#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "mlegendre/bigfloat.hpp"
#include "mlegendre/errors.hpp"
#include "mlegendre/exact.hpp"
#include "mlegendre/params.hpp"
#include "mlegendre/polynomial.hpp"

namespace mlegendre {

struct ExponentProfile {
  std::vector<long> K;      // cross sums p_i + q_j, descending
  std::vector<Rational> N;  // N_1 = K_1, N_j = max(K_j, K_1 / j)
  std::vector<long> H;      // diagonal sums p_l + q_l, descending
};

inline ExponentProfile exponent_profile(const ParamSet& params) {
  ExponentProfile e;
  const auto n = static_cast<std::size_t>(params.n());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e.K.push_back(params.p[i] + params.q[j]);
  std::sort(e.K.begin(), e.K.end(), std::greater<>());
  for (std::size_t j = 0; j < n; ++j) {
    Rational share(e.K[0]);
    share /= Rational(static_cast<long>(j + 1));
    e.N.push_back(std::max(Rational(e.K[j]), share));
  }
  for (std::size_t l = 0; l < n; ++l) e.H.push_back(params.p[l] + params.q[l]);
  std::sort(e.H.begin(), e.H.end(), std::greater<>());
  return e;
}

/// Piecewise-constant mu on [0, 1): values[i] holds on [breakpoints[i], breakpoints[i+1]).
struct MuProfile {
  std::vector<Rational> breakpoints;
  std::vector<int> values;

  std::size_t intervals() const { return values.size(); }
  int at(const Rational& omega) const {
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), omega);
    const auto idx = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
    return values.at(idx);
  }
};

namespace detail {

/// Gain matrix g[j][s] = [(p_j + q_s) w] - [(p_j + q_j) w].
inline std::vector<std::vector<long>> mu_gains(const std::vector<long>& p, const std::vector<long>& q,
                                               const Rational& omega) {
  const std::size_t n = p.size();
  std::vector<std::vector<long>> g(n, std::vector<long>(n));
  for (std::size_t j = 0; j < n; ++j) {
    const Integer base = floor_of(Rational(p[j] + q[j]) * omega);
    for (std::size_t s = 0; s < n; ++s) {
      const Integer v = floor_of(Rational(p[j] + q[s]) * omega) - base;
      g[j][s] = v.get_si();
    }
  }
  return g;
}

inline long mu_brute_force(const std::vector<std::vector<long>>& g) {
  std::vector<std::size_t> perm(g.size());
  std::iota(perm.begin(), perm.end(), 0);
  long best = std::numeric_limits<long>::min();
  do {
    long s = 0;
    for (std::size_t j = 0; j < perm.size(); ++j) s += g[j][perm[j]];
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Maximum-weight assignment by DP over subsets of used columns.
inline long mu_assignment(const std::vector<std::vector<long>>& g) {
  const std::size_t n = g.size();
  if (n > 24) throw PreconditionError("mu evaluation limited to n <= 24");
  const long unset = std::numeric_limits<long>::min();
  std::vector<long> dp(std::size_t(1) << n, unset);
  dp[0] = 0;
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (dp[mask] == unset) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (row >= n) continue;
    for (std::size_t s = 0; s < n; ++s) {
      if (mask & (std::size_t(1) << s)) continue;
      auto& slot = dp[mask | (std::size_t(1) << s)];
      slot = std::max(slot, dp[mask] + g[row][s]);
    }
  }
  return dp.back();
}

}  // namespace detail

/// mu(omega) = max over permutations sigma of sum_j [(p_j + q_sigma(j)) w] - [(p_j + q_j) w].
inline int mu_of_omega(const std::vector<long>& p, const std::vector<long>& q, const Rational& omega) {
  if (omega < 0 || omega >= 1) throw PreconditionError("mu needs 0 <= omega < 1");
  const auto g = detail::mu_gains(p, q, omega);
  const long v = p.size() <= 8 ? detail::mu_brute_force(g) : detail::mu_assignment(g);
  return static_cast<int>(v);
}

inline int mu_of_omega(const ParamSet& params, const Rational& omega) { return mu_of_omega(params.p, params.q, omega); }

inline MuProfile mu_profile(const ParamSet& params) {
  std::vector<Rational> cuts;
  for (long pi : params.p)
    for (long qj : params.q) {
      const long den = pi + qj;
      for (long c = 0; c < den; ++c) cuts.push_back(make_rational(Integer(c), Integer(den)));
    }
  if (cuts.empty()) cuts.emplace_back(0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  MuProfile prof;
  for (const auto& u : cuts) {
    const int v = mu_of_omega(params, u);
    if (!prof.values.empty() && prof.values.back() == v) continue;
    prof.breakpoints.push_back(u);
    prof.values.push_back(v);
  }
  prof.breakpoints.emplace_back(1);
  return prof;
}

/// Delta_t = prod over primes sqrt(N_1 t) < s <= N_1 t of s^mu({t/s}).
inline Integer delta_t(const ParamSet& params, long t, const MuProfile& prof) {
  if (t < 1) throw PreconditionError("delta_t needs t >= 1");
  const long n1 = exponent_profile(params).K[0];
  const auto top = static_cast<std::uint64_t>(n1 * t);
  Integer result = 1;
  Integer power;
  for (std::uint64_t s : primes_upto(top)) {
    if (s * s <= top) continue;
    const Rational omega = frac_of(make_rational(Integer(static_cast<unsigned long>(t)), Integer(static_cast<unsigned long>(s))));
    const int mu = prof.at(omega);
    if (mu <= 0) continue;
    mpz_ui_pow_ui(power.get_mpz_t(), s, static_cast<unsigned long>(mu));
    result *= power;
  }
  return result;
}

inline Integer delta_t(const ParamSet& params, long t) { return delta_t(params, t, mu_profile(params)); }

// ---------------------------------------------------------------------------
// Digamma

namespace detail {

class BernoulliCache {
 public:
  /// B_{2k} for k = 0..count-1.
  std::vector<Rational> even(std::size_t count) {
    std::lock_guard<std::mutex> lock(mutex_);
    extend(2 * count);
    std::vector<Rational> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(values_[2 * k]);
    return out;
  }

 private:
  // B_m from sum_{k<=m} C(m+1, k) B_k = 0.
  void extend(std::size_t upto) {
    if (values_.empty()) values_.emplace_back(1);
    while (values_.size() <= upto) {
      const std::size_t m = values_.size();
      Rational acc = 0;
      Integer binom = 1;  // C(m+1, k)
      for (std::size_t k = 0; k < m; ++k) {
        if (k > 0) {
          binom *= static_cast<unsigned long>(m + 2 - k);
          mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(k));
        }
        if (values_[k] != 0) acc += Rational(binom) * values_[k];
      }
      values_.push_back(-acc / Rational(static_cast<unsigned long>(m + 1)));
    }
  }

  std::mutex mutex_;
  std::vector<Rational> values_;
};

inline BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

}  // namespace detail

/// B_0, B_2, ..., B_{2(count-1)}.
inline std::vector<Rational> bernoulli_even(std::size_t count) { return detail::bernoulli_cache().even(count); }

/// psi(x) = Gamma'(x) / Gamma(x) for rational x > 0. The argument is shifted
/// by the recurrence psi(x) = psi(x+1) - 1/x until the asymptotic expansion
/// psi(X) ~ log X - 1/(2X) - sum B_{2k} / (2k X^{2k}) converges to the
/// working precision; the truncation error is below the first omitted term.
inline BigFloat digamma(const Rational& x, Bits precision) {
  if (x <= 0) throw DomainError("digamma needs x > 0");
  const Bits wp = precision + 32;
  const long target = static_cast<long>(wp / 2 + 8);
  Rational shift_sum = 0;
  Rational big = x;
  while (big < target) {
    shift_sum += Rational(1) / big;
    big += 1;
  }
  const BigFloat X(big, wp);
  BigFloat result = bf::log(X) - BigFloat(1L, wp) / (X * BigFloat(2L, wp));
  const BigFloat inv2 = BigFloat(1L, wp) / (X * X);
  BigFloat power = inv2;  // X^{-2k}
  const BigFloat eps = bf::pow2(-static_cast<long>(wp), wp);
  std::size_t count = 32;
  std::vector<Rational> bern = bernoulli_even(count);
  bool converged = false;
  for (std::size_t k = 1; k < 4 * static_cast<std::size_t>(wp); ++k) {
    if (k >= bern.size()) {
      count *= 2;
      bern = bernoulli_even(count);
    }
    const Rational coef = bern[k] / Rational(static_cast<unsigned long>(2 * k));
    const BigFloat term = BigFloat(coef, wp) * power;
    result -= term;
    if (bf::abs(term) < eps) {
      converged = true;
      break;
    }
    power *= inv2;
  }
  if (!converged) throw ConvergenceError("digamma asymptotic series did not converge");
  result -= BigFloat(shift_sum, wp);
  return result.with_precision(precision);
}

/// delta = sum_h mu_h (psi(u_{h+1}) - psi(u_h)).
inline BigFloat delta_limit(const MuProfile& prof, Bits precision) {
  const Bits wp = precision + 16;
  BigFloat total(wp);
  for (std::size_t h = 0; h < prof.intervals(); ++h) {
    if (prof.values[h] == 0) continue;
    const BigFloat diff = digamma(prof.breakpoints[h + 1], wp) - digamma(prof.breakpoints[h], wp);
    total += diff * BigFloat(static_cast<long>(prof.values[h]), wp);
  }
  return total.with_precision(precision);
}

inline BigFloat delta_limit(const ParamSet& params, Bits precision) { return delta_limit(mu_profile(params), precision); }

/// d_{[N_1 t]} ... d_{[N_m t]}.
inline Integer strong_multiplier(const ExponentProfile& e, long t, int m) {
  Integer mult = 1;
  for (int j = 0; j < m; ++j) mult *= lcm_upto(e.N.at(static_cast<std::size_t>(j)) * Rational(t));
  return mult;
}

struct StrongIntegrityResult {
  bool holds = true;
  Integer delta;
  Integer multiplier;
  std::string witness;
};

/// Delta_t^{-1} d_{N_1 t} ... d_{N_m t} T^m(L_n) has integer coefficients.
inline StrongIntegrityResult strong_integrality_check(const ParamSet& params, long t,
                                                      const std::vector<RatPoly>& transforms) {
  if (!params.m) throw PreconditionError("strong integrality needs m");
  const int m = *params.m;
  if (static_cast<int>(transforms.size()) < m) throw PreconditionError("need T^1..T^m");
  StrongIntegrityResult r;
  const ExponentProfile e = exponent_profile(params);
  r.delta = delta_t(params, t);
  r.multiplier = strong_multiplier(e, t, m);
  const RatPoly& tm = transforms[static_cast<std::size_t>(m - 1)];
  for (std::size_t i = 0; i < tm.size(); ++i) {
    const Rational scaled = tm.coeffs()[i] * Rational(r.multiplier);
    if (scaled.get_den() != 1 || !mpz_divisible_p(scaled.get_num_mpz_t(), r.delta.get_mpz_t())) {
      r.holds = false;
      r.witness = "coefficient of z^" + std::to_string(i) + " at t=" + std::to_string(t);
      break;
    }
  }
  return r;
}

}  // namespace mlegendre
