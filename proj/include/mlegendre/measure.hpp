#pragma once

// Irrationality and nonquadraticity exponents for log(z/(z-1)), z = a/b < 0.
// z > 1 is accepted as well; it is the mirror image of 1 - z < 0.

#include <optional>
#include <string>
#include <vector>

#include "mlegendre/bigfloat.hpp"
#include "mlegendre/divisor.hpp"
#include "mlegendre/errors.hpp"
#include "mlegendre/params.hpp"
#include "mlegendre/spectral.hpp"

namespace mlegendre {

struct HypothesisFlags {
  bool monotone = false;
  bool w_defined = false;
  bool values_distinct = false;
  bool sigma_positive = false;
  bool tau_positive = false;

  bool all() const { return monotone && w_defined && values_distinct && sigma_positive && tau_positive; }
};

struct MeasureReport {
  ParamSet params;
  Bits precision = 0;
  std::vector<Rational> N;  // N_1 .. N_m
  MuProfile mu;
  BigFloat delta;
  SpectralData spectral;
  BigFloat log_v;
  BigFloat log_w;
  BigFloat log_b;
  BigFloat sigma;
  BigFloat tau;
  BigFloat poly_exponent;    // sigma / tau
  BigFloat approx_exponent;  // sigma / tau + 1
  HypothesisFlags flags;
};

/// sigma = log V - q_1 log|z| - p_1 log|1-z| + N_1 + ... + N_m - delta + (M - p_1 - q_1) log b,
/// tau = -(the same expression with log W in place of log V).
struct SigmaTau {
  BigFloat sigma;
  BigFloat tau;
};

inline BigFloat measure_common_term(const ParamSet& params, const std::vector<Rational>& N, const BigFloat& delta,
                                    Bits prec) {
  const Rational& z = params.z;
  BigFloat c(prec);
  if (params.q[0] != 0) c -= BigFloat(params.q[0], prec) * bf::log_abs(z, prec);
  c -= BigFloat(params.p[0], prec) * bf::log_abs(Rational(1) - z, prec);
  for (const auto& nj : N) c += BigFloat(nj, prec);
  c -= delta;
  const long extra = params.weight() - params.diagonal(0);
  if (params.z_den() != 1 && extra != 0)
    c += BigFloat(extra, prec) * bf::log_abs(Rational(params.z_den()), prec);
  return c;
}

inline SigmaTau sigma_tau(const ParamSet& params, const BigFloat& delta, const BigFloat& log_v, const BigFloat& log_w,
                          Bits prec, bool require_positive = true) {
  if (!params.m) throw PreconditionError("sigma and tau need m");
  if (!delta.is_finite() || !log_v.is_finite() || !log_w.is_finite())
    throw PreconditionError("sigma and tau need finite inputs");
  const ExponentProfile e = exponent_profile(params);
  const std::vector<Rational> N(e.N.begin(), e.N.begin() + *params.m);
  const BigFloat c = measure_common_term(params, N, delta, prec);
  SigmaTau st{log_v + c, -(log_w + c)};
  if (require_positive) {
    if (st.tau.sign() <= 0) throw HypothesisError("tau = " + st.tau.to_string(12) + " is not positive");
    if (st.sigma.sign() <= 0) throw HypothesisError("sigma = " + st.sigma.to_string(12) + " is not positive");
  }
  return st;
}

struct MeasureOptions {
  /// Largest precision reached by automatic retries near the W threshold.
  Bits max_precision = Bits(1) << 14;
};

inline MeasureReport measure_bound(const ParamSet& params, Bits precision, const MeasureOptions& opt = {}) {
  params.validate();
  if (!params.m) throw PreconditionError("measure bound needs m");
  MeasureReport rep;
  rep.params = params;
  rep.flags.monotone = params.monotone();
  if (!rep.flags.monotone)
    throw HypothesisError("monotonicity p_1 <= ... <= p_{m+1}, q_1 <= ... <= q_{m+1} fails");

  Bits prec = precision;
  SpectralData sd = spectral_data(params, prec);
  while (sd.threshold_ambiguous && prec * 2 <= opt.max_precision) {
    prec *= 2;
    sd = spectral_data(params, prec);
  }
  rep.precision = precision;
  rep.flags.values_distinct = sd.values_distinct;
  rep.flags.w_defined = sd.w_index.has_value();
  if (!rep.flags.values_distinct) throw HypothesisError("characteristic values v_h are not pairwise distinct");
  if (!rep.flags.w_defined) throw HypothesisError("no characteristic value satisfies |v| <= B; W undefined");

  const ExponentProfile e = exponent_profile(params);
  rep.N.assign(e.N.begin(), e.N.begin() + *params.m);
  rep.mu = mu_profile(params);
  const Bits wp = prec + 32;
  rep.delta = delta_limit(rep.mu, wp);
  rep.log_v = sd.log_v.with_precision(wp);
  rep.log_w = sd.log_w.with_precision(wp);
  rep.log_b = sd.log_b.with_precision(wp);
  rep.spectral = std::move(sd);

  const SigmaTau st = sigma_tau(params, rep.delta, rep.log_v, rep.log_w, wp, false);
  rep.sigma = st.sigma;
  rep.tau = st.tau;
  rep.flags.sigma_positive = st.sigma.sign() > 0;
  rep.flags.tau_positive = st.tau.sign() > 0;
  if (!rep.flags.tau_positive) throw HypothesisError("tau = " + st.tau.to_string(12) + " is not positive");
  if (!rep.flags.sigma_positive) throw HypothesisError("sigma = " + st.sigma.to_string(12) + " is not positive");
  rep.poly_exponent = (st.sigma / st.tau).with_precision(precision);
  rep.approx_exponent = (rep.poly_exponent + BigFloat(1L, precision)).with_precision(precision);
  rep.delta = rep.delta.with_precision(precision);
  rep.log_v = rep.log_v.with_precision(precision);
  rep.log_w = rep.log_w.with_precision(precision);
  rep.log_b = rep.log_b.with_precision(precision);
  rep.sigma = rep.sigma.with_precision(precision);
  rep.tau = rep.tau.with_precision(precision);
  return rep;
}

/// Decimal string of an exponent rounded upward, the weaker of the two bounds.
inline std::string upper_decimal(const BigFloat& x, std::size_t digits) { return x.to_fixed(digits, MPFR_RNDU); }

// ---------------------------------------------------------------------------
// Presets

inline std::vector<ParamSet> preset_catalog() {
  std::vector<ParamSet> out;
  out.push_back({{4, 5, 3}, {1, 2, 0}, 1, Rational(-1), "log2-m1"});
  out.push_back({{5, 6, 7, 4}, {1, 2, 3, 0}, 2, Rational(-1), "log2-m2"});
  out.push_back({{6, 7, 8, 9}, {10, 11, 12, 13}, 3, Rational(-4), "log54-m3"});
  out.push_back({{8, 9, 10, 11}, {12, 13, 14, 15}, 3, Rational(-5), "log65-m3"});
  out.push_back({{14, 15, 16, 17, 18}, {19, 20, 21, 22, 23}, 4, Rational(-19), "log2019-m4"});
  // n = 2, m = 1 shape with q_1 = 0, q_2 = p_2 - p_1.
  out.push_back({{5, 6}, {0, 1}, 1, Rational(-1), "hmv-n2"});
  for (const auto& p : out) p.validate();
  return out;
}

inline std::optional<ParamSet> find_preset(const std::string& name) {
  for (auto& p : preset_catalog())
    if (p.name == name) return p;
  return std::nullopt;
}

}  // namespace mlegendre
