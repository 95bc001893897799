#pragma once

// JSON and text renderings. Real numbers are written as decimal strings at the
// precision they carry, rationals as "num/den".

#include <cmath>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "mlegendre/divisor.hpp"
#include "mlegendre/measure.hpp"
#include "mlegendre/spectral.hpp"

namespace mlegendre {

using Json = nlohmann::ordered_json;

/// Significant decimal digits representable at `prec` bits.
inline std::size_t decimal_digits(Bits prec) {
  return static_cast<std::size_t>(std::floor(static_cast<double>(prec) * std::log10(2.0))) + 1;
}

inline std::string decimal(const BigFloat& x, Bits prec) { return x.to_string(decimal_digits(prec)); }

inline Json to_json(const ParamSet& p) {
  Json j;
  if (!p.name.empty()) j["name"] = p.name;
  j["n"] = p.n();
  if (p.m) j["m"] = *p.m;
  j["p"] = p.p;
  j["q"] = p.q;
  j["z"] = to_fraction_string(p.z);
  j["M"] = p.weight();
  return j;
}

inline Json to_json(const MuProfile& prof) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < prof.intervals(); ++i)
    arr.push_back({{"from", to_fraction_string(prof.breakpoints[i])},
                   {"to", to_fraction_string(prof.breakpoints[i + 1])},
                   {"mu", prof.values[i]}});
  return arr;
}

inline MuProfile mu_profile_from_json(const Json& arr) {
  MuProfile prof;
  for (const auto& e : arr) {
    prof.breakpoints.push_back(parse_rational(e.at("from").get<std::string>()));
    prof.values.push_back(e.at("mu").get<int>());
  }
  if (!arr.empty()) prof.breakpoints.push_back(parse_rational(arr.back().at("to").get<std::string>()));
  return prof;
}

inline Json to_json(const SpectralData& sd) {
  const Bits prec = sd.precision;
  Json j;
  j["precision_bits"] = prec;
  Json roots = Json::array();
  for (std::size_t i = 0; i < sd.y.size(); ++i) {
    roots.push_back({{"y", {{"re", decimal(sd.y[i].re, prec)}, {"im", decimal(sd.y[i].im, prec)}}},
                     {"v", {{"re", decimal(sd.v[i].re, prec)}, {"im", decimal(sd.v[i].im, prec)}}},
                     {"log_abs_v", decimal(sd.log_abs_v[i], prec)}});
  }
  j["roots"] = roots;
  j["V_index"] = sd.v_index + 1;
  j["log_V"] = decimal(sd.log_v, prec);
  if (sd.w_index) {
    j["W_index"] = *sd.w_index + 1;
    j["log_W"] = decimal(sd.log_w, prec);
  } else {
    j["W_index"] = nullptr;
    j["log_W"] = nullptr;
  }
  j["log_B"] = decimal(sd.log_b, prec);
  j["values_distinct"] = sd.values_distinct;
  j["moduli_distinct"] = sd.moduli_distinct;
  j["near_multiple_root"] = sd.near_multiple_root;
  return j;
}

inline Json to_json(const MeasureReport& r) {
  const Bits prec = r.precision;
  const std::size_t digits = decimal_digits(prec) - 2;
  Json j;
  j["params"] = to_json(r.params);
  j["precision_bits"] = prec;
  Json n = Json::array();
  for (const auto& x : r.N) n.push_back(to_fraction_string(x));
  j["N"] = n;
  j["mu_profile"] = to_json(r.mu);
  j["delta"] = decimal(r.delta, prec);
  j["spectral"] = to_json(r.spectral);
  j["log_V"] = decimal(r.log_v, prec);
  j["log_W"] = decimal(r.log_w, prec);
  j["log_B"] = decimal(r.log_b, prec);
  j["sigma"] = decimal(r.sigma, prec);
  j["tau"] = decimal(r.tau, prec);
  j["poly_exponent"] = upper_decimal(r.poly_exponent, digits);
  j["approx_exponent"] = upper_decimal(r.approx_exponent, digits);
  j["hypotheses"] = {{"monotone", r.flags.monotone},
                     {"w_defined", r.flags.w_defined},
                     {"values_distinct", r.flags.values_distinct},
                     {"sigma_positive", r.flags.sigma_positive},
                     {"tau_positive", r.flags.tau_positive}};
  return j;
}

/// Two-column human-readable table.
inline std::string to_table(const MeasureReport& r, std::size_t digits = 20) {
  std::ostringstream os;
  auto row = [&](const std::string& k, const std::string& v) { os << std::left << std::setw(18) << k << v << '\n'; };
  row("instance", r.params.name.empty() ? std::string("(custom)") : r.params.name);
  row("z", to_fraction_string(r.params.z));
  row("n, m, M", std::to_string(r.params.n()) + ", " + std::to_string(*r.params.m) + ", " +
                     std::to_string(r.params.weight()));
  for (std::size_t i = 0; i < r.N.size(); ++i) row("N_" + std::to_string(i + 1), to_fraction_string(r.N[i]));
  row("delta", r.delta.to_string(digits));
  for (std::size_t i = 0; i < r.spectral.y.size(); ++i) {
    row("y_" + std::to_string(i + 1), r.spectral.y[i].re.to_string(digits) + " + " +
                                          r.spectral.y[i].im.to_string(digits) + " i");
    row("log|v_" + std::to_string(i + 1) + "|", r.spectral.log_abs_v[i].to_string(digits));
  }
  row("log V", r.log_v.to_string(digits));
  row("log W", r.log_w.to_string(digits));
  row("log B", r.log_b.to_string(digits));
  row("sigma", r.sigma.to_string(digits));
  row("tau", r.tau.to_string(digits));
  row("poly_exponent", upper_decimal(r.poly_exponent, digits));
  row("approx_exponent", upper_decimal(r.approx_exponent, digits));
  return os.str();
}

/// key,value lines.
inline std::string to_csv(const MeasureReport& r) {
  const Bits prec = r.precision;
  std::ostringstream os;
  os << "key,value\n";
  os << "z," << to_fraction_string(r.params.z) << '\n';
  for (std::size_t i = 0; i < r.N.size(); ++i) os << "N_" << i + 1 << ',' << to_fraction_string(r.N[i]) << '\n';
  os << "delta," << decimal(r.delta, prec) << '\n';
  for (std::size_t i = 0; i < r.spectral.y.size(); ++i) {
    os << "y_" << i + 1 << "_re," << decimal(r.spectral.y[i].re, prec) << '\n';
    os << "y_" << i + 1 << "_im," << decimal(r.spectral.y[i].im, prec) << '\n';
    os << "log_abs_v_" << i + 1 << ',' << decimal(r.spectral.log_abs_v[i], prec) << '\n';
  }
  os << "log_V," << decimal(r.log_v, prec) << '\n';
  os << "log_W," << decimal(r.log_w, prec) << '\n';
  os << "log_B," << decimal(r.log_b, prec) << '\n';
  os << "sigma," << decimal(r.sigma, prec) << '\n';
  os << "tau," << decimal(r.tau, prec) << '\n';
  os << "poly_exponent," << upper_decimal(r.poly_exponent, decimal_digits(prec) - 2) << '\n';
  os << "approx_exponent," << upper_decimal(r.approx_exponent, decimal_digits(prec) - 2) << '\n';
  return os.str();
}

}  // namespace mlegendre
