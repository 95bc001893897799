// mlegendre command-line front end.
//
// Exit status: 0 success, 2 usage, 3 hypothesis failure, 4 internal invariant violation.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mlegendre/mlegendre.hpp"

namespace ml = mlegendre;

namespace {

enum Exit { kOk = 0, kUsage = 2, kHypothesis = 3, kInternal = 4 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string preset;
  std::string z;
  std::optional<int> n;
  std::optional<int> m;
  std::string p;
  std::string q;
  long t = 1;
  std::optional<long> t_max;
  long precision = 512;
  std::string format = "table";
  unsigned threads = 1;
  std::string out;
  std::string config;

  // subcommand specific
  std::string suite = "all";
  long max = 40;
  bool inject_fault = false;
  unsigned seed = 20240611;
  std::size_t corpus = 200;
  std::string what = "legendre";
  int j = 1;
  std::string sequence = "L";
  std::optional<int> window;
  std::optional<double> target;
  double tolerance = 1.0;
  std::string values;
};

std::vector<long> parse_list(const std::string& s, const char* what) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("invalid integer in --") + what + ": '" + item + "'");
    }
  }
  return out;
}

/// Flat key = value lines; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long r = std::stol(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception&) {
    throw UsageError("config key '" + key + "' needs an integer, got '" + v + "'");
  }
}

/// Fills fields not given on the command line from the config file.
void apply_config(RunConfig& cfg, const CLI::App& sub) {
  if (cfg.config.empty()) return;
  const auto kv = read_config_file(cfg.config);
  auto given = [&](const std::string& flag) { return sub.count("--" + flag) > 0; };
  for (const auto& [key, value] : kv) {
    if (given(key)) continue;
    if (key == "preset") cfg.preset = value;
    else if (key == "z") cfg.z = value;
    else if (key == "n") cfg.n = static_cast<int>(to_long(key, value));
    else if (key == "m") cfg.m = static_cast<int>(to_long(key, value));
    else if (key == "p") cfg.p = value;
    else if (key == "q") cfg.q = value;
    else if (key == "t") cfg.t = to_long(key, value);
    else if (key == "t-max") cfg.t_max = to_long(key, value);
    else if (key == "precision") cfg.precision = to_long(key, value);
    else if (key == "format") cfg.format = value;
    else if (key == "threads") cfg.threads = static_cast<unsigned>(to_long(key, value));
    else if (key == "out") cfg.out = value;
    else throw UsageError("unknown config key '" + key + "'");
  }
}

void check_common(const RunConfig& cfg) {
  if (cfg.precision < 64) throw UsageError("--precision must be at least 64");
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "table")
    throw UsageError("--format must be json, csv or table");
  if (cfg.threads < 1) throw UsageError("--threads must be positive");
}

ml::ParamSet build_params(const RunConfig& cfg, bool need_m) {
  ml::ParamSet ps;
  if (!cfg.preset.empty()) {
    auto found = ml::find_preset(cfg.preset);
    if (!found) throw UsageError("unknown preset '" + cfg.preset + "' (see 'presets')");
    ps = *found;
  } else {
    ps.z = ml::Rational(-1);
  }
  if (!cfg.p.empty()) ps.p = parse_list(cfg.p, "p");
  if (!cfg.q.empty()) ps.q = parse_list(cfg.q, "q");
  if (!cfg.preset.empty() && (!cfg.p.empty() || !cfg.q.empty())) ps.name.clear();
  if (!cfg.z.empty()) {
    if (cfg.z.find('.') != std::string::npos || cfg.z.find('e') != std::string::npos)
      throw UsageError("--z must be an exact rational a/b");
    ps.z = ml::parse_rational(cfg.z);
  }
  if (cfg.m) ps.m = *cfg.m;
  if (ps.p.empty()) throw UsageError("no parameters: give --preset or --p/--q");
  if (ps.q.empty()) ps.q.assign(ps.p.size(), 0);
  if (cfg.n && *cfg.n != ps.n())
    throw UsageError("--n " + std::to_string(*cfg.n) + " does not match " + std::to_string(ps.n()) + " exponents");
  if (need_m && !ps.m) throw UsageError("this subcommand needs --m");
  try {
    ps.validate();
  } catch (const ml::PreconditionError& e) {
    throw UsageError(e.what());
  }
  return ps;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  f << text;
}

std::string dump(const ml::Json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_presets(const RunConfig& cfg) {
  const auto cat = ml::preset_catalog();
  if (cfg.format == "json") {
    ml::Json arr = ml::Json::array();
    for (const auto& p : cat) arr.push_back(ml::to_json(p));
    emit(cfg, dump(arr));
  } else if (cfg.format == "csv") {
    std::ostringstream os;
    os << "name,z,n,m,p,q\n";
    for (const auto& p : cat) {
      auto join = [](const std::vector<long>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
        return s;
      };
      os << p.name << ',' << ml::to_fraction_string(p.z) << ',' << p.n() << ',' << *p.m << ',' << join(p.p) << ','
         << join(p.q) << '\n';
    }
    emit(cfg, os.str());
  } else {
    std::ostringstream os;
    for (const auto& p : cat) {
      os << p.name << "  z=" << ml::to_fraction_string(p.z) << " n=" << p.n() << " m=" << *p.m << " p=";
      for (std::size_t i = 0; i < p.p.size(); ++i) os << (i ? "," : "") << p.p[i];
      os << " q=";
      for (std::size_t i = 0; i < p.q.size(); ++i) os << (i ? "," : "") << p.q[i];
      os << '\n';
    }
    emit(cfg, os.str());
  }
  return kOk;
}

int cmd_bound(const RunConfig& cfg) {
  const auto ps = build_params(cfg, true);
  const auto rep = ml::measure_bound(ps, static_cast<ml::Bits>(cfg.precision));
  if (cfg.format == "json")
    emit(cfg, dump(ml::to_json(rep)));
  else if (cfg.format == "csv")
    emit(cfg, ml::to_csv(rep));
  else
    emit(cfg, ml::to_table(rep));
  return kOk;
}

int cmd_construct(const RunConfig& cfg) {
  const auto ps = build_params(cfg, false);
  if (cfg.t < 0) throw UsageError("--t must be nonnegative");
  const ml::IntPoly l = ml::legendre_poly(ps, cfg.t);
  ml::RatPoly out;
  if (cfg.what == "legendre") {
    out = ml::to_rational(l);
  } else if (cfg.what == "lstar") {
    out = ml::to_rational(ml::lstar(ps, cfg.t, l));
  } else if (cfg.what == "transform") {
    if (cfg.j < 1) throw UsageError("--j must be at least 1");
    out = ml::christoffel_iterates(ml::to_rational(l), cfg.j).back();
  } else {
    throw UsageError("--what must be legendre, lstar or transform");
  }
  if (cfg.format == "json") {
    ml::Json j;
    j["params"] = ml::to_json(ps);
    j["t"] = cfg.t;
    j["what"] = cfg.what;
    if (cfg.what == "transform") j["j"] = cfg.j;
    j["degree"] = out.is_zero() ? ml::Json(nullptr) : ml::Json(out.degree());
    ml::Json c = ml::Json::array();
    for (const auto& x : out.coeffs()) c.push_back(ml::to_fraction_string(x));
    j["coefficients"] = c;
    emit(cfg, dump(j));
  } else if (cfg.format == "csv") {
    std::ostringstream os;
    os << "power,coefficient\n";
    for (std::size_t k = 0; k < out.size(); ++k) os << k << ',' << ml::to_fraction_string(out.coeffs()[k]) << '\n';
    emit(cfg, os.str());
  } else {
    emit(cfg, ml::render(out));
  }
  return kOk;
}

int cmd_delta(const RunConfig& cfg) {
  const auto ps = build_params(cfg, false);
  const long lo = cfg.t;
  const long hi = cfg.t_max.value_or(cfg.t);
  if (lo < 1 || hi < lo) throw UsageError("need 1 <= --t <= --t-max");
  const auto prof = ml::mu_profile(ps);
  const auto bits = static_cast<ml::Bits>(cfg.precision);
  const ml::BigFloat delta = ml::delta_limit(prof, bits);
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<ml::Integer> values(count);
  ml::parallel_for(count, cfg.threads,
                   [&](std::size_t i) { values[i] = ml::delta_t(ps, lo + static_cast<long>(i), prof); });
  auto log_over_t = [&](std::size_t i) {
    const ml::BigFloat v(values[i], bits);
    return ml::bf::log(v) / ml::BigFloat(lo + static_cast<long>(i), bits);
  };
  const std::size_t digits = ml::decimal_digits(bits);
  if (cfg.format == "json") {
    ml::Json j;
    j["params"] = ml::to_json(ps);
    j["mu_profile"] = ml::to_json(prof);
    j["delta"] = delta.to_string(digits);
    ml::Json arr = ml::Json::array();
    for (std::size_t i = 0; i < count; ++i)
      arr.push_back({{"t", lo + static_cast<long>(i)},
                     {"delta_t", values[i].get_str()},
                     {"log_over_t", log_over_t(i).to_string(digits)}});
    j["delta_t"] = arr;
    emit(cfg, dump(j));
  } else if (cfg.format == "csv") {
    std::ostringstream os;
    os << "t,delta_t,log_over_t\n";
    for (std::size_t i = 0; i < count; ++i)
      os << lo + static_cast<long>(i) << ',' << values[i].get_str() << ',' << log_over_t(i).to_string(digits) << '\n';
    emit(cfg, os.str());
  } else {
    std::ostringstream os;
    os << "mu profile:\n";
    for (std::size_t i = 0; i < prof.intervals(); ++i)
      os << "  [" << prof.breakpoints[i].get_str() << ", " << prof.breakpoints[i + 1].get_str() << ")  mu = " << prof.values[i]
         << '\n';
    os << "delta = " << delta.to_string(30) << '\n';
    for (std::size_t i = 0; i < count; ++i)
      os << "t = " << lo + static_cast<long>(i) << "  Delta_t = " << values[i].get_str()
         << "  log(Delta_t)/t = " << log_over_t(i).to_string(15) << '\n';
    emit(cfg, os.str());
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg) {
  ml::SuiteOptions opt;
  opt.corpus_size = cfg.corpus;
  opt.seed = cfg.seed;
  opt.hyperharmonic_max = cfg.max;
  opt.threads = cfg.threads;
  opt.inject_fault = cfg.inject_fault;
  std::vector<std::string> names;
  if (cfg.suite == "all")
    names = ml::suite_names();
  else
    names.push_back(cfg.suite);
  std::vector<ml::SuiteResult> results;
  for (const auto& n : names) {
    try {
      results.push_back(ml::run_suite(n, opt));
    } catch (const ml::PreconditionError& e) {
      throw UsageError(e.what());
    }
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed();
  if (cfg.format == "json") {
    ml::Json arr = ml::Json::array();
    for (const auto& r : results)
      arr.push_back({{"suite", r.name}, {"checked", r.checked}, {"passed", r.passed()}, {"failures", r.failures}});
    emit(cfg, dump({{"passed", ok}, {"suites", arr}}));
  } else if (cfg.format == "csv") {
    std::ostringstream os;
    os << "suite,checked,passed,failures\n";
    for (const auto& r : results)
      os << r.name << ',' << r.checked << ',' << (r.passed() ? "true" : "false") << ',' << r.failures.size() << '\n';
    emit(cfg, os.str());
  } else {
    std::ostringstream os;
    for (const auto& r : results) {
      os << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checked << " checked)\n";
      for (const auto& f : r.failures) os << "    " << f << '\n';
    }
    emit(cfg, os.str());
  }
  return ok ? kOk : kInternal;
}

std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read values file '" + path + "'");
  std::vector<double> logs;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ml::BigFloat v(256);
    if (mpfr_set_str(v.get(), line.c_str(), 10, MPFR_RNDN) != 0) throw UsageError("bad value '" + line + "'");
    logs.push_back(v.is_zero() ? -std::numeric_limits<double>::infinity() : ml::bf::log(ml::bf::abs(v)).to_double());
  }
  return logs;
}

int cmd_asymptotics(const RunConfig& cfg) {
  std::vector<double> logs;
  const long t0 = cfg.t;
  int window = cfg.window.value_or(1);
  std::optional<double> target = cfg.target;
  std::string label = "values";
  double tolerance = cfg.tolerance;
  if (!cfg.values.empty()) {
    logs = read_values_file(cfg.values);
  } else {
    const auto ps = build_params(cfg, false);
    if (!cfg.t_max) throw UsageError("asymptotics needs --t-max");
    const long t1 = *cfg.t_max;
    if (t0 < 1 || t1 <= t0) throw UsageError("need 1 <= --t < --t-max");
    window = cfg.window.value_or(ps.n());
    const auto count = static_cast<std::size_t>(t1 - t0 + 1);
    logs.assign(count, 0.0);
    const double log_z = ml::log_abs(ps.z);
    const double log_1mz = ml::log_abs(ml::Rational(ml::Rational(1) - ps.z));
    const double offset = -static_cast<double>(ps.q[0]) * log_z - static_cast<double>(ps.p[0]) * log_1mz;
    label = cfg.sequence;
    if (cfg.sequence == "L") {
      ml::parallel_for(count, cfg.threads, [&](std::size_t i) {
        const ml::IntPoly l = ml::legendre_poly(ps, t0 + static_cast<long>(i));
        const ml::Rational v = ml::evaluate_exact(l, ps.z);
        logs[i] = v == 0 ? -std::numeric_limits<double>::infinity() : ml::log_abs(v);
      });
    } else if (cfg.sequence == "I" || cfg.sequence == "I-normalized") {
      if (ps.z >= 0 && ps.z <= 1) throw UsageError("z must lie outside [0, 1]");
      const bool normalized = cfg.sequence == "I-normalized";
      ml::parallel_for(count, cfg.threads, [&](std::size_t i) {
        const long t = t0 + static_cast<long>(i);
        const ml::BigFloat v = ml::legendre_function_value(ps, t, cfg.j, 128);
        double lv = v.is_zero() ? -std::numeric_limits<double>::infinity() : ml::bf::log(ml::bf::abs(v)).to_double();
        if (normalized) lv += static_cast<double>(t) * offset;
        logs[i] = lv;
      });
    } else {
      throw UsageError("--sequence must be L, I or I-normalized");
    }
    if (cfg.tolerance <= 0) throw UsageError("--tolerance must be positive");
    if (!target) {
      // Dominant growth rate for L, the W rate for I.
      const auto sd = ml::spectral_data(ps, 128);
      if (cfg.sequence == "L")
        target = sd.log_v.to_double();
      else if (sd.w_index)
        target = sd.log_w.to_double() + (cfg.sequence == "I-normalized" ? offset : 0.0);
    }
  }
  ml::SlopeFit fit;
  try {
    fit = ml::pituk_slope_logs(logs, t0, window);
  } catch (const ml::PreconditionError& e) {
    throw UsageError(e.what());
  }
  const bool have_target = target.has_value();
  const double gap = have_target ? std::fabs(fit.slope - *target) / std::fabs(*target) * 100.0 : 0.0;
  const bool within = have_target && gap <= tolerance;
  auto fmt = [](double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  };
  if (cfg.format == "json") {
    ml::Json j;
    j["sequence"] = label;
    j["window"] = window;
    ml::Json pts = ml::Json::array();
    for (const auto& [t, v] : fit.points) pts.push_back({{"t", t}, {"log_windowed_max", fmt(v)}});
    j["points"] = pts;
    j["fit_from_t"] = fit.points[fit.fitted_from].first;
    j["slope"] = fmt(fit.slope);
    if (have_target) {
      j["target"] = fmt(*target);
      j["relative_gap_percent"] = fmt(gap);
      j["tolerance_percent"] = fmt(tolerance);
      j["within_tolerance"] = within;
    }
    emit(cfg, dump(j));
  } else {
    std::ostringstream os;
    os << "t,log_windowed_max\n";
    for (const auto& [t, v] : fit.points) os << t << ',' << fmt(v) << '\n';
    os << "# sequence," << label << '\n';
    os << "# window," << window << '\n';
    os << "# fit_from_t," << fit.points[fit.fitted_from].first << '\n';
    os << "# slope," << fmt(fit.slope) << '\n';
    if (have_target) {
      os << "# target," << fmt(*target) << '\n';
      os << "# relative_gap_percent," << fmt(gap) << '\n';
      os << "# within_tolerance," << (within ? "true" : "false") << '\n';
    }
    emit(cfg, os.str());
  }
  return kOk;
}

void add_common(CLI::App* sub, RunConfig& cfg, bool params) {
  if (params) {
    sub->add_option("--preset", cfg.preset, "Named parameter set (see 'presets')");
    sub->add_option("--z", cfg.z, "Evaluation point as an exact rational a/b");
    sub->add_option("--n", cfg.n, "Number of exponent pairs (checked against --p)");
    sub->add_option("--m", cfg.m, "Number of simultaneous approximations");
    sub->add_option("--p", cfg.p, "Comma-separated p_1,...,p_n");
    sub->add_option("--q", cfg.q, "Comma-separated q_1,...,q_n");
    sub->add_option("--t", cfg.t, "Scale t (or first t of a range)");
    sub->add_option("--t-max", cfg.t_max, "Last t of a range");
  }
  sub->add_option("--precision", cfg.precision, "Working precision in bits")->capture_default_str();
  sub->add_option("--format", cfg.format, "json, csv or table")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Worker thread cap")->capture_default_str();
  sub->add_option("--out", cfg.out, "Write output to this file");
  sub->add_option("--config", cfg.config, "Flat key = value file; flags take precedence");
}

void report_error(const char* kind, const std::string& msg) {
  ml::Json j{{"error", kind}, {"message", msg}};
  std::cerr << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiple Legendre polynomials and measure bounds for logarithms"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* bound = app.add_subcommand("bound", "Irrationality / nonquadraticity exponent for one instance");
  add_common(bound, cfg, true);

  auto* verify = app.add_subcommand("verify", "Run identity and integrality suites");
  add_common(verify, cfg, false);
  verify->add_option("--suite", cfg.suite, "Suite name or 'all'")->capture_default_str();
  verify->add_option("--max", cfg.max, "Range bound for the hyperharmonic suite")->capture_default_str();
  verify->add_option("--corpus", cfg.corpus, "Randomized corpus size")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "Corpus seed")->capture_default_str();
  verify->add_flag("--inject-fault", cfg.inject_fault, "Corrupt one constructed coefficient");

  auto* asym = app.add_subcommand("asymptotics", "Growth-rate estimate of L or I sequences");
  add_common(asym, cfg, true);
  asym->add_option("--sequence", cfg.sequence, "L, I or I-normalized")->capture_default_str();
  asym->add_option("--j", cfg.j, "Power j of the logarithm for I")->capture_default_str();
  asym->add_option("--window", cfg.window, "Window for the max (default n)");
  asym->add_option("--target", cfg.target, "Expected slope");
  asym->add_option("--tolerance", cfg.tolerance, "Tolerance on the slope, percent")->capture_default_str();
  asym->add_option("--values", cfg.values, "Read f(t), t = --t, --t+1, ... from a file instead");

  auto* construct = app.add_subcommand("construct", "Dump L, L* or T^j(L) in canonical form");
  add_common(construct, cfg, true);
  construct->add_option("--what", cfg.what, "legendre, lstar or transform")->capture_default_str();
  construct->add_option("--j", cfg.j, "Iterate of the transform")->capture_default_str();

  auto* delta = app.add_subcommand("delta", "Delta_t, the mu profile and delta");
  add_common(delta, cfg, true);

  auto* presets = app.add_subcommand("presets", "List shipped parameter sets");
  add_common(presets, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config(cfg, *sub);
    check_common(cfg);
    if (sub == bound) return cmd_bound(cfg);
    if (sub == verify) return cmd_verify(cfg);
    if (sub == asym) return cmd_asymptotics(cfg);
    if (sub == construct) return cmd_construct(cfg);
    if (sub == delta) return cmd_delta(cfg);
    if (sub == presets) return cmd_presets(cfg);
  } catch (const UsageError& e) {
    report_error("usage", e.what());
    return kUsage;
  } catch (const ml::PreconditionError& e) {
    report_error("usage", e.what());
    return kUsage;
  } catch (const ml::DomainError& e) {
    report_error("domain", e.what());
    return kUsage;
  } catch (const ml::PrecisionError& e) {
    report_error("precision", e.what());
    return kUsage;
  } catch (const ml::HypothesisError& e) {
    report_error("hypothesis", e.what());
    return kHypothesis;
  } catch (const ml::InvariantViolation& e) {
    report_error("invariant", e.what());
    return kInternal;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kInternal;
  }
  return kInternal;
}
