#pragma once

// Randomized instance corpora and the verification suites run by the CLI and
// the acceptance checks. Every suite is deterministic for a given seed.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "mlegendre/divisor.hpp"
#include "mlegendre/legendre.hpp"
#include "mlegendre/measure.hpp"
#include "mlegendre/parallel.hpp"
#include "mlegendre/series.hpp"

namespace mlegendre {

struct CorpusEntry {
  ParamSet params;
  long t = 1;
};

struct CorpusOptions {
  std::size_t count = 200;
  unsigned seed = 20240611;
  long max_weight = 60;  // bound on M t
  int max_n = 4;
  long max_p = 5;
  long max_q = 4;
  bool monotone = false;  // sort p and q ascending
};

inline std::vector<CorpusEntry> random_corpus(const CorpusOptions& opt = {}) {
  std::mt19937 rng(opt.seed);
  std::uniform_int_distribution<int> dn(1, opt.max_n);
  std::uniform_int_distribution<long> dp(1, opt.max_p);
  std::uniform_int_distribution<long> dq(0, opt.max_q);
  std::uniform_int_distribution<long> dt(1, 3);
  std::vector<CorpusEntry> out;
  while (out.size() < opt.count) {
    CorpusEntry e;
    const int n = dn(rng);
    for (int i = 0; i < n; ++i) {
      e.params.p.push_back(dp(rng));
      e.params.q.push_back(dq(rng));
    }
    if (opt.monotone) {
      std::sort(e.params.p.begin(), e.params.p.end());
      std::sort(e.params.q.begin(), e.params.q.end());
    }
    e.t = dt(rng);
    if (e.params.weight() * e.t > opt.max_weight) continue;
    out.push_back(std::move(e));
  }
  return out;
}

inline std::string describe(const CorpusEntry& e) {
  std::string s = "p=(";
  for (std::size_t i = 0; i < e.params.p.size(); ++i) s += (i ? "," : "") + std::to_string(e.params.p[i]);
  s += ") q=(";
  for (std::size_t i = 0; i < e.params.q.size(); ++i) s += (i ? "," : "") + std::to_string(e.params.q[i]);
  s += ") t=" + std::to_string(e.t);
  return s;
}

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

struct SuiteOptions {
  std::size_t corpus_size = 200;
  unsigned seed = 20240611;
  long hyperharmonic_max = 40;
  std::size_t random_polys = 100;
  unsigned threads = 1;
  /// Corrupt the constant coefficient of the first constructed polynomial.
  bool inject_fault = false;
};

namespace detail {

inline IntPoly maybe_corrupt(IntPoly l, bool corrupt) {
  if (!corrupt) return l;
  auto c = l.raw();
  if (c.empty()) c.emplace_back(0);
  c[0] += 1;
  return IntPoly(std::move(c));
}

/// Runs check(i) over a corpus in parallel; failures are gathered in index order.
template <class Check>
SuiteResult run_corpus(const std::string& name, std::size_t count, unsigned threads, Check check) {
  std::vector<std::vector<std::string>> per(count);
  parallel_for(count, threads, [&](std::size_t i) { per[i] = check(i); });
  SuiteResult r{name, count, {}};
  for (auto& f : per)
    for (auto& s : f) r.failures.push_back(std::move(s));
  return r;
}

}  // namespace detail

inline SuiteResult suite_oracle(const SuiteOptions& opt) {
  const auto corpus = random_corpus({opt.corpus_size, opt.seed});
  return detail::run_corpus("oracle", corpus.size(), opt.threads, [&](std::size_t i) {
    std::vector<std::string> f;
    const auto& e = corpus[i];
    const IntPoly l = detail::maybe_corrupt(legendre_poly(e.params, e.t), opt.inject_fault && i == 0);
    const IntPoly o = oracle_legendre(e.params, e.t);
    if (l != o) {
      std::size_t k = 0;
      while (k < std::max(l.size(), o.size()) && l.coeff(k) == o.coeff(k)) ++k;
      f.push_back(describe(e) + ": coefficient of z^" + std::to_string(k) + " is " + l.coeff(k).get_str() +
                  ", oracle gives " + o.coeff(k).get_str());
    }
    return f;
  });
}

inline SuiteResult suite_structural(const SuiteOptions& opt) {
  const auto corpus = random_corpus({opt.corpus_size, opt.seed});
  return detail::run_corpus("structural", corpus.size(), opt.threads, [&](std::size_t i) {
    std::vector<std::string> f;
    const auto& e = corpus[i];
    for (const auto& r : structural_identity_suite(e.params.p, e.params.q, e.t).results)
      if (!r.passed) f.push_back(r.name + ": " + r.witness);
    return f;
  });
}

inline SuiteResult suite_hyperharmonic(const SuiteOptions& opt) {
  SuiteResult r{"hyperharmonic", 0, {}};
  for (long j = 0; j <= opt.hyperharmonic_max; ++j)
    for (long k = 0; k <= opt.hyperharmonic_max; ++k) {
      ++r.checked;
      const IdentityCheck c = hyperharmonic_identity(j, k);
      if (!c.holds)
        r.failures.push_back("j=" + std::to_string(j) + " k=" + std::to_string(k) + ": " +
                             to_fraction_string(c.lhs) + " vs " + to_fraction_string(c.rhs));
    }
  return r;
}

inline RatPoly random_rational_poly(std::mt19937& rng, long degree) {
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  std::vector<Rational> c;
  for (long i = 0; i <= degree; ++i) c.push_back(make_rational(Integer(num(rng)), Integer(den(rng))));
  if (c.back() == 0) c.back() = 1;
  return RatPoly(std::move(c));
}

inline SuiteResult suite_series_derivative(const SuiteOptions& opt) {
  std::mt19937 rng(opt.seed + 1);
  std::uniform_int_distribution<long> deg(0, 15);
  SuiteResult r{"series-derivative", 0, {}};
  for (std::size_t i = 0; i < opt.random_polys; ++i) {
    ++r.checked;
    const RatPoly p = random_rational_poly(rng, deg(rng));
    const auto c = derivative_series_identity(p);
    if (!c.holds) r.failures.push_back("random polynomial #" + std::to_string(i) + " of degree " + std::to_string(p.degree()));
  }
  return r;
}

inline SuiteResult suite_orthogonality(const SuiteOptions& opt) {
  CorpusOptions co{opt.corpus_size, opt.seed + 2};
  co.monotone = true;
  co.max_weight = 40;
  std::vector<CorpusEntry> corpus;
  for (auto& e : random_corpus(co))
    if (e.params.n() >= 2) corpus.push_back(e);
  return detail::run_corpus("orthogonality", corpus.size(), opt.threads, [&](std::size_t i) {
    std::vector<std::string> f;
    const auto& e = corpus[i];
    std::mt19937 rng(opt.seed + static_cast<unsigned>(i));
    std::uniform_int_distribution<long> coef(-5, 5);
    std::vector<Integer> w;
    for (long k = 0; k <= e.params.diagonal(0) * e.t; ++k) w.emplace_back(coef(rng));
    const IntPoly W(std::move(w));
    for (int m = 1; m <= e.params.n() - 1; ++m) {
      const auto r = orthogonality_check(e.params.p, e.params.q, e.t, m, W);
      if (!r.passed) f.push_back(describe(e) + " m=" + std::to_string(m));
    }
    return f;
  });
}

/// Every corpus entry with n >= 2, at every m = 1..n-1.
inline SuiteResult suite_trivial_integrality(const SuiteOptions& opt, bool refined = false) {
  const auto corpus = random_corpus({opt.corpus_size, opt.seed});
  return detail::run_corpus(refined ? "refined-integrality" : "trivial-integrality", corpus.size(), opt.threads,
                            [&](std::size_t i) {
                              std::vector<std::string> f;
                              const auto& e = corpus[i];
                              for (int m = 1; m <= e.params.n() - 1; ++m) {
                                const auto r = trivial_integrality_check(e.params.p, e.params.q, e.t, m, refined);
                                if (!r.passed) f.push_back(r.witness + ", m=" + std::to_string(m));
                              }
                              return f;
                            });
}

inline ParamSet example_one() { return {{4, 5, 3}, {1, 2, 0}, 1, Rational(-1), "example-1"}; }
inline ParamSet example_two() { return {{5, 6, 7, 4}, {1, 2, 3, 0}, 2, Rational(-1), "example-2"}; }

inline SuiteResult suite_strong_integrality(const SuiteOptions& opt) {
  struct Job {
    ParamSet params;
    long t;
  };
  std::vector<Job> jobs;
  for (long t = 1; t <= 12; ++t) jobs.push_back({example_one(), t});
  for (long t = 1; t <= 6; ++t) jobs.push_back({example_two(), t});
  return detail::run_corpus("strong-integrality", jobs.size(), opt.threads, [&](std::size_t i) {
    std::vector<std::string> f;
    const auto& j = jobs[i];
    const IntPoly l = detail::maybe_corrupt(legendre_poly(j.params, j.t), opt.inject_fault && i == 0);
    const auto tr = christoffel_iterates(to_rational(l), *j.params.m);
    const auto r = strong_integrality_check(j.params, j.t, tr);
    if (!r.holds) f.push_back(j.params.name + ": " + r.witness);
    return f;
  });
}

inline SuiteResult suite_vanishing(const SuiteOptions& opt) {
  CorpusOptions co{opt.corpus_size, opt.seed + 3};
  co.monotone = true;
  const auto corpus = random_corpus(co);
  return detail::run_corpus("series-vanishing", corpus.size(), opt.threads, [&](std::size_t i) {
    std::vector<std::string> f;
    const auto& e = corpus[i];
    if (!series_vanishing_check(e.params.p, e.params.q, e.t).holds) f.push_back(describe(e) + " Q(k) != 0 below q_1 t");
    for (int m = 1; m <= e.params.n() - 1; ++m) {
      const auto r = derivative_shift_check(e.params, e.t, m);
      if (!r.holds) f.push_back(describe(e) + " m=" + std::to_string(m) + " at k=" + std::to_string(r.failing_k));
    }
    return f;
  });
}

inline std::vector<std::string> suite_names() {
  return {"structural", "oracle", "hyperharmonic", "series-derivative", "orthogonality",
          "trivial-integrality", "refined-integrality", "strong-integrality", "series-vanishing"};
}

inline SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "structural") return suite_structural(opt);
  if (name == "oracle") return suite_oracle(opt);
  if (name == "hyperharmonic") return suite_hyperharmonic(opt);
  if (name == "series-derivative") return suite_series_derivative(opt);
  if (name == "orthogonality") return suite_orthogonality(opt);
  if (name == "trivial-integrality") return suite_trivial_integrality(opt);
  if (name == "refined-integrality") return suite_trivial_integrality(opt, true);
  if (name == "strong-integrality") return suite_strong_integrality(opt);
  if (name == "series-vanishing") return suite_vanishing(opt);
  throw PreconditionError("unknown suite '" + name + "'");
}

}  // namespace mlegendre
