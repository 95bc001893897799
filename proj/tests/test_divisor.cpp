#include <gtest/gtest.h>

#include <mpfr.h>

#include <random>

#include "mlegendre/divisor.hpp"
#include "mlegendre/legendre.hpp"
#include "mlegendre/serialize.hpp"

using namespace mlegendre;

namespace {

Rational frac(long a, long b) { return make_rational(Integer(a), Integer(b)); }

const ParamSet kExample1{{4, 5, 3}, {1, 2, 0}, 1, Rational(-1), "example-1"};
const ParamSet kExample2{{5, 6, 7, 4}, {1, 2, 3, 0}, 2, Rational(-1), "example-2"};

// Interval table as (from_num, from_den, to_num, to_den, mu), zero stretches filled in.
MuProfile profile_from_table(const std::vector<std::tuple<long, long, long, long, int>>& rows) {
  MuProfile p;
  Rational cur = 0;
  for (const auto& [a, b, c, d, mu] : rows) {
    const Rational from = frac(a, b);
    if (from > cur) {
      p.breakpoints.push_back(cur);
      p.values.push_back(0);
    }
    p.breakpoints.push_back(from);
    p.values.push_back(mu);
    cur = frac(c, d);
  }
  if (cur < 1) {
    p.breakpoints.push_back(cur);
    p.values.push_back(0);
  }
  p.breakpoints.emplace_back(1);
  // merge equal neighbours
  MuProfile m;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    if (!m.values.empty() && m.values.back() == p.values[i]) continue;
    m.breakpoints.push_back(p.breakpoints[i]);
    m.values.push_back(p.values[i]);
  }
  m.breakpoints.emplace_back(1);
  return m;
}

BigFloat mpfr_digamma_ref(const Rational& x, Bits prec) {
  BigFloat v(x, prec), r(prec);
  mpfr_digamma(r.get(), v.get(), MPFR_RNDN);
  return r;
}

}  // namespace

TEST(ExponentProfile, Examples) {
  const auto e1 = exponent_profile(kExample1);
  EXPECT_EQ(e1.K, (std::vector<long>{7, 6, 6, 5, 5, 5, 4, 4, 3}));
  EXPECT_EQ(e1.N[0], 7);
  EXPECT_EQ(e1.H, (std::vector<long>{7, 5, 3}));
  const auto e2 = exponent_profile(kExample2);
  EXPECT_EQ(e2.N[0], 10);
  EXPECT_EQ(e2.N[1], 9);
  const auto e3 = exponent_profile({{1}, {0}, std::nullopt, Rational(-1), {}});
  EXPECT_EQ(e3.K, std::vector<long>{1});
  EXPECT_EQ(e3.N, std::vector<Rational>{Rational(1)});
}

TEST(ExponentProfile, Invariants) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> d(1, 9);
  for (int it = 0; it < 50; ++it) {
    ParamSet ps;
    const int n = 1 + it % 5;
    for (int i = 0; i < n; ++i) {
      ps.p.push_back(d(rng));
      ps.q.push_back(d(rng) - 1);
    }
    const auto e = exponent_profile(ps);
    EXPECT_EQ(e.K.size(), static_cast<std::size_t>(n * n));
    EXPECT_TRUE(std::is_sorted(e.K.rbegin(), e.K.rend()));
    EXPECT_TRUE(std::is_sorted(e.N.rbegin(), e.N.rend()));
    EXPECT_TRUE(std::is_sorted(e.H.rbegin(), e.H.rend()));
  }
}

TEST(Mu, Examples) {
  EXPECT_EQ(mu_of_omega(kExample1, frac(1, 2)), 1);
  EXPECT_EQ(mu_of_omega(kExample1, Rational(0)), 0);
  EXPECT_EQ(mu_of_omega(kExample2, frac(1, 7)), 2);
  EXPECT_THROW(mu_of_omega(kExample1, Rational(1)), PreconditionError);
}

TEST(Mu, AssignmentMatchesBruteForce) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> d(1, 12);
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + it % 7;
    std::vector<long> p, q;
    for (int i = 0; i < n; ++i) {
      p.push_back(d(rng));
      q.push_back(d(rng) - 1);
    }
    const Rational w = frac(static_cast<long>(rng() % 97), 97);
    const auto g = detail::mu_gains(p, q, w);
    EXPECT_EQ(detail::mu_brute_force(g), detail::mu_assignment(g));
    EXPECT_GE(detail::mu_brute_force(g), 0);
  }
}

TEST(MuProfile, Example1Table) {
  const MuProfile expect = profile_from_table({{1, 6, 3, 7, 1}, {1, 2, 5, 7, 1}, {3, 4, 6, 7, 1}});
  const MuProfile got = mu_profile(kExample1);
  EXPECT_EQ(got.breakpoints, expect.breakpoints);
  EXPECT_EQ(got.values, expect.values);
}

TEST(MuProfile, Example2Table) {
  const MuProfile expect = profile_from_table({{1, 9, 1, 7, 1},   {1, 7, 1, 6, 2},  {1, 6, 2, 9, 1},  {2, 9, 1, 4, 2},
                                               {1, 4, 2, 7, 1},   {2, 7, 3, 10, 2}, {3, 10, 3, 7, 1}, {3, 7, 1, 2, 2},
                                               {5, 9, 4, 7, 1},   {4, 7, 3, 5, 2},  {3, 5, 5, 7, 1},  {5, 7, 3, 4, 2},
                                               {3, 4, 6, 7, 1},   {6, 7, 7, 8, 2},  {7, 8, 9, 10, 1}});
  const MuProfile got = mu_profile(kExample2);
  EXPECT_EQ(got.breakpoints, expect.breakpoints);
  EXPECT_EQ(got.values, expect.values);
}

TEST(MuProfile, SingleFactorIsZero) {
  const MuProfile p = mu_profile({{3}, {2}, std::nullopt, Rational(-1), {}});
  EXPECT_EQ(p.values, std::vector<int>{0});
  EXPECT_EQ(delta_limit(p, 128).sign(), 0);
}

TEST(MuProfile, AgreesWithPointwiseMu) {
  for (long den = 1; den <= 60; ++den)
    for (long c = 0; c < den; ++c) {
      const Rational w = frac(c, den);
      EXPECT_EQ(mu_profile(kExample2).at(w), mu_of_omega(kExample2, w));
    }
}

TEST(MuProfile, JsonRoundTrip) {
  const MuProfile p = mu_profile(kExample2);
  const Json j = to_json(p);
  EXPECT_EQ(j[0]["from"], "0/1");
  const MuProfile back = mu_profile_from_json(j);
  EXPECT_EQ(back.breakpoints, p.breakpoints);
  EXPECT_EQ(back.values, p.values);
}

TEST(DeltaT, RegressionAtTwelve) {
  EXPECT_EQ(delta_t(kExample1, 12), Integer("18579448222667298067513"));
}

TEST(DeltaT, MatchesPerPrimeDefinition) {
  for (const ParamSet* ps : {&kExample1, &kExample2})
    for (long t = 1; t <= 40; ++t) {
      const long n1 = exponent_profile(*ps).K[0];
      Integer expect = 1;
      for (long s = 2; s <= n1 * t; ++s) {
        bool prime = true;
        for (long d = 2; d * d <= s; ++d) prime = prime && s % d != 0;
        if (!prime || s * s <= n1 * t) continue;
        const int mu = mu_of_omega(*ps, frac_of(frac(t, s)));
        for (int i = 0; i < mu; ++i) expect *= s;
      }
      EXPECT_EQ(delta_t(*ps, t), expect) << ps->name << " t=" << t;
    }
}

TEST(DeltaT, TrivialCases) {
  const ParamSet single{{4}, {3}, std::nullopt, Rational(-1), {}};
  for (long t = 1; t <= 20; ++t) EXPECT_EQ(delta_t(single, t), 1);
  // t = 1 on example 1: primes in (sqrt 7, 7] are 3, 5, 7 with {1/s} = 1/3, 1/5, 1/7;
  // only 1/7 lies outside [1/6, 3/7).
  EXPECT_EQ(delta_t(kExample1, 1), 15);
}

TEST(DeltaT, LargerPrimesContributeNothing) {
  const MuProfile prof = mu_profile(kExample1);
  for (long t = 1; t <= 30; ++t)
    for (long s = 7 * t + 1; s <= 7 * t + 50; ++s) EXPECT_EQ(prof.at(frac_of(frac(t, s))), 0);
}

TEST(Digamma, KnownValues) {
  const Bits prec = 256;
  const BigFloat euler = [&] {
    BigFloat g(prec);
    mpfr_const_euler(g.get(), MPFR_RNDN);
    return g;
  }();
  EXPECT_LT(bf::abs(digamma(Rational(1), prec) + euler).to_double(), 1e-70);
  const BigFloat half = digamma(frac(1, 2), prec);
  EXPECT_LT(bf::abs(half - (digamma(Rational(1), prec) - BigFloat(2L, prec) * bf::ln2(prec))).to_double(), 1e-70);
  EXPECT_NEAR(digamma(Rational(1), 64).to_double(), -0.57721566490153286, 1e-16);
}

TEST(Digamma, RecurrenceAndReference) {
  std::mt19937 rng(13);
  const Bits prec = 200;
  for (int it = 0; it < 40; ++it) {
    const Rational x = frac(1 + static_cast<long>(rng() % 500), 1 + static_cast<long>(rng() % 37));
    const BigFloat lhs = digamma(x + 1, prec) - digamma(x, prec);
    const BigFloat rhs(Rational(1) / x, prec);
    EXPECT_LT(bf::abs(lhs - rhs).to_double(), 1e-55);
    EXPECT_LT(bf::abs(digamma(x, prec) - mpfr_digamma_ref(x, prec)).to_double(), 1e-55);
  }
}

TEST(Digamma, Domain) {
  EXPECT_THROW(digamma(Rational(0), 64), DomainError);
  EXPECT_THROW(digamma(Rational(-3), 64), DomainError);
}

TEST(DeltaLimit, ReferenceValues) {
  EXPECT_NEAR(delta_limit(kExample1, 128).to_double(), 4.995102335817, 1e-11);
  EXPECT_NEAR(delta_limit(kExample2, 128).to_double(), 10.792110594854, 1e-11);
}

TEST(DeltaLimit, ConvergenceOfLogDeltaT) {
  const MuProfile prof = mu_profile(kExample1);
  const double delta = delta_limit(prof, 64).to_double();
  double prev = 1e9;
  for (long t : {64L, 128L, 256L}) {
    const double gap = std::fabs(log_abs(delta_t(kExample1, t, prof)) / static_cast<double>(t) - delta);
    EXPECT_LT(gap, prev) << "t=" << t;
    prev = gap;
  }
}

TEST(StrongIntegrality, Examples) {
  for (long t = 1; t <= 8; ++t) {
    const auto tr = christoffel_iterates(to_rational(legendre_poly(kExample1, t)), 1);
    EXPECT_TRUE(strong_integrality_check(kExample1, t, tr).holds) << "t=" << t;
  }
  for (long t = 1; t <= 3; ++t) {
    const auto tr = christoffel_iterates(to_rational(legendre_poly(kExample2, t)), 2);
    EXPECT_TRUE(strong_integrality_check(kExample2, t, tr).holds) << "t=" << t;
  }
}

TEST(StrongIntegrality, DetectsCorruption) {
  // Adding z^s with s a prime factor of Delta_t shifts the constant term of d T(L) by d/s.
  const long t = 6;
  const Integer delta = delta_t(kExample1, t);
  std::uint64_t s = 0;
  for (auto pr : primes_upto(7 * t))
    if (mpz_divisible_ui_p(delta.get_mpz_t(), pr)) s = pr;
  ASSERT_GT(s, 0u);
  auto c = legendre_poly(kExample1, t).raw();
  c[s] += 1;
  const auto tr = christoffel_iterates(to_rational(IntPoly(c)), 1);
  const auto r = strong_integrality_check(kExample1, t, tr);
  EXPECT_FALSE(r.holds);
  EXPECT_NE(r.witness.find("z^0"), std::string::npos) << r.witness;
}
