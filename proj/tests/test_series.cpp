#include <gtest/gtest.h>

#include <random>

#include "mlegendre/series.hpp"
#include "mlegendre/verify.hpp"

using namespace mlegendre;

namespace {

Rational frac(long a, long b) { return make_rational(Integer(a), Integer(b)); }

const ParamSet kExample1{{4, 5, 3}, {1, 2, 0}, 1, Rational(-1), "example-1"};

}  // namespace

TEST(SeriesCoefficient, Examples) {
  EXPECT_EQ(series_coefficient(kExample1, 1, Integer(0)), 0);
  EXPECT_EQ(series_coefficient({1, 1}, {0, 0}, 1, Integer(2)), 9);
  EXPECT_EQ(series_coefficient({1, 1}, {0, 0}, 1, Integer(0)), 1);
}

TEST(Bijection, BasisElements) {
  EXPECT_EQ(p_to_q(RatPoly({1})), KPolynomial({1}));
  EXPECT_EQ(p_to_q(RatPoly({1, -1})), KPolynomial({1, 1}));
  // (1-z)^2 <-> C(k+2, 2) = (k^2 + 3k + 2)/2
  EXPECT_EQ(p_to_q(RatPoly({1, -2, 1})), KPolynomial({1, frac(3, 2), frac(1, 2)}));
  EXPECT_TRUE(p_to_q(RatPoly()).is_zero());
}

TEST(Bijection, RoundTripDegreeTwenty) {
  std::mt19937 rng(31);
  for (int it = 0; it < 20; ++it) {
    const RatPoly p = random_rational_poly(rng, 20);
    const KPolynomial q = p_to_q(p);
    EXPECT_EQ(q.degree(), p.degree());
    EXPECT_EQ(q_to_p(q), p);
  }
}

TEST(Bijection, SeriesMeaning) {
  // (1-z) P(z) = sum Q(k) w^k with w = -z/(1-z). Multiplying by (1-z)^N, only
  // k < N contributes below z^N.
  std::mt19937 rng(37);
  const std::size_t N = 8;
  for (int it = 0; it < 10; ++it) {
    const RatPoly p = random_rational_poly(rng, 5);
    const KPolynomial q = p_to_q(p);
    RatPoly s;
    for (std::size_t k = 0; k < N; ++k) {
      RatPoly term = times_one_minus_z_pow(shift_up(RatPoly({evaluate(q, Rational(static_cast<long>(k)))}), k), N - k);
      if (k % 2) term = -term;
      s += term;
    }
    const RatPoly rhs = times_one_minus_z_pow(p, N + 1);
    for (std::size_t i = 0; i < N; ++i) EXPECT_EQ(s.coeff(i), rhs.coeff(i)) << "z^" << i;
  }
}

TEST(Interpolation, RecoversPolynomial) {
  const KPolynomial q({3, frac(-1, 2), 0, 7});
  std::vector<Rational> vals;
  for (long k = 0; k <= 3; ++k) vals.push_back(evaluate(q, Rational(k)));
  EXPECT_EQ(interpolate_at_naturals(vals), q);
}

TEST(Oracle, Examples) {
  EXPECT_EQ(oracle_legendre({1, 1}, {0, 0}, 1), IntPoly({1, -3, 2}));
  EXPECT_EQ(oracle_legendre({1}, {1}, 1), IntPoly({0, -1, 1}));
  for (long t = 1; t <= 3; ++t) EXPECT_EQ(oracle_legendre(kExample1, t), legendre_poly(kExample1, t));
}

TEST(Oracle, RefusesLargeWeight) {
  OracleOptions o;
  o.max_weight = 20;
  EXPECT_THROW(oracle_legendre(kExample1, 2, o), PreconditionError);
}

TEST(Oracle, RandomCorpus) {
  CorpusOptions co;
  co.count = 80;
  co.seed = 4242;
  for (const auto& e : random_corpus(co)) EXPECT_EQ(oracle_legendre(e.params, e.t), legendre_poly(e.params, e.t)) << describe(e);
}

TEST(Hyperharmonic, Examples) {
  const auto c = hyperharmonic_identity(2, 1);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.lhs, frac(5, 2));
  for (long j = 0; j <= 10; ++j) {
    Rational h = 0;
    for (long i = 1; i <= j; ++i) h += frac(1, i);
    const auto r = hyperharmonic_identity(j, 0);
    EXPECT_EQ(r.lhs, h);
    EXPECT_EQ(r.rhs, h);
  }
  for (long k = 0; k <= 10; ++k) {
    const auto r = hyperharmonic_identity(0, k);
    EXPECT_EQ(r.lhs, 0);
    EXPECT_EQ(r.rhs, 0);
  }
}

TEST(Hyperharmonic, ExhaustiveForty) { EXPECT_TRUE(hyperharmonic_exhaustive(40).holds); }

TEST(DerivativeSeries, Examples) {
  EXPECT_TRUE(derivative_series_identity(RatPoly({1})).holds);
  const auto r = derivative_series_identity(RatPoly({1, -1}));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.transformed, KPolynomial({-1}));
  EXPECT_EQ(r.derivative_q, KPolynomial({1}));
}

TEST(DerivativeSeries, RandomDegreeFifteen) {
  std::mt19937 rng(41);
  for (int it = 0; it < 50; ++it) EXPECT_TRUE(derivative_series_identity(random_rational_poly(rng, 15)).holds);
}

TEST(Vanishing, LowOrderCoefficients) {
  CorpusOptions co;
  co.count = 60;
  co.seed = 51;
  co.monotone = true;
  for (const auto& e : random_corpus(co)) {
    EXPECT_TRUE(series_vanishing_check(e.params.p, e.params.q, e.t).holds) << describe(e);
    for (int m = 1; m <= e.params.n() - 1; ++m) EXPECT_TRUE(derivative_shift_check(e.params, e.t, m).holds) << describe(e);
  }
}

TEST(Vanishing, DerivativeShiftNeedsMonotonePrefix) {
  const ParamSet bad{{3, 2}, {0, 0}, std::nullopt, Rational(-1), {}};
  EXPECT_THROW(derivative_shift_check(bad, 1, 1), PreconditionError);
}
