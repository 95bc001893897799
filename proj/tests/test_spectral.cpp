#include <gtest/gtest.h>

#include <cmath>

#include "mlegendre/measure.hpp"
#include "mlegendre/spectral.hpp"

using namespace mlegendre;

namespace {

const ParamSet kExample1{{4, 5, 3}, {1, 2, 0}, 1, Rational(-1), "example-1"};
const ParamSet kExample2{{5, 6, 7, 4}, {1, 2, 3, 0}, 2, Rational(-1), "example-2"};

double re(const BigComplex& c) { return c.re.to_double(); }
double im(const BigComplex& c) { return c.im.to_double(); }

}  // namespace

TEST(CharacteristicPolynomial, Examples) {
  // -(y+3)(y+4)(y+5) + 2 y (y-1)(y-2)
  const RatPoly expect = RatPoly({-60, -47, -12, -1}) + RatPoly({0, 4, -6, 2});
  EXPECT_EQ(characteristic_polynomial(kExample1), expect);
  EXPECT_EQ(characteristic_polynomial({{1}, {0}, std::nullopt, Rational(-1), {}}), RatPoly({-1, 1}));
  for (const auto& p : preset_catalog()) EXPECT_EQ(characteristic_polynomial(p).leading(), 1);
}

TEST(Roots, LinearCase) {
  const auto r = characteristic_roots({{1}, {0}, std::nullopt, Rational(-1), {}}, 128);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_LT(bf::abs(r.roots[0].re - BigFloat(1L, 128)).to_double(), 1e-30);
  EXPECT_TRUE(r.roots[0].im.is_zero());
}

TEST(Roots, ReferenceExamples) {
  const auto sd1 = spectral_data(kExample1, 256);
  EXPECT_NEAR(re(sd1.y[0]), 20.267669670594, 1e-11);
  EXPECT_NEAR(im(sd1.y[0]), 0.0, 1e-30);
  EXPECT_NEAR(re(sd1.y[1]), -1.133834835297, 1e-11);
  EXPECT_NEAR(std::fabs(im(sd1.y[1])), 1.294140012477, 1e-11);
  EXPECT_NEAR(im(sd1.y[1]), -im(sd1.y[2]), 1e-30);

  const auto sd2 = spectral_data(kExample2, 256);
  EXPECT_NEAR(re(sd2.y[0]), 38.527585178736, 1e-11);
  EXPECT_NEAR(re(sd2.y[1]), -1.398347266393, 1e-11);
  EXPECT_NEAR(std::fabs(im(sd2.y[1])), 3.262020254989, 1e-11);
  EXPECT_NEAR(re(sd2.y[3]), -1.730890645949, 1e-11);
}

TEST(Roots, ResidualConjugationAndVieta) {
  for (const auto& ps : preset_catalog()) {
    for (Bits prec : {128u, 512u}) {
      const RatPoly cp = characteristic_polynomial(ps);
      const RootResult r = characteristic_roots(ps, prec);
      ASSERT_EQ(r.roots.size(), static_cast<std::size_t>(ps.n()));
      EXPECT_LE(root_residual(cp, r.roots).to_double(), std::ldexp(1.0, -static_cast<int>(prec) + 16)) << ps.name;
      // Conjugate closure.
      for (const auto& y : r.roots) {
        BigFloat best(prec);
        bool first = true;
        for (const auto& x : r.roots) {
          const BigFloat d = (x - y.conj()).abs();
          if (first || d < best) best = d;
          first = false;
        }
        EXPECT_LT(best.to_double(), std::ldexp(1.0, -static_cast<int>(prec) / 2)) << ps.name;
      }
      // Vieta: sum of roots = -c_{n-1}, product = (-1)^n c_0.
      BigComplex sum(prec), prod(BigFloat(1L, prec), BigFloat(prec));
      for (const auto& y : r.roots) {
        sum += y;
        prod = prod * y;
      }
      const BigFloat c_top(cp.coeff(static_cast<std::size_t>(ps.n() - 1)), prec);
      const BigFloat c0(cp.coeff(0), prec);
      const double tol = std::ldexp(1.0, -static_cast<int>(prec) + 20);
      EXPECT_LT(bf::abs(sum.re + c_top).to_double(), tol * (1 + std::fabs(c_top.to_double())));
      EXPECT_LT(bf::abs(sum.im).to_double(), tol);
      const BigFloat signed_c0 = ps.n() % 2 ? -c0 : c0;
      EXPECT_LT(bf::abs(prod.re - signed_c0).to_double(), tol * (1 + std::fabs(c0.to_double())));
    }
  }
}

TEST(Roots, DeterministicOrdering) {
  const auto a = spectral_data(kExample2, 256);
  const auto b = spectral_data(kExample2, 256);
  for (std::size_t i = 0; i < a.y.size(); ++i) {
    EXPECT_TRUE(a.y[i].re == b.y[i].re);
    EXPECT_TRUE(a.y[i].im == b.y[i].im);
  }
  for (std::size_t i = 1; i < a.log_abs_v.size(); ++i) EXPECT_GE(a.log_abs_v[i - 1].to_double(), a.log_abs_v[i].to_double() - 1e-30);
}

TEST(CharValues, ReferenceExamples) {
  const auto sd1 = spectral_data(kExample1, 256);
  EXPECT_NEAR(sd1.log_abs_v[0].to_double(), 22.149699678920, 1e-11);
  EXPECT_NEAR(sd1.log_abs_v[1].to_double(), -7.537440405644, 1e-11);
  EXPECT_NEAR(sd1.log_abs_v[2].to_double(), -7.537440405644, 1e-11);
  EXPECT_NEAR(sd1.log_b.to_double(), 13.1543, 1e-4);
  ASSERT_TRUE(sd1.w_index.has_value());
  EXPECT_EQ(*sd1.w_index, 1u);
  EXPECT_TRUE(sd1.values_distinct);
  EXPECT_FALSE(sd1.moduli_distinct);

  const auto sd2 = spectral_data(kExample2, 256);
  EXPECT_NEAR(sd2.log_abs_v[0].to_double(), 48.947490848559, 1e-11);
  EXPECT_NEAR(sd2.log_abs_v[1].to_double(), -9.276132199490, 1e-11);
  EXPECT_NEAR(sd2.log_abs_v[3].to_double(), -18.115257059384, 1e-11);
  EXPECT_NEAR(sd2.log_b.to_double(), 34.6412, 1e-4);
  EXPECT_TRUE(sd2.values_distinct);
}

TEST(CharValues, ThresholdFormulaZeroConvention) {
  // q_1 = 0: 0 log 0 contributes nothing.
  const ParamSet ps{{5, 6}, {0, 1}, 1, Rational(-1), {}};
  const double expect = 5 * std::log(5.0) + 12 * std::log(12.0) - 2 * 5 * std::log(5.0) - 7 * std::log(7.0);
  EXPECT_NEAR(log_threshold(ps, 128).to_double(), expect, 1e-12);
}

TEST(Pituk, GeometricSequence) {
  std::vector<BigFloat> vals;
  for (long t = 1; t <= 60; ++t) vals.push_back(bf::pow_ui(BigFloat(3L, 256), static_cast<unsigned long>(t)));
  EXPECT_NEAR(pituk_slope(vals, 1, 3).slope, std::log(3.0), 1e-9);
}

TEST(Pituk, WindowedMaxBridgesZeros) {
  // f(t) = 2^t for even t, 0 for odd t: window 2 still sees growth log 2, as a staircase.
  std::vector<double> logs;
  for (long t = 0; t < 80; ++t) logs.push_back(t % 2 ? -INFINITY : t * std::log(2.0));
  EXPECT_NEAR(pituk_slope_logs(logs, 0, 2).slope, std::log(2.0), 1e-2);
}

TEST(Pituk, Errors) {
  EXPECT_THROW(pituk_slope_logs(std::vector<double>(20, -INFINITY), 1, 3), DomainError);
  EXPECT_THROW(pituk_slope_logs({1.0, 2.0}, 1, 3), PreconditionError);
  EXPECT_THROW(pituk_slope_logs({1.0, 2.0, 3.0}, 1, 0), PreconditionError);
}

TEST(Pituk, LegendreGrowthMatchesACharacteristicValue) {
  std::vector<double> logs;
  for (long t = 1; t <= 60; ++t) logs.push_back(log_abs(evaluate_exact(legendre_poly(kExample1, t), kExample1.z)));
  const double slope = pituk_slope_logs(logs, 1, 3).slope;
  const auto sd = spectral_data(kExample1, 128);
  double best = INFINITY;
  for (const auto& lv : sd.log_abs_v) best = std::min(best, std::fabs(lv.to_double() - slope));
  EXPECT_LT(best / sd.log_v.to_double(), 0.03) << "slope " << slope;
}

TEST(Kernel, TwoFactorWitnesses) {
  const ParamSet ps{{1, 1}, {0, 0}, std::nullopt, Rational(-1), {}};
  for (long t = 0; t <= 6; ++t) {
    const auto w = recurrence_kernel_instance(ps, t);
    ASSERT_TRUE(w.has_value()) << "t=" << t;
    EXPECT_TRUE(w->annihilates);
    EXPECT_TRUE(kernel_residual(ps, t, w->A).is_zero());
    bool nonzero = false;
    for (std::size_t l = 0; l < w->A.size(); ++l) {
      nonzero = nonzero || !w->A[l].is_zero();
      EXPECT_LE(w->A[l].degree(), w->L + ps.weight() * (ps.n() - static_cast<long>(l)));
    }
    EXPECT_TRUE(nonzero);
  }
}

TEST(Kernel, Example1AtTOne) {
  const auto w = recurrence_kernel_instance(kExample1, 1);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(w->annihilates);
  EXPECT_TRUE(kernel_residual(kExample1, 1, w->A).is_zero());
}

TEST(Kernel, BoundsAndLimits) {
  EXPECT_EQ(kernel_degree_offset(kExample1), 15 * 3 - 3 + 1);
  KernelOptions tiny;
  tiny.max_unknowns = 10;
  EXPECT_THROW(recurrence_kernel_instance(kExample1, 1, tiny), PreconditionError);
  EXPECT_THROW(recurrence_kernel_instance(kExample1, -1), PreconditionError);
}
