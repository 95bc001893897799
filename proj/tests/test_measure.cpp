#include <gtest/gtest.h>

#include <chrono>

#include "mlegendre/measure.hpp"
#include "mlegendre/serialize.hpp"

using namespace mlegendre;

namespace {

ParamSet preset(const std::string& name) {
  auto p = find_preset(name);
  if (!p) throw std::runtime_error("missing preset " + name);
  return *p;
}

}  // namespace

TEST(Presets, Catalog) {
  const auto cat = preset_catalog();
  EXPECT_EQ(cat.size(), 6u);
  const ParamSet z19 = preset("log2019-m4");
  EXPECT_EQ(z19.z, Rational(-19));
  EXPECT_EQ(*z19.m, 4);
  EXPECT_EQ(z19.p, (std::vector<long>{14, 15, 16, 17, 18}));
  EXPECT_EQ(z19.q, (std::vector<long>{19, 20, 21, 22, 23}));
  const ParamSet e1 = preset("log2-m1");
  EXPECT_EQ(e1.p, (std::vector<long>{4, 5, 3}));
  EXPECT_EQ(e1.q, (std::vector<long>{1, 2, 0}));
  for (const auto& p : cat) EXPECT_NO_THROW(p.validate());
  EXPECT_FALSE(find_preset("nope").has_value());
}

TEST(SigmaTau, Example1) {
  const ParamSet e1 = preset("log2-m1");
  const Bits prec = 256;
  const BigFloat delta = delta_limit(e1, prec);
  const auto sd = spectral_data(e1, prec);
  const SigmaTau st = sigma_tau(e1, delta, sd.log_v, sd.log_w, prec);
  EXPECT_NEAR(st.sigma.to_double(), 21.382009, 1e-6);
  EXPECT_NEAR(st.tau.to_double(), 8.305131, 1e-6);
}

TEST(SigmaTau, RejectsNonPositive) {
  const ParamSet e1 = preset("log2-m1");
  const Bits prec = 128;
  const BigFloat delta = delta_limit(e1, prec);
  // log W large enough to make tau negative.
  EXPECT_THROW(sigma_tau(e1, delta, BigFloat(30L, prec), BigFloat(10L, prec), prec), HypothesisError);
  BigFloat inf(prec);
  mpfr_set_inf(inf.get(), 1);
  EXPECT_THROW(sigma_tau(e1, delta, inf, BigFloat(-7L, prec), prec), PreconditionError);
}

TEST(MeasureBound, ReferencePresets) {
  const auto r1 = measure_bound(preset("log2-m1"), 512);
  EXPECT_NEAR(r1.approx_exponent.to_double(), 3.574553902525, 1e-11);
  EXPECT_TRUE(r1.flags.all());
  const auto r2 = measure_bound(preset("log2-m2"), 512);
  EXPECT_NEAR(r2.approx_exponent.to_double(), 12.841618132152, 1e-11);
  EXPECT_NEAR(r2.poly_exponent.to_double(), 11.841618132152, 1e-11);
  EXPECT_NEAR(measure_bound(preset("log65-m3"), 512).poly_exponent.to_double(), 36.9634662932, 1e-9);
  EXPECT_NEAR(measure_bound(preset("log54-m3"), 512).poly_exponent.to_double(), 66.9403256794, 1e-9);
}

TEST(MeasureBound, ReportInvariants) {
  for (const auto& p : preset_catalog()) {
    const auto r = measure_bound(p, 256);
    EXPECT_TRUE(r.flags.all()) << p.name;
    EXPECT_GT(r.sigma.sign(), 0);
    EXPECT_GT(r.tau.sign(), 0);
    EXPECT_GT(r.poly_exponent.to_double(), 1.0) << p.name;
    EXPECT_GE(r.log_v.to_double(), r.log_w.to_double());
    EXPECT_EQ(r.N.size(), static_cast<std::size_t>(*p.m));
  }
}

TEST(MeasureBound, HypothesisFailures) {
  ParamSet nonmono = preset("log2-m1");
  nonmono.p = {5, 4, 3};
  EXPECT_THROW(measure_bound(nonmono, 128), HypothesisError);
  ParamSet no_m = preset("log2-m1");
  no_m.m.reset();
  EXPECT_THROW(measure_bound(no_m, 128), PreconditionError);
  ParamSet inside = preset("log2-m1");
  inside.z = make_rational(Integer(1), Integer(3));
  EXPECT_THROW(measure_bound(inside, 128), PreconditionError);
  ParamSet bad_m = preset("log2-m1");
  bad_m.m = 3;
  EXPECT_THROW(measure_bound(bad_m, 128), PreconditionError);
}

TEST(MeasureBound, MirrorInvariance) {
  // z' = 1 - z with p and q exchanged: same log|v|, same mu, same bound.
  for (const std::string name : {"log54-m3", "log65-m3", "log2019-m4"}) {
    const ParamSet p = preset(name);
    const ParamSet mp = p.mirrored();
    const Bits prec = 256;
    const auto a = spectral_data(p, prec);
    const auto b = spectral_data(mp, prec);
    for (std::size_t i = 0; i < a.log_abs_v.size(); ++i)
      EXPECT_NEAR(a.log_abs_v[i].to_double(), b.log_abs_v[i].to_double(), 1e-30) << name;
    EXPECT_EQ(mu_profile(p).values, mu_profile(mp).values);
    const auto ra = measure_bound(p, prec);
    const auto rb = measure_bound(mp, prec);
    EXPECT_LT(bf::abs(ra.poly_exponent - rb.poly_exponent).to_double(), 1e-60) << name;
  }
}

TEST(MeasureBound, PrecisionMonotone) {
  for (const auto& p : preset_catalog()) {
    const auto lo = measure_bound(p, 128);
    const auto hi = measure_bound(p, 512);
    const double err = std::ldexp(std::fabs(lo.poly_exponent.to_double()), -100);
    EXPECT_LT(bf::abs(lo.poly_exponent - hi.poly_exponent.with_precision(128)).to_double(), err) << p.name;
    // Upward rounding at the lower precision never undercuts the higher-precision value.
    EXPECT_GE(std::stod(upper_decimal(lo.approx_exponent, 25)), hi.approx_exponent.to_double());
  }
}

TEST(MeasureBound, Runtime) {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& p : preset_catalog()) measure_bound(p, 512);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(secs, 60.0);
}

TEST(Serialize, ReportJsonIsDeterministic) {
  const auto a = to_json(measure_bound(preset("log2-m2"), 256)).dump();
  const auto b = to_json(measure_bound(preset("log2-m2"), 256)).dump();
  EXPECT_EQ(a, b);
  const Json j = Json::parse(a);
  EXPECT_EQ(j["params"]["name"], "log2-m2");
  EXPECT_EQ(j["N"][0], "10/1");
  EXPECT_EQ(j["N"][1], "9/1");
  EXPECT_TRUE(j["hypotheses"]["values_distinct"].get<bool>());
  EXPECT_EQ(j["approx_exponent"].get<std::string>().substr(0, 15), "12.841618132152");
  EXPECT_EQ(j["spectral"]["roots"].size(), 4u);
}

TEST(Serialize, UpperDecimalRoundsUp) {
  const BigFloat x(make_rational(Integer(1), Integer(3)), 128);
  EXPECT_EQ(upper_decimal(x, 5), "0.33334");
  EXPECT_EQ(upper_decimal(-x, 5), "-0.33333");
}

TEST(Serialize, TableAndCsv) {
  const auto r = measure_bound(preset("log2-m1"), 128);
  const std::string table = to_table(r);
  EXPECT_NE(table.find("approx_exponent"), std::string::npos);
  EXPECT_NE(table.find("3.5745539025"), std::string::npos);
  const std::string csv = to_csv(r);
  EXPECT_EQ(csv.rfind("key,value\n", 0), 0u);
  EXPECT_NE(csv.find("N_1,7/1"), std::string::npos);
}
