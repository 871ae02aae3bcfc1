#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <pdmseries/mass_expansion.hpp>

namespace {

using namespace pdmseries;

void expect_series_near(const SeriesVector& s, const std::vector<double>& ref, double tol) {
  ASSERT_EQ(s.order() + 1, static_cast<int>(ref.size()));
  for (int i = 0; i <= s.order(); ++i) EXPECT_NEAR(s[i], ref[static_cast<std::size_t>(i)], tol) << "index " << i;
}

TEST(ExpandExponential, TaylorCoefficients) {
  const MassProfile m = expand_exponential(1.0, 1.0, 3);
  expect_series_near(m.mass_series(), {1.0, -1.0, 0.5, -1.0 / 6.0}, 1e-16);
  expect_series_near(m.logderiv_series(), {-1.0, 0.0, 0.0, 0.0}, 0.0);
}

TEST(ExpandExponential, OrderZero) {
  const MassProfile m = expand_exponential(1.0, 0.1, 0);
  expect_series_near(m.mass_series(), {1.0}, 0.0);
  expect_series_near(m.logderiv_series(), {-0.1}, 0.0);
}

TEST(ExpandExponential, LinearTerm) {
  expect_series_near(expand_exponential(2.0, 1.0, 1).mass_series(), {2.0, -2.0}, 0.0);
}

TEST(ExpandExponential, RejectsBadInput) {
  EXPECT_THROW(expand_exponential(1.0, 0.0, 4), DomainError);
  EXPECT_THROW(expand_exponential(1.0, -0.5, 4), DomainError);
  EXPECT_THROW(expand_exponential(0.0, 0.5, 4), DomainError);
  EXPECT_THROW(expand_exponential(1.0, 0.5, -1), DomainError);
}

TEST(LogderivFromSeries, ConstantIsZero) {
  expect_series_near(logderiv_from_series(SeriesVector({2.5})), {0.0}, 0.0);
  expect_series_near(logderiv_from_series(SeriesVector({2.5, 0.0, 0.0}), 5), {0, 0, 0, 0, 0, 0}, 0.0);
}

TEST(LogderivFromSeries, ExponentialDividesToConstant) {
  // Independent route: m'/m for m = e^(-lambda r) is exactly -lambda.
  const double lambda = 0.7;
  std::vector<double> b{1.0};
  for (int nu = 1; nu <= 5; ++nu) b.push_back(b.back() * (-lambda) / nu);
  expect_series_near(logderiv_from_series(SeriesVector(b)), {-lambda, 0.0, 0.0, 0.0, 0.0}, 1e-12);
}

TEST(LogderivFromSeries, OnePlusR) {
  // 1/(1+r) = 1 - r + r^2 - ...
  expect_series_near(logderiv_from_series(SeriesVector({1.0, 1.0}), 2), {1.0, -1.0, 1.0}, 1e-15);
}

TEST(LogderivFromSeries, RejectsNonPositiveLead) {
  EXPECT_THROW(logderiv_from_series(SeriesVector({0.0, 1.0})), DomainError);
  EXPECT_THROW(logderiv_from_series(SeriesVector({-1.0, 1.0})), DomainError);
}

TEST(LogderivFromSeries, RoundTripProperty) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> b{0.5 + std::abs(coef(rng))};
    for (int i = 0; i < 12; ++i) b.push_back(coef(rng));
    const SeriesVector mass(b);
    const SeriesVector q = logderiv_from_series(mass);
    const SeriesVector prod = cauchy_product(q, mass, q.order());
    for (int nu = 0; nu <= q.order(); ++nu) EXPECT_NEAR(prod[nu], (nu + 1) * mass[nu + 1], 1e-12);
  }
}

TEST(EvalSeries, Examples) {
  EXPECT_EQ(eval_series(SeriesVector({1.0, -1.0, 0.5}), 0.0), 1.0);
  EXPECT_EQ(eval_series(SeriesVector({5.0}), 3.7), 5.0);
  EXPECT_NEAR(eval_series(expand_exponential(1.0, 1.0, 20).mass_series(), 1.0), std::exp(-1.0), 1e-12);
  EXPECT_THROW(eval_series(SeriesVector({1.0}), -0.1), DomainError);
}

TEST(EvalSeries, ExponentialMatchesClosedFormInsideFiveDecayLengths) {
  for (double lambda : {0.05, 0.3, 1.0, 2.0}) {
    const MassProfile m = expand_exponential(1.3, lambda, 40);
    for (int j = 0; j <= 20; ++j) {
      const double r = 5.0 / lambda * j / 20.0;
      const double ref = 1.3 * std::exp(-lambda * r);
      EXPECT_NEAR(eval_series(m.mass_series(), r) / ref, 1.0, 1e-10) << "lambda " << lambda << " r " << r;
    }
  }
}

TEST(CustomMass, PadsAndDivides) {
  const MassProfile m = custom_mass({2.0, 1.0}, 6);
  EXPECT_EQ(m.mass_series().order(), 6);
  EXPECT_EQ(m.kind(), MassKind::custom_series);
  EXPECT_NEAR(m.logderiv_series()[0], 0.5, 1e-16);
  EXPECT_NEAR(m.logderiv_series()[1], -0.25, 1e-16);
  EXPECT_THROW(custom_mass({0.0, 1.0}), DomainError);
}

TEST(CauchyProduct, Basic) {
  const SeriesVector p = cauchy_product(SeriesVector({1.0, 1.0}), SeriesVector({1.0, -1.0}), 3);
  expect_series_near(p, {1.0, 0.0, -1.0, 0.0}, 0.0);
}

TEST(SeriesVector, DerivativeAndResize) {
  const SeriesVector s({1.0, 2.0, 3.0});
  expect_series_near(s.derivative(), {2.0, 6.0}, 0.0);
  expect_series_near(SeriesVector({4.0}).derivative(), {0.0}, 0.0);
  expect_series_near(s.resized(4), {1.0, 2.0, 3.0, 0.0, 0.0}, 0.0);
  expect_series_near(s.resized(0), {1.0}, 0.0);
  EXPECT_EQ(s.at(-1), 0.0);
  EXPECT_EQ(s.at(9), 0.0);
  EXPECT_DOUBLE_EQ(s.evaluate(2.0), 1.0 + 4.0 + 12.0);
}

}  // namespace
