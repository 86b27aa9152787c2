#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "fraclap/averages.hpp"
#include "fraclap/counterexample.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "oracles.hpp"

using namespace fraclap;

namespace {

RadialFunction constant(double c) {
  return sample_radial([c](double) { return c; }, default_grid(), PowerTail{0.0, c});
}

RadialFunction power(double sigma, double scale = 1.0) {
  return sample_radial([=](double r) { return scale * std::pow(r, -sigma); }, default_grid(),
                       PowerTail{sigma, scale}, InnerExtension::power(-sigma));
}

ErrorKind kind_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no fraclap::Error thrown";
  return ErrorKind::Io;
}

}  // namespace

TEST(NonlocalAverage, ConstantOneGivesTheBetaValue) {
  QuadratureSpec spec;
  EXPECT_NEAR(nonlocal_average(constant(1.0), 1.0, 3.0, spec), oracle::kPi / 2.0, 1e-10);
  for (double alpha : {0.25, 0.7, 1.3, 1.8}) {
    const double expected = 0.5 * boost::math::beta(0.5 * alpha, 1.0 - 0.5 * alpha);
    EXPECT_NEAR(nonlocal_average(constant(1.0), alpha, 0.4, spec), expected, 1e-9 * expected);
  }
}

TEST(NonlocalAverage, ZeroGivesZero) {
  const auto zero = sample_radial([](double) { return 0.0; }, default_grid());
  EXPECT_EQ(nonlocal_average(zero, 1.0, 2.0, QuadratureSpec{}), 0.0);
}

TEST(NonlocalAverage, PowerLawsScaleHomogeneously) {
  QuadratureSpec spec;
  const auto u = power(2.0);
  const double at_one = nonlocal_average(u, 0.5, 1.0, spec);
  for (double R : {0.5, 2.0, 8.0}) {
    EXPECT_NEAR(nonlocal_average(u, 0.5, R, spec), std::pow(R, -2.0) * at_one, 1e-9 * std::pow(R, -2.0) * at_one);
  }
}

TEST(NonlocalAverage, ConvergesExactlyWhenSigmaExceedsMinusAlpha) {
  QuadratureSpec spec;
  // Growth slower than r^α is still integrable against R^α / (r (r²-R²)^{α/2}).
  const auto slow = power(-0.5);
  const double value = nonlocal_average(slow, 1.0, 1.0, spec);
  // ∫_0^1 (1-t²)^{-1/2} t^{-1/2} dt = B(1/4, 1/2) / 2.
  EXPECT_NEAR(value, 0.5 * boost::math::beta(0.25, 0.5), 1e-9);
  EXPECT_EQ(kind_of([&] { nonlocal_average(power(-1.0), 1.0, 1.0, spec); }), ErrorKind::DivergentTail);
  EXPECT_EQ(kind_of([&] { nonlocal_average(constant(1.0), 1.0, 0.0, spec); }), ErrorKind::OutOfRange);
}

TEST(NonlocalAverage, IsLinearAndMonotoneInTheFunction) {
  QuadratureSpec spec;
  const auto u = sample_radial([](double r) { return 1.0 / (1.0 + r * r); }, default_grid(), PowerTail{2.0, 1.0});
  const auto w = sample_radial([](double r) { return 2.0 / (1.0 + r); }, default_grid(), PowerTail{1.0, 2.0});
  const auto sum = sample_radial([](double r) { return 1.0 / (1.0 + r * r) + 3.0 * 2.0 / (1.0 + r); },
                                 default_grid(), PowerTail{1.0, 6.0});
  for (double R : {0.1, 1.0, 10.0}) {
    const double a = nonlocal_average(u, 0.8, R, spec);
    const double b = nonlocal_average(w, 0.8, R, spec);
    EXPECT_NEAR(nonlocal_average(sum, 0.8, R, spec), a + 3.0 * b, 1e-6 * (a + 3.0 * b));
    EXPECT_LE(a, b);  // u <= w pointwise
  }
}

TEST(NonlocalAverage, NonIncreasingInRForAPotentialOfAPositiveSource) {
  QuadratureSpec spec;
  for (double alpha : {0.5, 1.0, 1.5}) {
    const auto u = riesz_potential(bump_source(Bump{}), alpha, 3, spec);
    double previous = nonlocal_average(u, alpha, 0.05, spec);
    for (double R : log_grid(0.06, 50.0, 19)) {
      const double value = nonlocal_average(u, alpha, R, spec);
      EXPECT_LE(value, previous * (1.0 + 1e-8)) << "alpha=" << alpha << " R=" << R;
      previous = value;
    }
  }
}

TEST(DecayExponents, Examples) {
  ProblemParams p;
  p.p = p.q = 2.0;
  auto e = decay_exponents(validate(p));
  EXPECT_DOUBLE_EQ(e.sigma_u, 1.0);
  EXPECT_DOUBLE_EQ(e.sigma_v, 1.0);

  ProblemParams q{.n = 5, .k = 1, .l = 0, .alpha = 1.0, .beta = 1.0, .a = 2.0, .b = 0.0, .p = 2.0, .q = 3.0};
  e = decay_exponents(validate(q));
  EXPECT_NEAR(e.sigma_u, 1.4, 1e-15);
  EXPECT_NEAR(e.sigma_v, (1.0 + 0.0 + 3.0 * (2.0 + 1.0 + 2.0)) / 5.0, 1e-15);
}

TEST(DecayExponents, SymmetricParametersGiveEqualExponents) {
  ProblemParams p{.n = 4, .k = 1, .l = 1, .alpha = 0.7, .beta = 0.7, .a = 0.3, .b = 0.3, .p = 1.7, .q = 1.7};
  const auto e = decay_exponents(validate(p));
  EXPECT_DOUBLE_EQ(e.sigma_u, e.sigma_v);
}

TEST(DecayExponents, RequireSupercriticalProduct) {
  ProblemParams p;
  p.p = 0.5;
  p.q = 2.0;
  EXPECT_EQ(kind_of([&] { decay_exponents(validate(p)); }), ErrorKind::PQNotSupercritical);
}

TEST(FitDecay, Examples) {
  const auto exact = fit_decay(power(2.0), 1.0, 100.0, 2.0);
  EXPECT_NEAR(exact.fitted_exponent, 2.0, 1e-12);
  EXPECT_LT(exact.residual, 1e-12);
  EXPECT_EQ(exact.theoretical_exponent, 2.0);

  const auto bubble = sample_radial([](double r) { return 1.0 / (1.0 + r * r); }, default_grid(), PowerTail{2.0, 1.0});
  EXPECT_NEAR(fit_decay(bubble, 20.0, 100.0).fitted_exponent, 2.0, 0.05);

  const auto flat = fit_decay(constant(3.0), 1.0, 10.0);
  EXPECT_NEAR(flat.fitted_exponent, 0.0, 1e-12);
  EXPECT_TRUE(std::isnan(flat.theoretical_exponent));
}

TEST(FitDecay, RejectsBadWindowsAndValues) {
  EXPECT_EQ(kind_of([] { fit_decay(power(1.0), 1e-5, 1.0); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([] { fit_decay(power(1.0), 1.0, 1.01); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([] { fit_decay(constant(-1.0), 1.0, 10.0); }), ErrorKind::NonPositiveValues);
}

TEST(LocalDecayCheck, ZeroPairGivesZeroProducts) {
  ProblemParams p;
  p.p = p.q = 2.0;
  const auto zero = sample_radial([](double) { return 0.0; }, default_grid());
  const auto report = local_decay_check(zero, zero, validate(p), {1.0, 10.0, 100.0}, QuadratureSpec{});
  for (double x : report.u_products) EXPECT_EQ(x, 0.0);
  for (double x : report.v_average_products) EXPECT_EQ(x, 0.0);
  EXPECT_TRUE(report.bounded);
  EXPECT_TRUE(report.exploratory);
}

TEST(LocalDecayCheck, CriticalBubblePairIsBounded) {
  ProblemParams p;
  p.p = p.q = 2.0;
  const auto u = sample_radial([](double r) { return 2.0 / (1.0 + r * r); }, default_grid(), PowerTail{2.0, 2.0});
  const auto radii = log_grid(1.0, 1000.0, 13);
  const auto report = local_decay_check(u, u, validate(p), radii, QuadratureSpec{});
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double R = radii[i];
    EXPECT_DOUBLE_EQ(report.u_products[i], u(R) * R);
    EXPECT_NEAR(report.u_products[i], 2.0 * R / (1.0 + R * R), 1e-6);  // grid interpolation
  }
  EXPECT_LE(report.max_u, 1.0 + 1e-12);
  EXPECT_TRUE(report.bounded);
}

TEST(LocalDecayCheck, TooSlowDecayIsFlaggedUnbounded) {
  ProblemParams p;
  p.p = p.q = 2.0;
  const auto slow = power(0.5);
  const auto report = local_decay_check(slow, slow, validate(p), log_grid(1.0, 1000.0, 13), QuadratureSpec{});
  EXPECT_FALSE(report.bounded);
  EXPECT_NEAR(report.u_products.back() / report.u_products.front(), std::pow(1000.0, 0.5), 1e-9);
}
