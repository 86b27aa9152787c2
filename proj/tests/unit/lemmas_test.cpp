#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "fraclap/counterexample.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/representation.hpp"
#include "fraclap/sign_lemma.hpp"
#include "oracles.hpp"

using namespace fraclap;

namespace {

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

TEST(SignIntegral, Examples) {
  QuadratureSpec spec;
  EXPECT_NEAR(sign_integral_surface(2.0, 3, 1.0, 2.0, spec), 0.0, 1e-8);
  EXPECT_GT(sign_integral_surface(2.0, 3, 2.0, 1.0, spec), 0.0);
  EXPECT_LT(sign_integral_surface(1.0, 3, 1.0, 2.0, spec), 0.0);
  EXPECT_GT(sign_integral_surface(3.0, 4, 1.0, 2.0, spec), 0.0);
}

TEST(SignIntegral, SurfaceMatchesPolarAngleOracle) {
  QuadratureSpec spec;
  for (int n : {2, 3, 4, 5}) {
    for (double gamma : {0.5, 1.0, 1.5, 2.5, 3.0}) {
      for (auto [r, R] : {std::pair{1.0, 2.0}, {1.0, 5.0}, {2.0, 1.0}, {0.7, 0.3}}) {
        const double expected = oracle::dipole_surface(gamma, n, r, R);
        EXPECT_NEAR(sign_integral_surface(gamma, n, r, R, spec), expected, 1e-8 * std::abs(expected))
            << "n=" << n << " gamma=" << gamma << " r=" << r << " R=" << R;
      }
    }
  }
}

TEST(SignIntegral, SurfaceErrors) {
  QuadratureSpec spec;
  EXPECT_EQ(kind_of([&] { sign_integral_surface(1.0, 3, 1.0, 1.0, spec); }), ErrorKind::Singular);
  EXPECT_EQ(kind_of([&] { sign_integral_surface(1.0, 1, 1.0, 2.0, spec); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([&] { sign_integral_surface(1.0, 3, 0.0, 2.0, spec); }), ErrorKind::OutOfRange);
}

TEST(SignIntegralTheta, VanishesAtGammaTwo) {
  QuadratureSpec spec;
  for (double R : {1.1, 2.0, 7.0}) EXPECT_NEAR(sign_integral_theta(2.0, 3, R, spec), 0.0, 1e-8);
}

TEST(SignIntegralTheta, NegativeBelowTwoAndPositiveAbove) {
  QuadratureSpec spec;
  for (double R : {1.5, 3.0, 10.0}) {
    EXPECT_LT(sign_integral_theta(1.5, 3, R, spec), 0.0) << R;
    EXPECT_LT(sign_integral_surface(1.5, 3, 1.0, R, spec), 0.0) << R;
  }
  EXPECT_GT(sign_integral_theta(2.5, 3, 2.0, spec), 0.0);
  EXPECT_GT(sign_integral_surface(2.5, 3, 1.0, 2.0, spec), 0.0);
}

TEST(SignIntegralTheta, RatioToSurfaceIsTheLowerSphereArea) {
  QuadratureSpec spec;
  for (int n : {2, 3, 4}) {
    for (double gamma : {0.5, 1.5, 2.5, 3.0}) {
      for (double R : {1.2, 2.0, 5.0}) {
        const double ratio = sign_integral_surface(gamma, n, 1.0, R, spec) / sign_integral_theta(gamma, n, R, spec);
        EXPECT_NEAR(ratio, oracle::sphere_area(n - 1), 1e-6 * oracle::sphere_area(n - 1))
            << "n=" << n << " gamma=" << gamma << " R=" << R;
      }
    }
  }
}

TEST(SignIntegralTheta, RejectsInnerSpheres) {
  QuadratureSpec spec;
  EXPECT_EQ(kind_of([&] { sign_integral_theta(1.0, 3, 1.0, spec); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([&] { sign_integral_theta(1.0, 3, 0.5, spec); }), ErrorKind::OutOfRange);
}

TEST(SignLemma, TrichotomyOverTheGrid) {
  QuadratureSpec spec;
  for (int n : {3, 4}) {
    for (double gamma : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
      const Sign outside = gamma > 2.0 ? Sign::positive : gamma < 2.0 ? Sign::negative : Sign::zero;
      for (double R : {1.2, 2.0, 5.0}) {
        const auto res = sign_lemma(gamma, n, 1.0, R, spec);
        EXPECT_EQ(res.sign_expected, outside);
        EXPECT_EQ(res.sign_observed, outside) << "n=" << n << " gamma=" << gamma << " R=" << R;
        ASSERT_TRUE(res.value_theta.has_value());
        if (gamma != 2.0) {
          EXPECT_EQ(res.value_surface > 0.0, *res.value_theta > 0.0);
        }
      }
      for (double R : {0.3, 0.8}) {
        const auto res = sign_lemma(gamma, n, 1.0, R, spec);
        EXPECT_EQ(res.sign_observed, Sign::positive) << "n=" << n << " gamma=" << gamma << " R=" << R;
        EXPECT_FALSE(res.value_theta.has_value());
      }
    }
  }
}

TEST(SignLemma, ThetaValueIsRescaledForGeneralR) {
  QuadratureSpec spec;
  const auto res = sign_lemma(1.5, 3, 2.0, 5.0, spec);
  ASSERT_TRUE(res.value_theta.has_value());
  EXPECT_NEAR(*res.value_theta, res.value_surface, 1e-6 * std::abs(res.value_surface));
}

TEST(RieszDerivative, MatchesCentralDifferences) {
  QuadratureSpec spec;
  // Differencing amplifies quadrature error by 1/h, so the oracle runs tighter.
  QuadratureSpec tight;
  tight.rel_tol = 1e-12;
  tight.max_subdivisions = 20000;
  const auto f = bump_source(Bump{});
  for (auto [gamma, r] : {std::pair{1.5, 0.5}, {1.5, 1.5}, {1.0, 0.5}, {0.5, 3.0}, {2.5, 1.2}}) {
    const double h = 1e-4 * r;
    const double fd =
        (riesz_potential_at(f, gamma, 3, r + h, tight) - riesz_potential_at(f, gamma, 3, r - h, tight)) / (2.0 * h);
    EXPECT_NEAR(riesz_derivative(f, gamma, 3, r, spec), fd, 1e-5 * std::abs(fd) + 1e-12)
        << "gamma=" << gamma << " r=" << r;
  }
}

TEST(RieszDerivative, Errors) {
  QuadratureSpec spec;
  const auto f = bump_source(Bump{});
  EXPECT_EQ(kind_of([&] { riesz_derivative(f, 1.0, 3, 1.5, spec); }), ErrorKind::Singular);
  EXPECT_EQ(kind_of([&] { riesz_derivative(f, 1.0, 3, 0.0, spec); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([&] { riesz_derivative(f, 3.0, 3, 0.5, spec); }), ErrorKind::OutOfRange);
  const auto tailed = sample_radial([](double r) { return 1.0 / (1.0 + r * r * r * r); }, default_grid(),
                                    PowerTail{4.0, 1.0});
  EXPECT_EQ(kind_of([&] { riesz_derivative(tailed, 1.0, 3, 0.5, spec); }), ErrorKind::OutOfRange);
}

TEST(Counterexample, SuperharmonicYetIncreasingInTheHole) {
  QuadratureSpec spec;
  const auto report = build_counterexample(1.0, 3, Bump{}, spec);
  EXPECT_TRUE(report.f_nonneg);
  EXPECT_TRUE(report.strictly_increasing);
  EXPECT_GT(report.min_forward_difference, 1e-10 * report.u.sup_norm());
  EXPECT_LE(report.residual, 1e-2);
  EXPECT_GE(report.min_frac_laplacian, -1e-3);
  EXPECT_NEAR(report.r_lo, 0.05, 1e-15);
  EXPECT_NEAR(report.r_hi, 0.95, 1e-15);
  std::size_t inside = 0;
  for (double r : report.u.grid()) inside += (r > 0.0 && r < 1.0) ? 1 : 0;
  EXPECT_GE(inside, 64u);
  for (double v : report.u.values()) EXPECT_GT(v, 0.0);
}

TEST(Counterexample, DerivativeHasTheSignOfTheSurfaceIntegralFormula) {
  QuadratureSpec spec;
  const auto report = build_counterexample(1.0, 3, Bump{}, spec);
  for (double r : {0.2, 0.5, 0.8}) {
    const double direct = riesz_derivative(report.f, 1.0, 3, r, spec);
    const double h = 1e-3 * r;
    const double fitted = (report.u(r + h) - report.u(r - h)) / (2.0 * h);
    EXPECT_GT(direct, 0.0);
    EXPECT_NEAR(fitted, direct, 1e-3 * direct) << "r=" << r;
  }
}

TEST(Counterexample, StaysIncreasingAcrossAlpha) {
  QuadratureSpec spec;
  for (double alpha : {0.5, 1.5, 1.9}) {
    const auto report = build_counterexample(alpha, 3, Bump{}, spec);
    EXPECT_GT(report.min_forward_difference, 0.0) << "alpha=" << alpha;
  }
}

TEST(Counterexample, RejectsInvalidBumps) {
  QuadratureSpec spec;
  EXPECT_EQ(kind_of([&] { build_counterexample(1.0, 3, Bump{2.0, 1.0, 1.0, {}}, spec); }), ErrorKind::BumpInvalid);
  EXPECT_EQ(kind_of([&] { build_counterexample(1.0, 3, Bump{1.0, 2.0, 0.0, {}}, spec); }), ErrorKind::BumpInvalid);
  Bump negative{1.0, 2.0, 1.0, [](double s) { return s > 1.0 && s < 2.0 ? -1.0 : 0.0; }};
  EXPECT_EQ(kind_of([&] { build_counterexample(1.0, 3, negative, spec); }), ErrorKind::BumpInvalid);
  Bump leaky{1.0, 2.0, 1.0, [](double) { return 1.0; }};
  EXPECT_EQ(kind_of([&] { build_counterexample(1.0, 3, leaky, spec); }), ErrorKind::BumpInvalid);
  EXPECT_EQ(kind_of([&] { build_counterexample(2.0, 3, Bump{}, spec); }), ErrorKind::OutOfRange);
}

TEST(Representation, ZeroSourceGivesZeros) {
  const auto zero = sample_radial([](double) { return 0.0; }, default_grid());
  const auto terms = representation_identity(zero, 1.0, 3, 1.0, QuadratureSpec{});
  EXPECT_EQ(terms.lhs, 0.0);
  EXPECT_EQ(terms.rhs_green, 0.0);
  EXPECT_EQ(terms.rhs_poisson, 0.0);
  EXPECT_EQ(terms.relative_gap(), 0.0);
}

TEST(Representation, HoldsForTheAnnulusBump) {
  const auto terms = representation_identity(bump_source(Bump{}), 1.0, 3, 0.5, QuadratureSpec{});
  EXPECT_GT(terms.lhs, 0.0);
  EXPECT_LE(terms.relative_gap(), 1e-3);
}

TEST(Representation, GreenTermAloneForLargeBalls) {
  QuadratureSpec spec;
  const auto f = bump_source(Bump{});
  const auto terms = representation_identity(f, 1.0, 3, 20.0, spec);
  EXPECT_LE(std::abs(terms.lhs - terms.rhs_green), 0.05 * terms.lhs);
}

TEST(Representation, HoldsForRandomBumpsAndRadii) {
  QuadratureSpec spec;
  std::mt19937 rng(20261019);
  std::uniform_real_distribution<double> lo_dist(0.2, 1.5);
  std::uniform_real_distribution<double> width_dist(0.3, 2.0);
  std::uniform_real_distribution<double> radius_dist(0.3, 4.0);
  std::uniform_real_distribution<double> alpha_dist(0.4, 1.8);
  for (int trial = 0; trial < 3; ++trial) {
    const double lo = lo_dist(rng);
    const Bump bump{lo, lo + width_dist(rng), 1.0, {}};
    const double alpha = alpha_dist(rng);
    const auto f = bump_source(bump);
    const auto u = riesz_potential(f, alpha, 3, spec);
    for (int k = 0; k < 3; ++k) {
      const double R = radius_dist(rng);
      EXPECT_LE(representation_identity(f, u, alpha, 3, R, spec).relative_gap(), 1e-3)
          << "bump (" << bump.lo << ", " << bump.hi << ") alpha=" << alpha << " R=" << R;
    }
  }
}

TEST(Representation, Errors) {
  const auto f = bump_source(Bump{});
  EXPECT_EQ(kind_of([&] { representation_identity(f, 1.0, 3, 0.0, QuadratureSpec{}); }), ErrorKind::OutOfRange);
  EXPECT_EQ(kind_of([&] { representation_identity(f, 2.0, 3, 1.0, QuadratureSpec{}); }), ErrorKind::OutOfRange);
}
