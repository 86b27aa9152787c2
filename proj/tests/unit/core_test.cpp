#include <gtest/gtest.h>

#include <atomic>
#include <cstring>
#include <functional>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fraclap/error.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/params.hpp"
#include "fraclap/radial.hpp"
#include "fraclap/radial_io.hpp"
#include "fraclap/sphere.hpp"
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

std::string field_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.field();
  }
  return "<none>";
}

}  // namespace

TEST(Validate, AcceptsTheSubcriticalCriticalPoint) {
  ProblemParams p;
  p.p = p.q = 2.0;
  const auto v = validate(p);
  EXPECT_TRUE(v.subcritical_order());
  EXPECT_FALSE(v.high_order());
  EXPECT_DOUBLE_EQ(v.order_u(), 1.0);
}

TEST(Validate, FlagsHighOrderWhenTwoKPlusAlphaReachesN) {
  ProblemParams p{.n = 2, .k = 1, .l = 0, .alpha = 0.5, .beta = 0.5};
  const auto v = validate(p);
  EXPECT_TRUE(v.high_order());
  EXPECT_FALSE(v.subcritical_order());
}

TEST(Validate, RejectsAlphaNotBelowMinOfTwoAndN) {
  ProblemParams p{.n = 1, .alpha = 1.5, .beta = 0.5};
  EXPECT_EQ(kind_of([&] { validate(p); }), ErrorKind::OutOfRange);
  EXPECT_EQ(field_of([&] { validate(p); }), "alpha");
}

TEST(Validate, NamesTheOffendingField) {
  const auto field = [](auto mutate) {
    ProblemParams p;
    mutate(p);
    return field_of([&] { validate(p); });
  };
  EXPECT_EQ(field([](ProblemParams& p) { p.n = 0; }), "n");
  EXPECT_EQ(field([](ProblemParams& p) { p.k = -1; }), "k");
  EXPECT_EQ(field([](ProblemParams& p) { p.beta = 2.0; }), "beta");
  EXPECT_EQ(field([](ProblemParams& p) { p.a = -0.1; }), "a");
  EXPECT_EQ(field([](ProblemParams& p) { p.q = -1.0; }), "q");
  EXPECT_EQ(field([](ProblemParams& p) { p.p = std::nan(""); }), "p");
}

TEST(Validate, AcceptsExactlyTheHypothesisSet) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    ProblemParams p;
    p.n = 1 + static_cast<int>(unit(rng) * 5);
    p.k = static_cast<int>(unit(rng) * 3);
    p.l = static_cast<int>(unit(rng) * 3);
    p.alpha = -0.5 + 3.0 * unit(rng);
    p.beta = -0.5 + 3.0 * unit(rng);
    p.a = -0.5 + 3.0 * unit(rng);
    p.b = -0.5 + 3.0 * unit(rng);
    p.p = -0.5 + 3.0 * unit(rng);
    p.q = -0.5 + 3.0 * unit(rng);
    const double cap = std::min(2.0, double(p.n));
    const bool expected = p.alpha > 0 && p.alpha < cap && p.beta > 0 && p.beta < cap && p.a >= 0 &&
                          p.b >= 0 && p.p >= 0 && p.q >= 0;
    bool accepted = true;
    try {
      const auto v = validate(p);
      EXPECT_EQ(v.subcritical_order(), v.order_u() < p.n && v.order_v() < p.n);
      EXPECT_EQ(v.high_order(), std::max(v.order_u(), v.order_v()) >= p.n);
    } catch (const Error&) {
      accepted = false;
    }
    EXPECT_EQ(accepted, expected) << "trial " << trial;
  }
}

TEST(MakeRadial, PowerLawMatchesItselfBetweenNodes) {
  std::vector<std::pair<double, double>> samples;
  for (double r : log_grid(0.01, 100.0, 64)) samples.emplace_back(r, 1.0 / (r * r));
  const auto u = make_radial(samples, PowerTail{2.0, 1.0});
  EXPECT_NEAR(u(5.0), 0.04, 0.04 * 1e-8);
  EXPECT_NEAR(u(400.0), 1.0 / 160000.0, 1e-20);
}

TEST(MakeRadial, ReproducesSamplesExactly) {
  std::vector<std::pair<double, double>> samples;
  for (double r : {0.1, 0.3, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 13.0}) {
    samples.emplace_back(r, 1.0 / (1.0 + r * r));
  }
  const auto u = make_radial(samples, PowerTail{2.0, 1.0});
  EXPECT_EQ(u(1.0), 0.5);
  for (const auto& [r, v] : samples) EXPECT_EQ(u(r), v);
}

TEST(MakeRadial, SortsUnorderedSamples) {
  std::vector<std::pair<double, double>> samples;
  for (int i = 10; i >= 1; --i) samples.emplace_back(i, i * 2.0);
  const auto u = make_radial(samples);
  EXPECT_EQ(u.r_min(), 1.0);
  EXPECT_EQ(u.r_max(), 10.0);
  EXPECT_EQ(u(7.0), 14.0);
}

TEST(MakeRadial, RejectsDegenerateInput) {
  EXPECT_EQ(kind_of([] { make_radial({}); }), ErrorKind::EmptyInput);

  std::vector<std::pair<double, double>> dup;
  for (int i = 1; i <= 9; ++i) dup.emplace_back(i, 1.0);
  dup.emplace_back(3.0, 2.0);
  EXPECT_EQ(kind_of([&] { make_radial(dup); }), ErrorKind::DuplicateRadius);

  std::vector<std::pair<double, double>> nan_value;
  for (int i = 1; i <= 9; ++i) nan_value.emplace_back(i, i == 4 ? std::nan("") : 1.0);
  EXPECT_EQ(kind_of([&] { make_radial(nan_value); }), ErrorKind::NonFiniteValue);

  std::vector<std::pair<double, double>> few;
  for (int i = 1; i <= 5; ++i) few.emplace_back(i, 1.0);
  EXPECT_EQ(kind_of([&] { make_radial(few); }), ErrorKind::OutOfRange);

  std::vector<std::pair<double, double>> negative;
  for (int i = 0; i <= 9; ++i) negative.emplace_back(i - 1.0, 1.0);
  EXPECT_EQ(kind_of([&] { make_radial(negative); }), ErrorKind::OutOfRange);
}

TEST(RadialFunction, InterpolantIsMonotoneForMonotoneData) {
  const auto u = sample_radial([](double r) { return 1.0 / (1.0 + r * r); }, log_grid(0.01, 100.0, 12),
                               PowerTail{2.0, 1.0});
  double previous = u(0.01);
  for (double r : log_grid(0.01, 100.0, 4000)) {
    const double v = u(r);
    EXPECT_LE(v, previous) << "r = " << r;
    previous = v;
  }
}

TEST(RadialFunction, InterpolationErrorIsSmallOnTheDefaultGrid) {
  auto f = [](double r) { return std::exp(-r) + 1.0 / (1.0 + r * r); };
  const auto u = sample_radial(f, default_grid(), PowerTail{2.0, 1.0});
  double worst = 0.0;
  for (double r : log_grid(2e-3, 50.0, 997)) worst = std::max(worst, std::abs(u(r) - f(r)) / f(r));
  EXPECT_LT(worst, 1e-6);
}

TEST(RadialFunction, TailAndInnerExtensionsApply) {
  const auto grid = log_grid(1.0, 10.0, 16);
  auto f = [](double r) { return 3.0 * std::pow(r, -1.5); };
  const auto power = sample_radial(f, grid, PowerTail{1.5, 3.0}, InnerExtension::power(-1.5));
  EXPECT_NEAR(power(100.0), f(100.0), 1e-15);
  EXPECT_NEAR(power(0.01), f(0.01), 1e-12 * f(0.01));

  const auto constant = sample_radial(f, grid);
  EXPECT_EQ(constant(0.5), 3.0);
  EXPECT_EQ(constant(11.0), 0.0);  // no tail means zero beyond the grid

  const auto zero = sample_radial(f, grid, std::nullopt, InnerExtension::zero());
  EXPECT_EQ(zero(0.5), 0.0);
}

TEST(RadialFunction, EvaluationIsBitReproducible) {
  const auto u = sample_radial([](double r) { return std::sin(r) + 2.0; }, log_grid(0.1, 10.0, 40));
  for (double r : {0.123, 1.5, 7.77}) {
    const double a = u(r);
    const double b = u(r);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
  }
}

TEST(RadialFunction, LAlphaMembershipFollowsTailAndInner) {
  const auto grid = log_grid(0.1, 10.0, 16);
  auto one = [](double) { return 1.0; };
  EXPECT_TRUE(in_l_alpha(sample_radial(one, grid, PowerTail{0.0, 1.0}), 1.0, 3));
  EXPECT_TRUE(in_l_alpha(sample_radial(one, grid, PowerTail{-0.5, 1.0}), 1.0, 2));
  EXPECT_FALSE(in_l_alpha(sample_radial(one, grid, PowerTail{-1.0, 1.0}), 1.0, 2));
  EXPECT_FALSE(in_l_alpha(sample_radial(one, grid, std::nullopt, InnerExtension::power(-3.0)), 1.0, 3));
  EXPECT_TRUE(in_l_alpha(sample_radial(one, grid, std::nullopt, InnerExtension::power(-2.9)), 1.0, 3));
}

TEST(Grids, LogGridHitsEndpointsExactly) {
  const auto g = log_grid(1e-3, 1e4, 256);
  ASSERT_EQ(g.size(), 256u);
  EXPECT_EQ(g.front(), 1e-3);
  EXPECT_EQ(g.back(), 1e4);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
  EXPECT_EQ(default_grid(), g);
}

TEST(Grids, MergeDropsNearDuplicates) {
  const std::vector<double> a{1.0, 2.0, 3.0};
  const std::vector<double> b{2.0 * (1.0 + 1e-14), 2.5};
  const auto m = merge_grids(a, b);
  EXPECT_EQ(m, (std::vector<double>{1.0, 2.0, 2.5, 3.0}));
}

TEST(RadialIo, CsvAndSidecarRoundTripBitForBit) {
  const auto u = sample_radial([](double r) { return std::exp(-r) / 3.0; }, log_grid(0.01, 30.0, 50),
                               PowerTail{2.5, 0.125}, InnerExtension::power(0.5));
  const auto back = radial_from_text(radial_to_csv(u), radial_sidecar_json(u));
  ASSERT_EQ(back.size(), u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(back.grid()[i], u.grid()[i]);
    EXPECT_EQ(back.values()[i], u.values()[i]);
  }
  ASSERT_TRUE(back.tail());
  EXPECT_EQ(back.tail()->sigma, 2.5);
  EXPECT_EQ(back.tail()->c, 0.125);
  EXPECT_EQ(back.inner().kind, InnerKind::power);
  EXPECT_EQ(back.inner().exponent, 0.5);
}

TEST(RadialIo, CsvStartsWithTheSchemaBanner) {
  const auto u = sample_radial([](double r) { return r; }, log_grid(1.0, 2.0, 8));
  const auto csv = radial_to_csv(u);
  EXPECT_EQ(csv.rfind("# fraclap v0.1 schema=1\nr,value\n", 0), 0u);
}

TEST(RadialIo, RejectsMalformedText) {
  EXPECT_EQ(kind_of([] { radial_from_text("x,y\n1,2\n", ""); }), ErrorKind::Io);
  EXPECT_EQ(kind_of([] { radial_from_text("r,value\n1;2\n", ""); }), ErrorKind::Io);
  EXPECT_EQ(kind_of([] { radial_from_text("r,value\n1,abc\n", ""); }), ErrorKind::Io);
  EXPECT_EQ(kind_of([] { radial_from_text("r,value\n", "{not json"); }), ErrorKind::Io);
  EXPECT_EQ(kind_of([] { radial_from_text("r,value\n", R"({"inner":"cubic"})"); }), ErrorKind::Io);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsWorkerExceptions) {
  EXPECT_THROW(parallel_for(100, [](std::size_t i) {
                 if (i == 57) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}

TEST(Parallel, ThreadCountOverrideAndEnvironmentFallback) {
  set_thread_count(3);
  EXPECT_EQ(thread_count(), 3u);
  ::setenv("FRACLAP_THREADS", "2", 1);
  set_thread_count(0);
  EXPECT_EQ(thread_count(), 2u);
  ::unsetenv("FRACLAP_THREADS");
  set_thread_count(0);
  EXPECT_GE(thread_count(), 1u);
}

TEST(Sphere, AreasMatchClosedForms) {
  EXPECT_DOUBLE_EQ(sphere_area(1), 2.0);
  EXPECT_NEAR(sphere_area(2), 2.0 * oracle::kPi, 1e-14);
  EXPECT_NEAR(sphere_area(3), 4.0 * oracle::kPi, 1e-14);
  for (int n = 1; n <= 8; ++n) EXPECT_NEAR(sphere_area(n), oracle::sphere_area(n), 1e-13);
}
