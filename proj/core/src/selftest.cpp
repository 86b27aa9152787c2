#include "fraclap/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "fraclap/averages.hpp"
#include "fraclap/counterexample.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/liouville.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/picard.hpp"
#include "fraclap/representation.hpp"
#include "fraclap/sign_lemma.hpp"
#include "fraclap/sphere.hpp"

namespace fraclap {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buffer[256];
  std::snprintf(buffer, sizeof buffer, format, a, b, c, d);
  return buffer;
}

double rel_err(double value, double expected) {
  return std::abs(value - expected) / std::abs(expected);
}

CriterionResult outcome(bool passed, std::string detail) {
  CriterionResult r;
  r.passed = passed;
  r.detail = std::move(detail);
  return r;
}

RadialFunction bubble(double scale, double exponent, std::vector<double> grid = default_grid()) {
  return sample_radial([=](double r) { return scale * std::pow(1.0 + r * r, -exponent); },
                       std::move(grid), PowerTail{2.0 * exponent, scale});
}

CriterionResult riesz_constants() {
  const double e1 = rel_err(riesz_constant(2.0, 3), 1.0 / (4.0 * kPi));
  const double e2 = rel_err(riesz_constant(1.0, 2), 1.0 / (2.0 * kPi));
  const double e3 = rel_err(riesz_constant(2.0, 4), 1.0 / (4.0 * kPi * kPi));
  const double worst = std::max({e1, e2, e3});
  return outcome(worst <= 1e-12, fmt("max rel err %.3g (tol 1e-12)", worst));
}

CriterionResult newton_shell() {
  const QuadratureSpec spec;
  const auto radii = log_grid(0.1, 10.0, 10);
  double worst = 0.0;
  for (double r : radii) {
    for (double s : radii) {
      worst = std::max(worst, rel_err(ring_kernel(r, s, 2.0, 3, spec), 1.0 / std::max(r, s)));
    }
  }
  return outcome(worst <= 1e-8, fmt("max rel err %.3g over 10x10 (tol 1e-8)", worst));
}

CriterionResult inversion() {
  const QuadratureSpec spec;
  const Bump bump;
  const auto f = bump_source(bump);
  double f_max = 0.0;
  std::vector<double> samples;
  for (int i = 0; i < 16; ++i) samples.push_back(1.0 + (i + 0.5) / 16.0);
  for (double s : samples) f_max = std::max(f_max, bump(s));
  f_max = std::max(f_max, f.sup_norm());

  std::string detail;
  bool passed = true;
  for (double alpha : {1.0, 0.5}) {
    const auto u = riesz_potential(f, alpha, 3, spec);
    std::vector<double> errors(samples.size());
    parallel_for(samples.size(), [&](std::size_t i) {
      errors[i] = std::abs(frac_laplacian(u, alpha, 3, samples[i], spec) - bump(samples[i]));
    });
    const double worst = *std::max_element(errors.begin(), errors.end()) / f_max;
    passed = passed && worst <= 1e-2;
    detail += fmt("alpha=%.2g: sup rel err %.3g; ", alpha, worst);
  }
  return outcome(passed, detail + "(tol 1e-2)");
}

CriterionResult bubble_identity() {
  const QuadratureSpec spec;
  // The grid reaches down to 1e-6 so that the constant continuation below the
  // first node does not bias the value at the origin.
  const auto u = bubble(1.0, 1.0, log_grid(1e-6, 1e4, 366));
  const std::vector<double> radii{0.0, 0.5, 1.0, 2.0};
  std::vector<double> errors(radii.size());
  parallel_for(radii.size(), [&](std::size_t i) {
    const double r = radii[i];
    errors[i] = rel_err(frac_laplacian(u, 1.0, 3, r, spec), 2.0 * std::pow(1.0 + r * r, -2.0));
  });
  const double worst = *std::max_element(errors.begin(), errors.end());
  return outcome(worst <= 1e-3, fmt("max rel err %.3g at r in {0,0.5,1,2} (tol 1e-3)", worst));
}

CriterionResult sign_trichotomy() {
  const QuadratureSpec spec;
  const int n = 3;
  const std::vector<double> gammas{0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
  const std::vector<double> outer{1.2, 2.0, 5.0};
  const std::vector<double> inner{0.3, 0.8};
  bool signs_ok = true;
  bool agree_ok = true;
  double zero_ratio = 0.0;
  double ratio_spread = 0.0;
  for (double gamma : gammas) {
    std::vector<double> ratios;
    for (double R : outer) {
      const auto res = sign_lemma(gamma, n, 1.0, R, spec);
      const double theta = *res.value_theta;
      if (gamma == 2.0) {
        const auto ref = sign_lemma(3.0, n, 1.0, R, spec);
        zero_ratio = std::max({zero_ratio, std::abs(res.value_surface / ref.value_surface),
                               std::abs(theta / *ref.value_theta)});
        continue;
      }
      signs_ok = signs_ok && res.sign_observed == res.sign_expected;
      agree_ok = agree_ok && (res.value_surface > 0.0) == (theta > 0.0);
      ratios.push_back(res.value_surface / theta);
    }
    for (double R : inner) {
      const auto res = sign_lemma(gamma, n, 1.0, R, spec);
      signs_ok = signs_ok && res.sign_observed == Sign::positive;
    }
    if (!ratios.empty()) {
      const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
      ratio_spread = std::max(ratio_spread, (*hi - *lo) / std::abs(*lo));
    }
  }
  const bool passed = signs_ok && agree_ok && zero_ratio <= 1e-8 && ratio_spread <= 1e-3;
  return outcome(passed, std::string("signs ") + (signs_ok ? "ok" : "WRONG") + ", evaluators " +
                             (agree_ok ? "agree" : "DISAGREE") +
                             fmt("; zero case %.3g (tol 1e-8); ratio spread %.3g (tol 1e-3)",
                                 zero_ratio, ratio_spread));
}

CriterionResult counterexample() {
  const QuadratureSpec spec;
  const auto report = build_counterexample(1.0, 3, Bump{}, spec);
  const bool passed = report.strictly_increasing && report.min_frac_laplacian >= -1e-3 &&
                      report.f_nonneg;
  return outcome(passed,
                 fmt("min forward diff %.3g vs floor %.3g; min flap/max f %.3g (tol -1e-3)",
                     report.min_forward_difference, report.monotone_floor,
                     report.min_frac_laplacian));
}

CriterionResult representation() {
  const QuadratureSpec spec;
  const std::vector<Bump> bumps{{1.0, 2.0, 1.0, {}}, {0.5, 1.5, 2.0, {}}, {0.25, 3.0, 0.5, {}}};
  double worst = 0.0;
  double worst_green = 0.0;
  for (const Bump& bump : bumps) {
    const auto f = bump_source(bump);
    const auto u = riesz_potential(f, 1.0, 3, spec);
    for (double R : {0.5, 1.0, 2.0}) {
      worst = std::max(worst, representation_identity(f, u, 1.0, 3, R, spec).relative_gap());
    }
    const auto far = representation_identity(f, u, 1.0, 3, 20.0, spec);
    worst_green = std::max(worst_green, std::abs(far.lhs - far.rhs_green) / far.lhs);
  }
  return outcome(worst <= 1e-3 && worst_green <= 0.05,
                 fmt("max rel gap %.3g (tol 1e-3); green-only gap at R=20 %.3g (tol 0.05)", worst,
                     worst_green));
}

CriterionResult average_monotone() {
  const QuadratureSpec spec;
  const auto f = bump_source(Bump{});
  const auto u = riesz_potential(f, 1.0, 3, spec);
  const auto radii = log_grid(0.1, 100.0, 20);
  std::vector<double> averages(radii.size());
  parallel_for(radii.size(),
               [&](std::size_t i) { averages[i] = nonlocal_average(u, 1.0, radii[i], spec); });
  const double slack = 1e-6 * averages.front();
  double worst_rise = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < averages.size(); ++i) {
    worst_rise = std::max(worst_rise, averages[i + 1] - averages[i]);
  }
  return outcome(worst_rise <= slack,
                 fmt("largest step A(R_i+1)-A(R_i) = %.3g, slack %.3g", worst_rise, slack));
}

CriterionResult critical_decay() {
  const QuadratureSpec spec;
  ProblemParams raw;
  raw.p = 2.0;
  raw.q = 2.0;
  const auto params = validate(raw);
  const auto exps = decay_exponents(params);
  const double exp_err = std::max(std::abs(exps.sigma_u - 1.0), std::abs(exps.sigma_v - 1.0));
  const auto u = bubble(2.0, 1.0);
  const auto report = local_decay_check(u, u, params, log_grid(1.0, 100.0, 20), spec);
  const double worst = std::max(report.max_u, report.max_v);
  return outcome(exp_err <= 1e-12 && worst <= 2.1,
                 fmt("exponents off by %.3g; max compensated product %.6g (bound 2.1)", exp_err,
                     worst));
}

CriterionResult bootstrap_oracle() {
  auto run = [](double p, double q) {
    ProblemParams raw;
    raw.p = p;
    raw.q = q;
    return bootstrap(validate(raw), 8);
  };
  const auto a = run(1.5, 1.5);
  const auto b = run(1.0, 1.0);
  const auto c = run(0.5, 0.5);
  double err = std::max(std::abs(a.mu_u[2] + 0.25), std::abs(a.mu_u[4] + 3.0625));
  for (std::size_t j = 0; 2 * j < b.mu_u.size(); ++j) {
    err = std::max(err, std::abs(b.mu_u[2 * j] - (1.0 - 2.0 * j)));
  }
  err = std::max(err, std::abs(c.limit_u + 2.0));
  const bool classes = a.limit_class == LimitClass::diverges_to_minus_infinity &&
                       b.limit_class == LimitClass::arithmetic_decrease &&
                       c.limit_class == LimitClass::converges;
  return outcome(err <= 1e-12 && classes,
                 fmt("max abs err %.3g (tol 1e-12); limit classes ", err) +
                     (classes ? "ok" : "WRONG"));
}

CriterionResult classifier() {
  auto verdict_of = [](ProblemParams raw) { return classify(validate(raw)).verdict; };
  ProblemParams base;
  bool table = true;
  ProblemParams x = base;
  x.p = x.q = 1.0;
  table = table && verdict_of(x) == Verdict::nonexistence_linear;
  x.p = x.q = 2.0;
  table = table && verdict_of(x) == Verdict::critical_pair;
  x.p = x.q = 1.5;
  table = table && verdict_of(x) == Verdict::nonexistence_subcritical;
  ProblemParams high;
  high.n = 2;
  high.k = 1;
  high.alpha = high.beta = 0.5;
  table = table && verdict_of(high) == Verdict::nonexistence_high_order;

  const auto map = region_map(base, 1.0, 3.0, 1.0, 3.0, 21, 21);
  const auto swapped = region_map(swap_roles(base), 1.0, 3.0, 1.0, 3.0, 21, 21);
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < 21; ++i) {
    for (std::size_t j = 0; j < 21; ++j) {
      const auto& here = map.at(i, j).verdict;
      const auto& there = swapped.at(j, i).verdict;
      std::vector<Verdict> mirrored;
      for (Verdict v : here.satisfied) mirrored.push_back(mirror(v));
      std::vector<Verdict> other = there.satisfied;
      std::sort(mirrored.begin(), mirrored.end());
      std::sort(other.begin(), other.end());
      const bool same_fallback = !here.satisfied.empty() || here.verdict == there.verdict;
      if (mirrored != other || !same_fallback) ++mismatches;
    }
  }
  return outcome(table && mismatches == 0,
                 std::string("truth table ") + (table ? "ok" : "WRONG") +
                     fmt("; %g asymmetric cells of 441", static_cast<double>(mismatches)));
}

CriterionResult picard_bubble() {
  const QuadratureSpec spec;
  ProblemParams raw;
  raw.p = raw.q = 2.0;
  const auto u0 = bubble(2.0, 1.0);
  const auto traj = picard_iterate(validate(raw), u0, u0, 5, spec);
  double worst = 0.0;
  for (std::size_t i = 1; i < traj.residuals.size(); ++i) worst = std::max(worst, traj.residuals[i]);
  const bool passed = traj.steps() == 5 && worst <= 1e-2;
  return outcome(passed, fmt("%g steps, max residual %.3g (tol 1e-2)",
                             static_cast<double>(traj.steps()), worst));
}

CriterionResult kelvin_properties() {
  const double sigma = 2.0;
  const double lambda = 1.3;
  const auto u = sample_radial([](double r) { return std::exp(-r) + 1.0 / (1.0 + r * r * r); },
                               default_grid(), PowerTail{3.0, 1.0});
  const auto twice = kelvin(kelvin(u, lambda, sigma), lambda, sigma);
  double involution = 0.0;
  for (double r : log_grid(1e-2, 1e3, 97)) involution = std::max(involution, rel_err(twice(r), u(r)));

  // r^{-σ/2} is invariant; r^{-σ} goes to the constant λ^{-σ}.
  const auto half = sample_radial([&](double r) { return std::pow(r, -0.5 * sigma); },
                                  default_grid(), PowerTail{0.5 * sigma, 1.0},
                                  InnerExtension::power(-0.5 * sigma));
  const auto image = kelvin(half, lambda, sigma);
  double fixed = 0.0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    fixed = std::max(fixed, rel_err(image.values()[i], std::pow(image.grid()[i], -0.5 * sigma)));
  }
  const auto full = sample_radial([&](double r) { return std::pow(r, -sigma); }, default_grid(),
                                  PowerTail{sigma, 1.0}, InnerExtension::power(-sigma));
  const auto constant = kelvin(full, lambda, sigma);
  for (double v : constant.values()) {
    fixed = std::max(fixed, rel_err(v, std::pow(lambda, -sigma)));
  }

  const auto b = bubble(1.0, 1.0);
  const auto defect = kelvin_defect(b, 1.0, 2.0);
  double omega = 0.0;
  for (double w : defect.omega.values()) omega = std::max(omega, std::abs(w));

  return outcome(involution <= 1e-6 && fixed <= 1e-13 && omega <= 1e-6,
                 fmt("involution %.3g (tol 1e-6); fixed point %.3g (tol 1e-13); bubble defect "
                     "%.3g (tol 1e-6)",
                     involution, fixed, omega));
}

}  // namespace

const std::vector<Criterion>& acceptance_criteria() {
  static const std::vector<Criterion> criteria{
      {1, "riesz-constant", 1e-3, riesz_constants},
      {2, "newton-shell", 1.0, newton_shell},
      {3, "inversion", 60.0, inversion},
      {4, "bubble-identity", 30.0, bubble_identity},
      {5, "sign-trichotomy", 30.0, sign_trichotomy},
      {6, "superharmonic-increasing", 60.0, counterexample},
      {7, "ball-representation", 120.0, representation},
      {8, "nonlocal-average-monotone", 30.0, average_monotone},
      {9, "critical-pair-decay", 30.0, critical_decay},
      {10, "bootstrap-exponents", 1e-3, bootstrap_oracle},
      {11, "classifier", 1.0, classifier},
      {12, "picard-bubble", 300.0, picard_bubble},
      {13, "kelvin", 1.0, kelvin_properties},
  };
  return criteria;
}

CriterionResult run_criterion(const Criterion& criterion) {
  const auto start = std::chrono::steady_clock::now();
  CriterionResult result;
  try {
    result = criterion.run();
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = std::string("exception: ") + e.what();
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.id = criterion.id;
  result.name = criterion.name;
  result.budget_seconds = criterion.budget_seconds;
  if (result.seconds > criterion.budget_seconds) {
    result.passed = false;
    result.detail += "; over time budget";
  }
  return result;
}

std::string format_result(const CriterionResult& result) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %02d %-26s ", result.passed ? "PASS" : "FAIL", result.id,
                result.name.c_str());
  char tail[64];
  std::snprintf(tail, sizeof tail, "  (%.3gs / %.3gs)", result.seconds, result.budget_seconds);
  return head + result.detail + tail;
}

std::vector<CriterionResult> run_selftest(const std::vector<int>& ids,
                                          const std::function<void(const std::string&)>& sink) {
  std::vector<CriterionResult> results;
  for (const auto& criterion : acceptance_criteria()) {
    if (!ids.empty() && std::find(ids.begin(), ids.end(), criterion.id) == ids.end()) continue;
    results.push_back(run_criterion(criterion));
    if (sink) sink(format_result(results.back()));
  }
  return results;
}

}  // namespace fraclap
