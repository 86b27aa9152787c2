#include "fraclap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "fraclap/error.hpp"
#include "fraclap/gauss_rules.hpp"

namespace fraclap {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0)) fail(ErrorKind::OutOfRange, "rel_tol", "must be > 0");
  if (!(abs_tol >= 0.0)) fail(ErrorKind::OutOfRange, "abs_tol", "must be >= 0");
  if (gauss_nodes < 4) fail(ErrorKind::OutOfRange, "gauss_nodes", "must be >= 4");
  if (max_subdivisions < 1) fail(ErrorKind::OutOfRange, "max_subdivisions", "must be >= 1");
  if (!(pv_cutoff_delta > 0.0)) fail(ErrorKind::OutOfRange, "pv_cutoff_delta", "must be > 0");
}

void QuadDiagnostics::record(const QuadResult& result) {
  calls_.fetch_add(1, std::memory_order_relaxed);
  if (!result.converged) {
    failures_.fetch_add(1, std::memory_order_relaxed);
    std::lock_guard lock(mutex_);
    worst_error_ = std::max(worst_error_, result.abs_error);
  }
}

double QuadDiagnostics::worst_error() const {
  std::lock_guard lock(mutex_);
  return worst_error_;
}

namespace {

struct Problem {
  FunctionRef<double(double)> f;
  double a;
  double b;
  double mu_a;
  double mu_b;
  int nodes;
  long evaluations = 0;
};

struct PanelSum {
  double value;
  double magnitude;  // same rule applied to |f|, for the round-off floor
};

// One Gauss rule on [lo, hi]. When the panel touches a singular end of the
// whole interval that end's power is moved into the weight.
PanelSum apply_rule(Problem& p, double lo, double hi) {
  const bool left_singular = lo == p.a && p.mu_a != 0.0;
  const bool right_singular = hi == p.b && p.mu_b != 0.0;
  const double left_exp = left_singular ? -p.mu_a : 0.0;
  const double right_exp = right_singular ? -p.mu_b : 0.0;
  const GaussRule& rule = gauss_jacobi(p.nodes, right_exp, left_exp);
  const double half = 0.5 * (hi - lo);
  const double scale = std::pow(half, 1.0 + left_exp + right_exp);
  double sum = 0.0;
  double magnitude = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double from_left = half * (1.0 + rule.nodes[i]);
    const double from_right = half * (1.0 - rule.nodes[i]);
    const double t = from_left <= from_right ? lo + from_left : hi - from_right;
    double g = p.f(t);
    if (left_singular) g *= std::pow(t - p.a, p.mu_a);
    if (right_singular) g *= std::pow(p.b - t, p.mu_b);
    sum += rule.weights[i] * g;
    magnitude += rule.weights[i] * std::abs(g);
  }
  p.evaluations += static_cast<long>(rule.nodes.size());
  return {sum * scale, magnitude * std::abs(scale)};
}

struct Panel {
  double lo;
  double hi;
  PanelSum left;
  PanelSum right;
  double error;
  bool splittable;
};

Panel make_panel(Problem& p, double lo, double hi, const PanelSum& whole) {
  const double mid = 0.5 * (lo + hi);
  Panel panel{lo, hi, apply_rule(p, lo, mid), apply_rule(p, mid, hi), 0.0, true};
  panel.error = std::abs(whole.value - panel.left.value - panel.right.value);
  const double width_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::abs(lo), std::abs(hi), 1e-300});
  panel.splittable = (hi - lo) > width_floor && mid > lo && mid < hi;
  if (!panel.splittable) panel.error = 0.0;
  return panel;
}

}  // namespace

QuadResult integrate_ref(FunctionRef<double(double)> f, double a, double b, double mu_a,
                         double mu_b, std::span<const double> breakpoints,
                         const QuadratureSpec& spec) {
  if (!(mu_a < 1.0) || !(mu_b < 1.0)) {
    fail(ErrorKind::OutOfRange, "mu", "endpoint singularity exponents must be < 1");
  }
  if (!std::isfinite(a) || !std::isfinite(b)) {
    fail(ErrorKind::OutOfRange, "interval", "integration limits must be finite");
  }
  if (a == b) return {};
  if (a > b) {
    QuadResult flipped = integrate_ref(f, b, a, mu_b, mu_a, breakpoints, spec);
    flipped.value = -flipped.value;
    return flipped;
  }

  Problem problem{f, a, b, mu_a, mu_b, spec.gauss_nodes};
  // Cuts within rounding of an endpoint would leave a panel whose nodes round onto it.
  const double margin = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a + margin && x < b - margin) cuts.push_back(x);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Panel> panels;
  panels.reserve(cuts.size() + 16);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const PanelSum whole = apply_rule(problem, cuts[i], cuts[i + 1]);
    panels.push_back(make_panel(problem, cuts[i], cuts[i + 1], whole));
  }

  auto totals = [&panels] {
    double value = 0.0;
    double error = 0.0;
    double magnitude = 0.0;
    for (const Panel& panel : panels) {
      value += panel.left.value + panel.right.value;
      error += panel.error;
      magnitude += panel.left.magnitude + panel.right.magnitude;
    }
    return std::make_tuple(value, error, magnitude);
  };

  QuadResult result;
  while (true) {
    const auto [value, error, magnitude] = totals();
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * magnitude;
    const double tolerance = std::max({spec.abs_tol, spec.rel_tol * std::abs(value), roundoff});
    result.value = value;
    result.abs_error = error;
    if (error <= tolerance) {
      result.converged = true;
      break;
    }
    if (result.subdivisions >= spec.max_subdivisions) {
      result.converged = false;
      break;
    }
    auto worst = std::max_element(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
      return x.error < y.error;
    });
    if (worst->error == 0.0) {
      result.converged = false;
      break;
    }
    const Panel parent = *worst;
    const double mid = 0.5 * (parent.lo + parent.hi);
    *worst = make_panel(problem, parent.lo, mid, parent.left);
    panels.push_back(make_panel(problem, mid, parent.hi, parent.right));
    ++result.subdivisions;
  }
  result.evaluations = problem.evaluations;
  return result;
}

QuadResult integrate(const Integrand1D& integrand, std::span<const double> breakpoints,
                     const QuadratureSpec& spec) {
  spec.validate();
  if (!integrand.f) fail(ErrorKind::EmptyInput, "f", "integrand has no evaluation map");
  const auto& f = integrand.f;
  return integrate_ref(f, integrand.a, integrand.b, integrand.mu_a, integrand.mu_b, breakpoints,
                       spec);
}

QuadResult integrate(const Integrand1D& integrand, const QuadratureSpec& spec) {
  return integrate(integrand, std::span<const double>{}, spec);
}

QuadResult integrate_to_infinity(FunctionRef<double(double)> f, double a, double decay,
                                 const QuadratureSpec& spec) {
  if (!(a > 0.0)) fail(ErrorKind::OutOfRange, "a", "lower limit must be positive");
  if (!(decay > 1.0)) {
    fail(ErrorKind::DivergentTail, "decay",
         "integrand must decay faster than 1/s, got exponent " + std::to_string(decay));
  }
  auto mapped = [&](double t) { return f(a / t) * a / (t * t); };
  return integrate_ref(mapped, 0.0, 1.0, 2.0 - decay, 0.0, {}, spec);
}

}  // namespace fraclap
