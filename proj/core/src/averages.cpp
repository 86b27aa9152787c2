#include "fraclap/averages.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fraclap/error.hpp"
#include "fraclap/parallel.hpp"

namespace fraclap {

double nonlocal_average(const RadialFunction& u, double alpha, double R,
                        const QuadratureSpec& spec, QuadDiagnostics* diag) {
  spec.validate();
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::OutOfRange, "R", "must be > 0");
  if (!(alpha > 0.0) || !(alpha < 2.0)) fail(ErrorKind::OutOfRange, "alpha", "must lie in (0, 2)");

  const bool has_tail = u.tail() && u.tail()->c != 0.0;
  double mu_a = 1.0 - alpha;
  if (has_tail) {
    const double sigma = u.tail()->sigma;
    if (!(sigma > -alpha)) {
      fail(ErrorKind::DivergentTail, "tail",
           "tail exponent " + std::to_string(sigma) + " must exceed -alpha");
    }
    mu_a = 1.0 - alpha - sigma;
  }

  std::vector<double> breaks;
  breaks.reserve(u.size());
  for (double g : u.grid()) {
    if (g > R) breaks.push_back(R / g);
  }
  const double mu_b = 0.5 * alpha;
  auto f = [&](double t) {
    const double value = u(R / t);
    if (value == 0.0) return 0.0;
    return value * std::pow(t, alpha - 1.0) * std::pow((1.0 - t) * (1.0 + t), -mu_b);
  };
  const auto result = integrate_ref(f, 0.0, 1.0, mu_a, mu_b, breaks, spec);
  if (diag) diag->record(result);
  return result.value;
}

DecayExponents decay_exponents(const ValidatedParams& params) {
  const ProblemParams& p = params.raw();
  const double pq = p.p * p.q;
  if (!(pq > 1.0)) {
    fail(ErrorKind::PQNotSupercritical, "pq",
         "decay exponents need pq > 1, got pq = " + std::to_string(pq));
  }
  const double su = params.order_u() + p.a;
  const double sv = params.order_v() + p.b;
  return {(su + p.p * sv) / (pq - 1.0), (sv + p.q * su) / (pq - 1.0)};
}

DecayReport fit_decay(const RadialFunction& u, double lo, double hi,
                      std::optional<double> theoretical) {
  const double slack = 1e-12;
  if (!(lo > 0.0) || !(hi > lo)) fail(ErrorKind::OutOfRange, "window", "need 0 < lo < hi");
  if (lo < u.r_min() * (1.0 - slack) || hi > u.r_max() * (1.0 + slack)) {
    fail(ErrorKind::OutOfRange, "window", "window must lie inside the grid");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  const auto grid = u.grid();
  const auto values = u.values();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < lo * (1.0 - slack) || grid[i] > hi * (1.0 + slack)) continue;
    if (!(values[i] > 0.0)) {
      fail(ErrorKind::NonPositiveValues, "values",
           "u(" + std::to_string(grid[i]) + ") is not positive");
    }
    xs.push_back(std::log(grid[i]));
    ys.push_back(std::log(values[i]));
  }
  if (xs.size() < 8) {
    fail(ErrorKind::OutOfRange, "window",
         "window holds " + std::to_string(xs.size()) + " nodes, need at least 8");
  }

  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double residual = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    residual = std::max(residual, std::abs(ys[i] - (my + slope * (xs[i] - mx))));
  }

  DecayReport report;
  report.fitted_exponent = slope == 0.0 ? 0.0 : -slope;
  report.theoretical_exponent = theoretical.value_or(std::numeric_limits<double>::quiet_NaN());
  report.window_lo = lo;
  report.window_hi = hi;
  report.residual = residual;
  report.points = xs.size();
  return report;
}

namespace {

// Log-log slope over the upper half of the series; zero entries are bounded.
bool grows(const std::vector<double>& radii, const std::vector<double>& products) {
  const std::size_t start = radii.size() / 2;
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = start; i < radii.size(); ++i) {
    if (!(products[i] > 0.0)) continue;
    xs.push_back(std::log(radii[i]));
    ys.push_back(std::log(products[i]));
  }
  if (xs.size() < 2) return false;
  const double count = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  return sxx > 0.0 && sxy / sxx > 0.05;
}

double max_of(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (double x : a) m = std::max(m, x);
  for (double x : b) m = std::max(m, x);
  return m;
}

}  // namespace

LocalDecayReport local_decay_check(const RadialFunction& u, const RadialFunction& v,
                                   const ValidatedParams& params,
                                   const std::vector<double>& radii, const QuadratureSpec& spec,
                                   QuadDiagnostics* diag) {
  if (radii.empty()) fail(ErrorKind::OutOfRange, "R_list", "need at least one radius");
  for (double R : radii) {
    if (!(R > 0.0)) fail(ErrorKind::OutOfRange, "R_list", "radii must be > 0");
  }
  LocalDecayReport report;
  report.exponents = decay_exponents(params);
  report.radii = radii;
  report.exploratory = params.raw().k == 0 && params.raw().l == 0;
  const std::size_t size = radii.size();
  report.u_products.assign(size, 0.0);
  report.v_products.assign(size, 0.0);
  report.u_average_products.assign(size, 0.0);
  report.v_average_products.assign(size, 0.0);
  const double su = report.exponents.sigma_u;
  const double sv = report.exponents.sigma_v;
  const double alpha = params.raw().alpha;
  const double beta = params.raw().beta;

  parallel_for(size, [&](std::size_t i) {
    const double R = radii[i];
    report.u_products[i] = u(R) * std::pow(R, su);
    report.v_products[i] = v(R) * std::pow(R, sv);
    report.u_average_products[i] = nonlocal_average(u, alpha, R, spec, diag) * std::pow(R, su);
    report.v_average_products[i] = nonlocal_average(v, beta, R, spec, diag) * std::pow(R, sv);
  });

  report.max_u = max_of(report.u_products, report.u_average_products);
  report.max_v = max_of(report.v_products, report.v_average_products);
  report.bounded = !grows(radii, report.u_products) && !grows(radii, report.v_products) &&
                   !grows(radii, report.u_average_products) &&
                   !grows(radii, report.v_average_products);
  return report;
}

}  // namespace fraclap
