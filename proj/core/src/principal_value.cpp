#include "fraclap/principal_value.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "fraclap/error.hpp"
#include "fraclap/sphere.hpp"

namespace fraclap {

namespace {

constexpr std::size_t kMaxGridBreaks = 48;

// Grid nodes strictly inside (lo, hi), thinned to at most kMaxGridBreaks.
std::vector<double> grid_breaks(const RadialFunction& u, double lo, double hi) {
  const auto grid = u.grid();
  const auto first = std::upper_bound(grid.begin(), grid.end(), lo);
  const auto last = std::lower_bound(grid.begin(), grid.end(), hi);
  std::vector<double> breaks;
  if (first >= last) return breaks;
  const std::size_t count = static_cast<std::size_t>(last - first);
  const std::size_t stride = (count + kMaxGridBreaks - 1) / kMaxGridBreaks;
  for (auto it = first; it < last; it += static_cast<std::ptrdiff_t>(stride)) breaks.push_back(*it);
  return breaks;
}

void record(QuadDiagnostics* diag, const QuadResult& result) {
  if (diag) diag->record(result);
}

void check_pv_inputs(const RadialFunction& u, double r, double alpha, int n) {
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorKind::OutOfRange, "r", "radius must be >= 0");
  if (!(alpha > 0.0) || !(alpha < 2.0)) fail(ErrorKind::OutOfRange, "alpha", "must lie in (0, 2)");
  if (n < 1) fail(ErrorKind::OutOfRange, "n", "dimension must be >= 1");
  if (!in_l_alpha(u, alpha, n)) {
    fail(ErrorKind::NotInLalpha, "tail",
         "∫|u|/(1+|y|^{n+alpha}) diverges for the declared tail/inner extension");
  }
  const auto grid = u.grid();
  if (r > grid.front() && r < grid.back()) {
    const auto it = std::upper_bound(grid.begin(), grid.end(), r);
    const double spacing = *it - *(it - 1);
    if (spacing > 0.25 * r) {
      fail(ErrorKind::ResolutionTooCoarse, "grid",
           "node spacing " + std::to_string(spacing) + " near r = " + std::to_string(r) +
               " is too coarse for a second-difference estimate");
    }
  }
}

// M_x(rho) - u(r), with the difference taken under the integral so that it
// keeps its relative accuracy as rho -> 0.
double mean_deviation(const RadialFunction& u, double r, double ur, double rho, int n,
                      const QuadratureSpec& spec, QuadDiagnostics* diag) {
  if (rho == 0.0) return 0.0;
  if (r == 0.0) return u(rho) - ur;
  if (n == 1) return 0.5 * ((u(r + rho) - ur) + (u(std::abs(r - rho)) - ur));

  const double lo = std::abs(r - rho);
  const double hi = r + rho;
  const double half_power = 0.5 * (n - 3);
  const double norm = sphere_area(n - 1) / (sphere_area(n) * r * rho);
  const double scale = 1.0 / (4.0 * r * r * rho * rho);
  auto integrand = [&](double d) {
    double value = (u(d) - ur) * d;
    if (n != 3) {
      const double one_minus_c2 = (d - lo) * (d + lo) * (hi - d) * (hi + d) * scale;
      value *= std::pow(std::max(0.0, one_minus_c2), half_power);
    }
    return value;
  };
  const double mu_lo = lo > 0.0 ? -half_power : -(n - 2.0);
  const auto breaks = grid_breaks(u, lo, hi);
  const auto result = integrate_ref(integrand, lo, hi, mu_lo, -half_power, breaks, spec);
  record(diag, result);
  return norm * result.value;
}

// Length scale over which u is a single cubic piece around r.
double local_spacing(const RadialFunction& u, double r) {
  const auto grid = u.grid();
  if (r < grid.front()) return grid.front() - r;
  if (r >= grid.back()) return r;
  const auto it = std::upper_bound(grid.begin(), grid.end(), r);
  return *it - *(it - 1);
}

// ∫_{from}^∞ (u(r) - M(rho)) rho^{-1-alpha} drho.
double far_field(const RadialFunction& u, double r, double alpha, int n, double from,
                 const QuadratureSpec& spec, QuadDiagnostics* diag) {
  const double ur = u(r);
  const double reach = 2.0 * (r + u.r_max());
  auto mean = [&](double rho) { return spherical_mean(u, r, rho, n, spec, diag); };
  auto integrand = [&](double rho) {
    return -mean_deviation(u, r, ur, rho, n, spec, diag) * std::pow(rho, -1.0 - alpha);
  };

  double total = 0.0;
  if (from < reach) {
    std::vector<double> breaks;
    for (double x = 2.0 * from; x < reach; x *= 2.0) breaks.push_back(x);
    for (double x : {r, std::abs(r - u.r_max()), r + u.r_max(), std::abs(r - u.r_min()),
                     r + u.r_min()}) {
      breaks.push_back(x);
    }
    const auto part = integrate_ref(integrand, from, reach, 0.0, 0.0, breaks, spec);
    record(diag, part);
    total += part.value;
  }

  const double start = std::max(from, reach);
  total += ur * std::pow(start, -alpha) / alpha;
  if (u.tail() && u.tail()->c != 0.0) {
    // rho = start / t; M(start/t) behaves like t^{sigma} near t = 0.
    const double sigma = u.tail()->sigma;
    auto mapped = [&](double t) { return mean(start / t) * std::pow(t, alpha - 1.0); };
    const auto part = integrate_ref(mapped, 0.0, 1.0, 1.0 - alpha - sigma, 0.0, {}, spec);
    record(diag, part);
    total -= std::pow(start, -alpha) * part.value;
  }
  return total;
}

}  // namespace

double spherical_mean(const RadialFunction& u, double r, double rho, int n,
                      const QuadratureSpec& spec, QuadDiagnostics* diag) {
  if (rho == 0.0) return u(r);
  if (r == 0.0) return u(rho);
  if (n == 1) return 0.5 * (u(r + rho) + u(std::abs(r - rho)));

  const double lo = std::abs(r - rho);
  const double hi = r + rho;
  const double half_power = 0.5 * (n - 3);
  const double norm = sphere_area(n - 1) / (sphere_area(n) * r * rho);
  const double scale = 1.0 / (4.0 * r * r * rho * rho);
  auto integrand = [&](double d) {
    double value = u(d) * d;
    if (n != 3) {
      const double one_minus_c2 = (d - lo) * (d + lo) * (hi - d) * (hi + d) * scale;
      value *= std::pow(std::max(0.0, one_minus_c2), half_power);
    }
    return value;
  };
  const double mu_hi = -half_power;
  const double mu_lo = lo > 0.0 ? -half_power : -(n - 2.0);
  const auto breaks = grid_breaks(u, lo, hi);
  const auto result = integrate_ref(integrand, lo, hi, mu_lo, mu_hi, breaks, spec);
  record(diag, result);
  return norm * result.value;
}

double integrate_pv_symmetric(const RadialFunction& u, double r, double alpha, int n,
                              const QuadratureSpec& spec, QuadDiagnostics* diag) {
  spec.validate();
  check_pv_inputs(u, r, alpha, n);
  const double delta = spec.pv_cutoff_delta;
  const double ur = u(r);

  // Below rho_c the second difference (M - u(r)) / rho^2 of the piecewise
  // cubic is a low-order polynomial in rho while its rounding noise grows like
  // rho^{-2}, so that piece is integrated with the value taken at rho_c.
  const double rho_c = 1e-3 * std::min(delta, local_spacing(u, r));
  const double c = mean_deviation(u, r, ur, rho_c, n, spec, diag) / (rho_c * rho_c);
  const double core = -c * std::pow(rho_c, 2.0 - alpha) / (2.0 - alpha);

  auto near = [&](double rho) {
    return -mean_deviation(u, r, ur, rho, n, spec, diag) * std::pow(rho, -1.0 - alpha);
  };
  std::vector<double> breaks;
  for (double x = delta / 2.0; x > 2.0 * rho_c; x /= 2.0) breaks.push_back(x);
  const auto inner = integrate_ref(near, rho_c, delta, 0.0, 0.0, breaks, spec);
  record(diag, inner);
  return sphere_area(n) * (core + inner.value + far_field(u, r, alpha, n, delta, spec, diag));
}

double pv_truncated(const RadialFunction& u, double r, double alpha, int n, double delta,
                    const QuadratureSpec& spec, QuadDiagnostics* diag) {
  spec.validate();
  check_pv_inputs(u, r, alpha, n);
  if (!(delta > 0.0)) fail(ErrorKind::OutOfRange, "delta", "cutoff must be > 0");
  return sphere_area(n) * far_field(u, r, alpha, n, delta, spec, diag);
}

}  // namespace fraclap
