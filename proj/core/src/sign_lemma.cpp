#include "fraclap/sign_lemma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/sphere.hpp"

namespace fraclap {

std::string_view to_string(Sign sign) {
  switch (sign) {
    case Sign::negative: return "negative";
    case Sign::zero: return "zero";
    case Sign::positive: return "positive";
  }
  return "zero";
}

namespace {

struct SurfaceParts {
  double value;
  double magnitude;
};

SurfaceParts surface_parts(double gamma, int n, double r, double R, const QuadratureSpec& spec,
                           QuadDiagnostics* diag) {
  if (n < 2) fail(ErrorKind::OutOfRange, "n", "sign integral needs n >= 2");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) fail(ErrorKind::OutOfRange, "gamma", "must be > 0");
  if (!(r > 0.0)) fail(ErrorKind::OutOfRange, "r", "must be > 0");
  if (!(R > 0.0)) fail(ErrorKind::OutOfRange, "R", "must be > 0");
  if (r == R) fail(ErrorKind::Singular, "R", "the integral is singular at r = R");

  const double lo = std::abs(r - R);
  const double hi = r + R;
  const double half_power = 0.5 * (n - 3);
  const double scale = 1.0 / (4.0 * r * r * R * R);
  auto weight = [&](double d) {
    double w = std::pow(d, gamma - n - 1.0);
    if (n != 3) {
      const double one_minus_c2 = (d - lo) * (d + lo) * (hi - d) * (hi + d) * scale;
      w *= std::pow(std::max(0.0, one_minus_c2), half_power);
    }
    return w;
  };
  auto signed_part = [&](double d) { return 0.5 * (d * d + r * r - R * R) * weight(d); };
  auto abs_part = [&](double d) { return std::abs(signed_part(d)); };

  std::vector<double> breaks;
  for (double x = lo; lo + x < hi; x *= 2.0) breaks.push_back(lo + x);
  // The factor d² + r² - R² changes sign at d² = R² - r².
  if (R > r) breaks.push_back(std::sqrt(R * R - r * r));

  const auto value = integrate_ref(signed_part, lo, hi, -half_power, -half_power, breaks, spec);
  const auto magnitude = integrate_ref(abs_part, lo, hi, -half_power, -half_power, breaks, spec);
  if (diag) {
    diag->record(value);
    diag->record(magnitude);
  }
  const double prefactor = sphere_area(n - 1) * std::pow(R, n - 2.0) / r;
  return {prefactor * value.value, prefactor * magnitude.value};
}

}  // namespace

double sign_integral_surface(double gamma, int n, double r, double R, const QuadratureSpec& spec,
                             QuadDiagnostics* diag) {
  return surface_parts(gamma, n, r, R, spec, diag).value;
}

double sign_integral_theta(double gamma, int n, double R, const QuadratureSpec& spec) {
  if (n < 2) fail(ErrorKind::OutOfRange, "n", "sign integral needs n >= 2");
  if (!(R > 1.0) || !std::isfinite(R)) fail(ErrorKind::OutOfRange, "R", "must be > 1");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) fail(ErrorKind::OutOfRange, "gamma", "must be > 0");
  auto integrand = [&](double theta) {
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double cos_delta = std::sqrt(1.0 - s * s / (R * R));
    const double pc = R * cos_delta - c;
    const double pd = R * cos_delta + c;
    return c * std::pow(s, n - 2.0) / cos_delta * (std::pow(pd, gamma - 2.0) - std::pow(pc, gamma - 2.0));
  };
  return integrate_ref(integrand, 0.0, 0.5 * std::numbers::pi, 0.0, 0.0, {}, spec).value;
}

SignLemmaResult sign_lemma(double gamma, int n, double r, double R, const QuadratureSpec& spec,
                           double zero_tol) {
  SignLemmaResult result;
  result.gamma = gamma;
  result.n = n;
  result.r = r;
  result.R = R;
  const auto parts = surface_parts(gamma, n, r, R, spec, nullptr);
  result.value_surface = parts.value;
  result.magnitude = parts.magnitude;
  if (R > r) {
    result.value_theta =
        sphere_area(n - 1) * std::pow(r, gamma - 1.0) * sign_integral_theta(gamma, n, R / r, spec);
  }
  if (R < r || gamma > 2.0) {
    result.sign_expected = Sign::positive;
  } else if (gamma < 2.0) {
    result.sign_expected = Sign::negative;
  } else {
    result.sign_expected = Sign::zero;
  }
  if (std::abs(parts.value) <= zero_tol * parts.magnitude) {
    result.sign_observed = Sign::zero;
  } else {
    result.sign_observed = parts.value > 0.0 ? Sign::positive : Sign::negative;
  }
  return result;
}

double riesz_derivative(const RadialFunction& f, double gamma, int n, double r,
                        const QuadratureSpec& spec, QuadDiagnostics* diag) {
  if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::OutOfRange, "r", "must be > 0");
  if (n < 2) fail(ErrorKind::OutOfRange, "n", "needs n >= 2");
  if (!(gamma > 0.0) || !(gamma < n)) fail(ErrorKind::OutOfRange, "gamma", "must lie in (0, n)");
  if (f.tail() && f.tail()->c != 0.0) {
    fail(ErrorKind::OutOfRange, "tail", "the derivative formula is implemented for tail-free sources");
  }
  if (gamma <= 1.0 && f(r) != 0.0) {
    fail(ErrorKind::Singular, "r", "the derivative integral diverges inside the support for gamma <= 1");
  }

  auto integrand = [&](double s) {
    const double fs = f(s);
    if (fs == 0.0 || s == r) return 0.0;
    return fs * sign_integral_surface(gamma, n, r, s, spec, diag);
  };
  // Near s = r the inner integral behaves like |r - s|^{γ-2}.
  const double mu_r = gamma < 2.0 ? 2.0 - gamma : 0.0;
  const double lo = 0.0;
  const double hi = f.r_max();
  const auto breaks = f.grid();
  double total = 0.0;
  auto add = [&](double a, double b, double mu_a, double mu_b) {
    const auto part = integrate_ref(integrand, a, b, mu_a, mu_b, breaks, spec);
    if (diag) diag->record(part);
    total += part.value;
  };
  if (r < hi) {
    add(lo, r, 0.0, f(r) != 0.0 ? mu_r : 0.0);
    add(r, hi, f(r) != 0.0 ? mu_r : 0.0, 0.0);
  } else {
    add(lo, hi, 0.0, 0.0);
  }
  return riesz_constant(gamma, n) * (gamma - n) / r * total;
}

}  // namespace fraclap
