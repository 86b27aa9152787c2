#include "fraclap/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "fraclap/error.hpp"
#include "fraclap/principal_value.hpp"
#include "fraclap/sphere.hpp"

namespace fraclap {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int n) {
  if (n < 1) fail(ErrorKind::OutOfRange, "n", "dimension must be >= 1");
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0)) fail(ErrorKind::OutOfRange, "alpha", "must lie in (0, 2)");
}

// Closed forms of the n = 3 ring kernel, where the distance integrand is d^{γ-2}.
double ring_kernel_3d(double r, double s, double gamma) {
  const double lo = std::abs(r - s);
  const double hi = r + s;
  if (gamma == 1.0) return std::log(hi / lo) / (2.0 * r * s);
  return (std::pow(hi, gamma - 1.0) - std::pow(lo, gamma - 1.0)) / (2.0 * r * s * (gamma - 1.0));
}

}  // namespace

double riesz_constant(double gamma, int n) {
  check_dimension(n);
  if (!(gamma > 0.0) || !(gamma < n)) fail(ErrorKind::OutOfRange, "gamma", "must lie in (0, n)");
  const double log_value = std::lgamma(0.5 * (n - gamma)) - 0.5 * n * std::log(kPi) -
                           gamma * std::log(2.0) - std::lgamma(0.5 * gamma);
  return std::exp(log_value);
}

double frac_laplacian_constant(int n, double alpha) {
  check_dimension(n);
  check_alpha(alpha);
  // |Γ(-α/2)| = Γ(1 - α/2) / (α/2).
  const double abs_gamma = std::tgamma(1.0 - 0.5 * alpha) / (0.5 * alpha);
  return std::pow(2.0, alpha) * std::tgamma(0.5 * (n + alpha)) /
         (std::pow(kPi, 0.5 * n) * abs_gamma);
}

double poisson_constant(int n, double alpha) {
  check_dimension(n);
  check_alpha(alpha);
  return std::tgamma(0.5 * n) * std::sin(0.5 * kPi * alpha) / std::pow(kPi, 0.5 * n + 1.0);
}

double green_constant(int n, double alpha) {
  check_dimension(n);
  check_alpha(alpha);
  const double g = std::tgamma(0.5 * alpha);
  return std::tgamma(0.5 * n) / (std::pow(2.0, alpha) * std::pow(kPi, 0.5 * n) * g * g);
}

KernelConstants kernel_constants(int n, double alpha) {
  KernelConstants k;
  k.frac = frac_laplacian_constant(n, alpha);
  k.poisson = poisson_constant(n, alpha);
  k.green = green_constant(n, alpha);
  k.riesz = alpha < n ? riesz_constant(alpha, n) : 0.0;
  return k;
}

double ring_kernel(double r, double s, double gamma, int n, const QuadratureSpec& spec,
                   QuadDiagnostics* diag) {
  check_dimension(n);
  if (!(gamma > 0.0) || !(gamma < n)) fail(ErrorKind::OutOfRange, "gamma", "must lie in (0, n)");
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorKind::OutOfRange, "r", "must be finite and >= 0");
  if (!(s >= 0.0) || !std::isfinite(s)) fail(ErrorKind::OutOfRange, "s", "must be finite and >= 0");
  if (r == s && (gamma <= 1.0 || r == 0.0)) {
    fail(ErrorKind::Singular, "s", "ring kernel diverges at r = s for gamma <= 1 and at r = s = 0");
  }
  if (r == 0.0 || s == 0.0) return std::pow(std::max(r, s), gamma - n);
  if (n == 1) return 0.5 * (std::pow(std::abs(r - s), gamma - 1.0) + std::pow(r + s, gamma - 1.0));
  if (n == 3) return ring_kernel_3d(r, s, gamma);

  const double lo = std::abs(r - s);
  const double hi = r + s;
  const double half_power = 0.5 * (n - 3);
  const double scale = 1.0 / (4.0 * r * r * s * s);
  auto integrand = [&](double d) {
    const double one_minus_c2 = (d - lo) * (d + lo) * (hi - d) * (hi + d) * scale;
    return std::pow(d, gamma - n + 1.0) * std::pow(std::max(0.0, one_minus_c2), half_power);
  };
  // Graded panels towards lo, where d^{γ-n+1} varies on the scale lo.
  std::vector<double> breaks;
  if (lo > 0.0) {
    for (double x = lo; lo + x < hi; x *= 2.0) breaks.push_back(lo + x);
  }
  const double mu_lo = lo > 0.0 ? -half_power : 2.0 - gamma;
  const auto result = integrate_ref(integrand, lo, hi, mu_lo, -half_power, breaks, spec);
  if (diag) diag->record(result);
  return sphere_area(n - 1) / (sphere_area(n) * r * s) * result.value;
}

double frac_laplacian(const RadialFunction& u, double alpha, int n, double r,
                      const QuadratureSpec& spec, QuadDiagnostics* diag) {
  return frac_laplacian_constant(n, alpha) * integrate_pv_symmetric(u, r, alpha, n, spec, diag);
}

void BallKernelParams::validate() const {
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::OutOfRange, "R", "ball radius must be > 0");
  check_alpha(alpha);
  check_dimension(n);
}

double green_inner_integral(double upper, double alpha, int n, const QuadratureSpec& spec) {
  check_alpha(alpha);
  check_dimension(n);
  if (!(upper >= 0.0)) fail(ErrorKind::OutOfRange, "upper", "must be >= 0");
  if (upper == 0.0) return 0.0;
  const double a = 0.5 * alpha;
  const double c = 0.5 * (n - alpha);
  if (std::isinf(upper) && !(c > 0.0)) {
    fail(ErrorKind::OutOfRange, "upper", "integral to infinity diverges for alpha >= n");
  }
  // With w = b/(1+b) the integrand becomes w^{a-1} (1-w)^{c-1} on (0, upper/(1+upper)).
  if (upper <= 1.0 || !(c > 0.0)) {
    const double w_max = upper / (1.0 + upper);
    auto f = [&](double w) { return std::pow(w, a - 1.0) * std::pow(1.0 - w, c - 1.0); };
    return integrate_ref(f, 0.0, w_max, 1.0 - a, 0.0, {}, spec).value;
  }
  // Large upper limit: complete Beta minus the part beyond upper, written in
  // v = 1/(1+b) on (0, 1/(1+upper)).
  const double complete = std::exp(std::lgamma(a) + std::lgamma(c) - std::lgamma(a + c));
  if (std::isinf(upper)) return complete;
  const double v_max = 1.0 / (1.0 + upper);
  auto f = [&](double v) { return std::pow(v, c - 1.0) * std::pow(1.0 - v, a - 1.0); };
  return complete - integrate_ref(f, 0.0, v_max, 1.0 - c, 0.0, {}, spec).value;
}

double green_ball(double x_radius, double y_radius, double cos_angle,
                  const BallKernelParams& params, const QuadratureSpec& spec) {
  params.validate();
  if (!(x_radius >= 0.0)) fail(ErrorKind::OutOfRange, "x_radius", "must be >= 0");
  if (!(y_radius >= 0.0)) fail(ErrorKind::OutOfRange, "y_radius", "must be >= 0");
  if (!(std::abs(cos_angle) <= 1.0)) fail(ErrorKind::OutOfRange, "cos_angle", "must lie in [-1, 1]");
  const double R = params.R;
  if (x_radius >= R || y_radius >= R) return 0.0;
  const double d2 = std::max(0.0, x_radius * x_radius + y_radius * y_radius -
                                      2.0 * x_radius * y_radius * cos_angle);
  if (d2 == 0.0) return std::numeric_limits<double>::infinity();
  const double s_R = d2 / (R * R);
  const double t_R = (1.0 - x_radius * x_radius / (R * R)) * (1.0 - y_radius * y_radius / (R * R));
  const double inner = green_inner_integral(t_R / s_R, params.alpha, params.n, spec);
  return green_constant(params.n, params.alpha) * std::pow(d2, 0.5 * (params.alpha - params.n)) *
         inner;
}

double poisson_ball(double x_radius, double y_radius, double cos_angle,
                    const BallKernelParams& params) {
  params.validate();
  if (!(x_radius >= 0.0)) fail(ErrorKind::OutOfRange, "x_radius", "must be >= 0");
  if (!(std::abs(cos_angle) <= 1.0)) fail(ErrorKind::OutOfRange, "cos_angle", "must lie in [-1, 1]");
  const double R = params.R;
  if (x_radius >= R) fail(ErrorKind::XOutsideBall, "x_radius", "x must lie inside the ball");
  if (!(y_radius >= 0.0)) fail(ErrorKind::OutOfRange, "y_radius", "must be >= 0");
  if (y_radius < R) return 0.0;
  if (y_radius == R) return std::numeric_limits<double>::infinity();
  const double d2 = x_radius * x_radius + y_radius * y_radius -
                    2.0 * x_radius * y_radius * cos_angle;
  const double ratio = (R * R - x_radius * x_radius) / (y_radius * y_radius - R * R);
  return poisson_constant(params.n, params.alpha) * std::pow(ratio, 0.5 * params.alpha) *
         std::pow(d2, -0.5 * params.n);
}

}  // namespace fraclap
