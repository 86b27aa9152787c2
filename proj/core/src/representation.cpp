#include "fraclap/representation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraclap/averages.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/sphere.hpp"

namespace fraclap {

double RepresentationTerms::relative_gap() const {
  const double gap = std::abs(lhs - (rhs_green + rhs_poisson));
  if (lhs == 0.0) return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return gap / std::abs(lhs);
}

namespace {

void check_inputs(double alpha, int n, double R) {
  if (n < 1) fail(ErrorKind::OutOfRange, "n", "dimension must be >= 1");
  if (!(alpha > 0.0) || !(alpha < std::min(2.0, static_cast<double>(n)))) {
    fail(ErrorKind::OutOfRange, "alpha", "must lie in (0, min(2, n))");
  }
  if (!(R > 0.0) || !std::isfinite(R)) fail(ErrorKind::OutOfRange, "R", "must be > 0");
}

double green_term(const RadialFunction& f, double alpha, int n, double R, const QuadratureSpec& spec,
                  QuadDiagnostics* diag) {
  auto integrand = [&](double s) {
    const double fs = f(s);
    if (fs == 0.0) return 0.0;
    const double upper = (R / s) * (R / s) - 1.0;
    return std::pow(s, alpha - 1.0) * green_inner_integral(upper, alpha, n, spec) * fs;
  };
  // s^{α-1} at the origin; the inner integral vanishes like (R - s)^{α/2} at R.
  const double mu_a = f(0.0) != 0.0 ? 1.0 - alpha : 0.0;
  const auto part = integrate_ref(integrand, 0.0, R, mu_a, -0.5 * alpha, f.grid(), spec);
  if (diag) diag->record(part);
  return sphere_area(n) * green_constant(n, alpha) * part.value;
}

}  // namespace

RepresentationTerms representation_identity(const RadialFunction& f, const RadialFunction& u,
                                            double alpha, int n, double R,
                                            const QuadratureSpec& spec, QuadDiagnostics* diag) {
  check_inputs(alpha, n, R);
  spec.validate();
  RepresentationTerms terms;
  terms.lhs = riesz_potential_at(f, alpha, n, 0.0, spec, diag);
  terms.rhs_green = green_term(f, alpha, n, R, spec, diag);
  terms.rhs_poisson =
      sphere_area(n) * poisson_constant(n, alpha) * nonlocal_average(u, alpha, R, spec, diag);
  return terms;
}

RepresentationTerms representation_identity(const RadialFunction& f, double alpha, int n, double R,
                                            const QuadratureSpec& spec, QuadDiagnostics* diag) {
  check_inputs(alpha, n, R);
  const auto u = riesz_potential(f, alpha, n, spec, {}, diag);
  return representation_identity(f, u, alpha, n, R, spec, diag);
}

}  // namespace fraclap
