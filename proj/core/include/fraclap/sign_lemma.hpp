#pragma once

#include <optional>
#include <string_view>

#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

enum class Sign { negative, zero, positive };

std::string_view to_string(Sign sign);

// I(γ, n, r, R) = ∫_{|y|=R} x·(x - y) / |x - y|^{n-γ+2} dσ_y at |x| = r,
// reduced to the distance d = |x - y|:
//   ω_{n-2} R^{n-2} / r ∫ ((d² + r² - R²)/2) d^{γ-n-1} (1 - c²)^{(n-3)/2} dd.
// Errors: OutOfRange unless n >= 2, γ > 0 and r, R > 0; Singular for r = R.
double sign_integral_surface(double gamma, int n, double r, double R, const QuadratureSpec& spec,
                             QuadDiagnostics* diag = nullptr);

// The same integral at r = 1, R > 1, parametrized by the angle θ between x and
// a chord through x, with sin δ = sin θ / R and chord pieces
// |PC| = R cos δ - cos θ, |PD| = R cos δ + cos θ:
//   ∫_0^{π/2} cos θ sin^{n-2} θ / cos δ · (|PD|^{γ-2} - |PC|^{γ-2}) dθ.
// Equals sign_integral_surface(γ, n, 1, R) / ω_{n-2}. Errors: OutOfRange for
// R <= 1 or n < 2.
double sign_integral_theta(double gamma, int n, double R, const QuadratureSpec& spec);

struct SignLemmaResult {
  double gamma = 0.0;
  int n = 0;
  double r = 0.0;
  double R = 0.0;
  double value_surface = 0.0;
  // ω_{n-2} r^{γ-1} sign_integral_theta(γ, n, R/r); present for R > r.
  std::optional<double> value_theta;
  // ∫ |integrand| of the surface form, the scale for deciding "zero".
  double magnitude = 0.0;
  Sign sign_expected = Sign::zero;
  Sign sign_observed = Sign::zero;
};

// Both evaluators plus the predicted sign: positive for R < r; for R > r
// positive, zero or negative as γ >, =, < 2. The observed sign is zero when
// |value_surface| <= zero_tol * magnitude.
SignLemmaResult sign_lemma(double gamma, int n, double r, double R, const QuadratureSpec& spec,
                           double zero_tol = 1e-10);

// d ū / dr at r for ū = riesz_potential(f, γ, n), from differentiating under
// the integral: R_{γ,n} (γ - n) / r ∫_0^∞ f(s) I(γ, n, r, s) ds.
// f must have no tail. Errors: OutOfRange (r <= 0, γ outside (0, n), f with a
// tail); Singular when γ <= 1 and f(r) != 0.
double riesz_derivative(const RadialFunction& f, double gamma, int n, double r,
                        const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);

}  // namespace fraclap
