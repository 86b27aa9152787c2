#pragma once

#include <optional>
#include <vector>

#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

// R_{γ,n} = Γ((n-γ)/2) / (π^{n/2} 2^γ Γ(γ/2)), 0 < γ < n.
double riesz_constant(double gamma, int n);

// C_{n,α} = 2^α Γ((n+α)/2) / (π^{n/2} |Γ(-α/2)|), the normalisation that makes
// (-Δ)^{α/2} the inverse of the Riesz potential of order α.
double frac_laplacian_constant(int n, double alpha);

// Γ(n/2) sin(πα/2) / π^{n/2+1}, the prefactor of the ball Poisson kernel.
double poisson_constant(int n, double alpha);

// Γ(n/2) / (2^α π^{n/2} Γ(α/2)^2), the prefactor of the ball Green function.
// It equals R_{α,n} / B(α/2, (n-α)/2), so the Green function tends to the
// Riesz kernel as the ball exhausts R^n.
double green_constant(int n, double alpha);

struct KernelConstants {
  double frac = 0.0;
  double poisson = 0.0;
  double green = 0.0;
  double riesz = 0.0;  // R_{α,n}; zero when α >= n
};

KernelConstants kernel_constants(int n, double alpha);

// Spherical mean of |x - y|^{γ-n} over |y| = s at |x| = r. Closed forms for
// n = 1 and n = 3, otherwise a quadrature over the distance |x - y|. Errors: OutOfRange
// unless 0 < γ < n and r, s >= 0; Singular when r = s and γ <= 1, and at
// r = s = 0 for every γ.
double ring_kernel(double r, double s, double gamma, int n, const QuadratureSpec& spec,
                   QuadDiagnostics* diag = nullptr);

struct RieszOptions {
  // Radii at which the potential is evaluated. Defaults to the source's grid.
  std::optional<std::vector<double>> output_grid;
};

// u(r) = R_{γ,n} ω_{n-1} ∫_0^∞ s^{n-1} f(s) Γ(r, s) ds, the Riesz potential of
// the radial source f. The returned tail exponent is min(σ_f - γ, n - γ)
// (n - γ when f has no tail) with the coefficient matched at the last node.
// Errors: OutOfRange unless 0 < γ < n; DivergentTail when σ_f <= γ or the inner
// extension of f is not locally integrable.
RadialFunction riesz_potential(const RadialFunction& f, double gamma, int n,
                               const QuadratureSpec& spec, const RieszOptions& options = {},
                               QuadDiagnostics* diag = nullptr);

// Single-radius evaluation of the same integral.
double riesz_potential_at(const RadialFunction& f, double gamma, int n, double r,
                          const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);

// (-Δ)^{α/2} u at |x| = r: frac_laplacian_constant(n, α) times
// integrate_pv_symmetric.
double frac_laplacian(const RadialFunction& u, double alpha, int n, double r,
                      const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);

struct BallKernelParams {
  double R = 1.0;
  double alpha = 1.0;
  int n = 3;

  // OutOfRange unless R > 0, 0 < alpha < 2 and n >= 1.
  void validate() const;
};

// ∫_0^upper b^{α/2-1} (1 + b)^{-n/2} db; upper may be +infinity when α < n.
double green_inner_integral(double upper, double alpha, int n, const QuadratureSpec& spec);

// Green function of (-Δ)^{α/2} on B_R(0) at |x| = x_radius, |y| = y_radius
// with cos∠(x, y) = cos_angle. Zero when either point is outside the open
// ball; +infinity when x = y inside it.
double green_ball(double x_radius, double y_radius, double cos_angle,
                  const BallKernelParams& params, const QuadratureSpec& spec);

// Poisson kernel of (-Δ)^{α/2} for B_R(0); zero for |y| < R, +infinity on
// |y| = R. Errors: XOutsideBall when |x| >= R.
double poisson_ball(double x_radius, double y_radius, double cos_angle,
                    const BallKernelParams& params);

// u_λ(r) = (λ/r)^σ u(λ²/r). The grid is the reflection λ²/r_i of u's grid, so
// node values are exact and applying the transform twice returns u's nodes.
// u's inner extension becomes the new tail and u's tail the new inner
// extension. Errors: OutOfRange for λ <= 0.
RadialFunction kelvin(const RadialFunction& u, double lambda, double sigma);

}  // namespace fraclap
