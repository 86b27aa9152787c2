#pragma once

#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

// Mean of u over the sphere of radius rho centred at a point with |x| = r,
// where u is extended radially to R^n. Reduced to the distance d = |x + rho w|
// in [|r - rho|, r + rho]:
//   M = ω_{n-2} / (ω_{n-1} r rho) ∫ u(d) d (1 - c(d)^2)^{(n-3)/2} dd.
double spherical_mean(const RadialFunction& u, double r, double rho, int n,
                      const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);

// P.V. ∫_{R^n} (u(x) - u(y)) / |x - y|^{n+alpha} dy at |x| = r, without the
// fractional-Laplacian normalisation. Written through spherical means about x,
//   ω_{n-1} ∫_0^∞ (u(x) - M_x(rho)) rho^{-1-alpha} drho,
// whose integrand is O(rho^{1-alpha}) at zero (the symmetrized second
// difference), so the ball of radius spec.pv_cutoff_delta is integrated with a
// Jacobi weight and the outside directly.
//
// Errors: NotInLalpha when the tail or inner extension break
// ∫|u|/(1+|y|^{n+alpha}) < ∞; ResolutionTooCoarse when the grid spacing at r
// exceeds a quarter of r; OutOfRange for r < 0 or alpha outside (0, 2).
double integrate_pv_symmetric(const RadialFunction& u, double r, double alpha, int n,
                              const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);

// The truncated integral over |y - x| > delta (no near-field term). Tends to
// integrate_pv_symmetric as delta -> 0 with error O(delta^{2-alpha}).
double pv_truncated(const RadialFunction& u, double r, double alpha, int n, double delta,
                    const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);

}  // namespace fraclap
