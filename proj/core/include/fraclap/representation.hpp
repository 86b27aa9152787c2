#pragma once

#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

// The ball representation of u = riesz_potential(f, α) at the centre:
//   u(0) = ∫_{B_R} G_R(0, y) f(y) dy + ∫_{|y|>R} P_R(0, y) u(y) dy,
// where the first term is ω_{n-1} C_G ∫_0^R s^{α-1} B(R²/s² - 1) f(s) ds with
// B(X) = ∫_0^X b^{α/2-1}(1+b)^{-n/2} db, and the second is
// ω_{n-1} C' ∫_R^∞ R^α / (r (r² - R²)^{α/2}) u(r) dr.
struct RepresentationTerms {
  double lhs = 0.0;
  double rhs_green = 0.0;
  double rhs_poisson = 0.0;

  // |lhs - (rhs_green + rhs_poisson)| / |lhs|; zero when all three vanish.
  double relative_gap() const;
};

// Errors: OutOfRange unless R > 0 and 0 < α < min(2, n).
RepresentationTerms representation_identity(const RadialFunction& f, double alpha, int n, double R,
                                            const QuadratureSpec& spec,
                                            QuadDiagnostics* diag = nullptr);

// Same with the potential u supplied, so sweeps over R reuse it.
RepresentationTerms representation_identity(const RadialFunction& f, const RadialFunction& u,
                                            double alpha, int n, double R,
                                            const QuadratureSpec& spec,
                                            QuadDiagnostics* diag = nullptr);

}  // namespace fraclap
