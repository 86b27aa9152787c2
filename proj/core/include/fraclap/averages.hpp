#pragma once

#include <optional>
#include <vector>

#include "fraclap/params.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

// ∫_R^∞ R^α / (r (r² - R²)^{α/2}) u(r) dr, evaluated as
// ∫_0^1 t^{α-1} (1 - t²)^{-α/2} u(R/t) dt with Jacobi endpoints at both ends.
// Converges iff the tail exponent σ of u satisfies σ > -α.
// Errors: OutOfRange for R <= 0 or α outside (0, 2); DivergentTail otherwise.
double nonlocal_average(const RadialFunction& u, double alpha, double R,
                        const QuadratureSpec& spec, QuadDiagnostics* diag = nullptr);

struct DecayExponents {
  double sigma_u = 0.0;
  double sigma_v = 0.0;
};

// σ_u = (2k+α+a+p(2l+β+b))/(pq-1), σ_v = (2l+β+b+q(2k+α+a))/(pq-1).
// Errors: PQNotSupercritical when pq <= 1.
DecayExponents decay_exponents(const ValidatedParams& params);

struct DecayReport {
  double fitted_exponent = 0.0;
  double theoretical_exponent = 0.0;  // NaN when no reference value was given
  double window_lo = 0.0;
  double window_hi = 0.0;
  double residual = 0.0;  // max |log u - fitted line| over the window
  std::size_t points = 0;
};

// Least-squares fit of log u = log C - σ log r over the grid nodes in
// [lo, hi]; fitted_exponent is σ. Errors: OutOfRange when the window leaves
// the grid or holds fewer than 8 nodes; NonPositiveValues.
DecayReport fit_decay(const RadialFunction& u, double lo, double hi,
                      std::optional<double> theoretical = std::nullopt);

struct LocalDecayReport {
  DecayExponents exponents;
  std::vector<double> radii;
  std::vector<double> u_products;          // ū(R) R^{σ_u}
  std::vector<double> v_products;          // v̄(R) R^{σ_v}
  std::vector<double> u_average_products;  // A_α[u](R) R^{σ_u}
  std::vector<double> v_average_products;  // A_β[v](R) R^{σ_v}
  double max_u = 0.0;  // max over both u series
  double max_v = 0.0;
  bool bounded = true;
  // Set for k = l = 0, where the local form of the bound is not established.
  bool exploratory = false;
};

// Compensated products along R_list. A series counts as unbounded when its
// log-log slope over the upper half of R_list exceeds 0.05.
// Errors: PQNotSupercritical; OutOfRange for an empty or non-positive R_list.
LocalDecayReport local_decay_check(const RadialFunction& u, const RadialFunction& v,
                                   const ValidatedParams& params,
                                   const std::vector<double>& radii, const QuadratureSpec& spec,
                                   QuadDiagnostics* diag = nullptr);

}  // namespace fraclap
