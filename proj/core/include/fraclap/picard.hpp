#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fraclap/params.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

enum class PicardOutcome { collapse_to_zero, blow_up, stationary, max_iters };

std::string_view to_string(PicardOutcome outcome);

struct PicardThresholds {
  double collapse = 1e-8;   // sup norm below collapse * initial
  double blow_up = 1e8;     // sup norm above blow_up * initial
  double stationary = 1e-3; // final residual below this
  double max_fit_residual = 0.2;
};

// The trajectory of
//   u_{m+1} = I_{2k+α}(|y|^a v_m^p),  v_{m+1} = I_{2l+β}(|y|^b u_m^q).
// sup_norms_* and residuals have one entry per completed step plus the initial
// state (residual 0). The residual of a step is
// max(‖u_{m+1} - u_m‖∞/‖u_m‖∞, ‖v_{m+1} - v_m‖∞/‖v_m‖∞) over the grid nodes.
struct PicardTrajectory {
  std::vector<double> sup_norms_u;
  std::vector<double> sup_norms_v;
  std::vector<double> residuals;
  std::vector<RadialFunction> u_iterates;
  std::vector<RadialFunction> v_iterates;
  PicardOutcome outcome = PicardOutcome::max_iters;
  std::string warning;

  std::size_t steps() const { return residuals.empty() ? 0 : residuals.size() - 1; }
};

// After every step the tails are refit over the top decade of the grid; a fit
// residual above max_fit_residual stops the run with outcome max_iters and a
// warning. Errors: NotSubcritical; DivergentConvolution when a source tail
// exponent p σ_v - a (resp. q σ_u - b) does not exceed the Riesz order.
PicardTrajectory picard_iterate(const ValidatedParams& params, const RadialFunction& u0,
                                const RadialFunction& v0, std::size_t steps,
                                const QuadratureSpec& spec, const PicardThresholds& thresholds = {},
                                QuadDiagnostics* diag = nullptr);

}  // namespace fraclap
