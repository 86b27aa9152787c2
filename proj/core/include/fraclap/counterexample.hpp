#pragma once

#include <functional>
#include <vector>

#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

// A nonnegative radial source supported in lo < s < hi. Without a custom
// profile it is amplitude * exp(-1 / ((s - lo)(hi - s))).
struct Bump {
  double lo = 1.0;
  double hi = 2.0;
  double amplitude = 1.0;
  std::function<double(double)> profile;

  double operator()(double s) const;

  // BumpInvalid unless 0 < lo < hi, amplitude > 0 and the profile is finite,
  // nonnegative, zero outside (lo, hi) and not identically zero on samples.
  void validate() const;
};

// The bump sampled on the default grid merged with `dense_points` nodes inside
// its support. No tail; the inner extension is constant.
RadialFunction bump_source(const Bump& bump, std::size_t dense_points = 200);

struct CounterexampleReport {
  RadialFunction f;
  RadialFunction u;  // riesz_potential(f, α)
  double r_lo = 0.0;
  double r_hi = 0.0;
  // min over consecutive grid nodes in (r_lo, r_hi) of u(r_{i+1}) - u(r_i).
  double min_forward_difference = 0.0;
  double monotone_floor = 0.0;  // 1e-10 max u
  bool strictly_increasing = false;
  std::vector<double> sample_radii;
  std::vector<double> frac_laplacian_values;
  // max |(-Δ)^{α/2}u - f| / max f over the samples.
  double residual = 0.0;
  // min (-Δ)^{α/2}u / max f over all samples.
  double min_frac_laplacian = 0.0;
  bool f_nonneg = true;
};

// u = riesz_potential(f, α) is α/2-superharmonic ((-Δ)^{α/2} u = f >= 0) but
// increases in |x| inside the hole of the annular support. The forward
// differences are examined on (0.05 lo, 0.95 lo).
// Errors: BumpInvalid; OutOfRange unless 0 < α < min(2, n).
CounterexampleReport build_counterexample(double alpha, int n, const Bump& bump,
                                          const QuadratureSpec& spec,
                                          QuadDiagnostics* diag = nullptr);

}  // namespace fraclap
