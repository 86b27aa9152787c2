#pragma once

#include <atomic>
#include <functional>
#include <mutex>
#include <span>

#include "fraclap/function_ref.hpp"

namespace fraclap {

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  int gauss_nodes = 10;
  // Radius of the ball around the evaluation point where principal-value
  // integrals switch to the symmetrized second difference.
  double pv_cutoff_delta = 0.05;

  // Throws OutOfRange unless rel_tol > 0, abs_tol >= 0, gauss_nodes >= 4,
  // max_subdivisions >= 1 and pv_cutoff_delta > 0.
  void validate() const;
};

// f on (a, b) behaving like (t - a)^{-mu_a} and (b - t)^{-mu_b} at the ends.
// Nonzero exponents switch the end panels to Gauss-Jacobi against that
// power, so the integrand is only required to be smooth after it is divided
// out. mu < 1 is required for integrability.
struct Integrand1D {
  std::function<double(double)> f;
  double a = 0.0;
  double b = 1.0;
  double mu_a = 0.0;
  double mu_b = 0.0;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  bool converged = true;
  int subdivisions = 0;
  long evaluations = 0;
};

// Thread-safe sink for quadrature outcomes inside composite operations.
// Non-convergence never aborts a computation; it is counted here instead.
class QuadDiagnostics {
 public:
  void record(const QuadResult& result);
  long failures() const noexcept { return failures_.load(); }
  long calls() const noexcept { return calls_.load(); }
  double worst_error() const;

 private:
  std::atomic<long> failures_{0};
  std::atomic<long> calls_{0};
  mutable std::mutex mutex_;
  double worst_error_ = 0.0;
};

// Globally adaptive bisection: every panel is scored by the gap between its
// single-panel rule and the sum over its two halves, and the worst panel is
// split until the summed gap is within max(abs_tol, rel_tol * |value|) or
// max_subdivisions is reached. On failure the best estimate comes back with
// converged = false.
QuadResult integrate(const Integrand1D& integrand, const QuadratureSpec& spec);

// Same, starting from panels cut at the given interior breakpoints. Points
// outside (a, b) are ignored.
QuadResult integrate(const Integrand1D& integrand, std::span<const double> breakpoints,
                     const QuadratureSpec& spec);

// Allocation-free entry point used by the hot paths of the library.
QuadResult integrate_ref(FunctionRef<double(double)> f, double a, double b, double mu_a,
                         double mu_b, std::span<const double> breakpoints,
                         const QuadratureSpec& spec);

// ∫_a^∞ f(s) ds for f(s) ~ C s^{-decay} with decay > 1, via s = a / t.
QuadResult integrate_to_infinity(FunctionRef<double(double)> f, double a, double decay,
                                 const QuadratureSpec& spec);

}  // namespace fraclap
