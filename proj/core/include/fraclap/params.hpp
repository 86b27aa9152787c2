#pragma once

namespace fraclap {

// Parameters of the weighted system
//   (-Δ)^{k+α/2} u = |x|^a v^p,   (-Δ)^{l+β/2} v = |x|^b u^q   in R^n.
struct ProblemParams {
  int n = 3;
  int k = 0;
  int l = 0;
  double alpha = 1.0;
  double beta = 1.0;
  double a = 0.0;
  double b = 0.0;
  double p = 1.0;
  double q = 1.0;
};

// A ProblemParams that passed validate(). Only validate() can build one, so
// holding a ValidatedParams is proof that every range constraint holds.
class ValidatedParams {
 public:
  const ProblemParams& raw() const noexcept { return params_; }
  int n() const noexcept { return params_.n; }

  double order_u() const noexcept { return 2.0 * params_.k + params_.alpha; }  // 2k+α
  double order_v() const noexcept { return 2.0 * params_.l + params_.beta; }   // 2l+β

  // 2k+α < n and 2l+β < n.
  bool subcritical_order() const noexcept { return subcritical_; }
  // max{2k+α, 2l+β} >= n.
  bool high_order() const noexcept { return high_order_; }

 private:
  friend ValidatedParams validate(const ProblemParams& params);
  explicit ValidatedParams(const ProblemParams& params);

  ProblemParams params_;
  bool subcritical_ = false;
  bool high_order_ = false;
};

// Throws Error(OutOfRange, <field>) naming the first violated constraint:
// n >= 1, k,l >= 0, 0 < α,β < min(2,n), a,b,p,q >= 0, everything finite.
ValidatedParams validate(const ProblemParams& params);

}  // namespace fraclap
