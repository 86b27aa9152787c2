#include "fraclap/params.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fraclap/error.hpp"

namespace fraclap {

ValidatedParams::ValidatedParams(const ProblemParams& params) : params_(params) {
  const double n = params.n;
  subcritical_ = order_u() < n && order_v() < n;
  high_order_ = std::max(order_u(), order_v()) >= n;
}

namespace {

void require_fractional_order(double value, int n, const char* field) {
  const double upper = std::min(2.0, static_cast<double>(n));
  if (!std::isfinite(value) || !(value > 0.0) || !(value < upper)) {
    fail(ErrorKind::OutOfRange, field,
         "must lie in (0, min(2, n)) = (0, " + std::to_string(upper) + "), got " +
             std::to_string(value));
  }
}

void require_nonnegative(double value, const char* field) {
  if (!std::isfinite(value) || value < 0.0) {
    fail(ErrorKind::OutOfRange, field, "must be finite and >= 0, got " + std::to_string(value));
  }
}

}  // namespace

ValidatedParams validate(const ProblemParams& params) {
  if (params.n < 1) fail(ErrorKind::OutOfRange, "n", "dimension must be >= 1");
  if (params.k < 0) fail(ErrorKind::OutOfRange, "k", "must be >= 0");
  if (params.l < 0) fail(ErrorKind::OutOfRange, "l", "must be >= 0");
  require_fractional_order(params.alpha, params.n, "alpha");
  require_fractional_order(params.beta, params.n, "beta");
  require_nonnegative(params.a, "a");
  require_nonnegative(params.b, "b");
  require_nonnegative(params.p, "p");
  require_nonnegative(params.q, "q");
  return ValidatedParams(params);
}

}  // namespace fraclap
