#include "fraclap/sphere.hpp"

#include <cmath>
#include <numbers>

#include "fraclap/error.hpp"

namespace fraclap {

double sphere_area(int n) {
  if (n < 1) fail(ErrorKind::OutOfRange, "n", "dimension must be >= 1");
  const double half = 0.5 * n;
  return 2.0 * std::pow(std::numbers::pi, half) / std::tgamma(half);
}

}  // namespace fraclap
