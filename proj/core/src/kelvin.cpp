#include <cmath>
#include <optional>
#include <vector>

#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"

namespace fraclap {

RadialFunction kelvin(const RadialFunction& u, double lambda, double sigma) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorKind::OutOfRange, "lambda", "must be > 0");
  if (!std::isfinite(sigma)) fail(ErrorKind::OutOfRange, "sigma", "must be finite");

  const auto grid = u.grid();
  const auto values = u.values();
  const std::size_t size = grid.size();
  const double lambda2 = lambda * lambda;
  std::vector<double> new_grid(size);
  std::vector<double> new_values(size);
  for (std::size_t j = 0; j < size; ++j) {
    const std::size_t i = size - 1 - j;
    new_grid[j] = lambda2 / grid[i];
    // (λ/ρ)^σ with ρ = λ²/r_i is (r_i/λ)^σ.
    new_values[j] = std::pow(grid[i] / lambda, sigma) * values[i];
  }

  // Below r_min the old inner extension maps to a power tail.
  std::optional<PowerTail> tail;
  const double g0 = grid.front();
  const double u0 = values.front();
  switch (u.inner().kind) {
    case InnerKind::constant:
      tail = PowerTail{sigma, std::pow(lambda, sigma) * u0};
      break;
    case InnerKind::power: {
      const double e = u.inner().exponent;
      tail = PowerTail{sigma + e, u0 * std::pow(lambda, sigma + 2.0 * e) * std::pow(g0, -e)};
      break;
    }
    case InnerKind::zero:
      break;
  }

  // Beyond r_max the old tail c ρ^{-s} maps to r^{s-σ} near the origin.
  InnerExtension inner = InnerExtension::zero();
  if (u.tail() && u.tail()->c != 0.0) inner = InnerExtension::power(u.tail()->sigma - sigma);

  return RadialFunction(std::move(new_grid), std::move(new_values), tail, inner);
}

}  // namespace fraclap
