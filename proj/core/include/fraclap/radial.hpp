#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace fraclap {

// f(r) = c * r^{-sigma} for r beyond the last grid node.
struct PowerTail {
  double sigma = 0.0;
  double c = 0.0;
};

// How a radial function continues below its first grid node r_min:
//   constant: f(r) = f(r_min)
//   power:    f(r) = f(r_min) * (r / r_min)^exponent
//   zero:     f(r) = 0
enum class InnerKind { constant, power, zero };

struct InnerExtension {
  InnerKind kind = InnerKind::constant;
  double exponent = 0.0;

  static InnerExtension constant() { return {InnerKind::constant, 0.0}; }
  static InnerExtension power(double e) { return {InnerKind::power, e}; }
  static InnerExtension zero() { return {InnerKind::zero, 0.0}; }
};

// A radial scalar field sampled on a strictly increasing grid of positive radii.
//
// Between nodes the field is a monotone cubic Hermite interpolant in
// (log r, log|value|) on runs of at least five nonzero values of one sign, so
// power laws are reproduced exactly, and in (log r, value) elsewhere. Node
// slopes come from a five-point stencil and are then limited so that every
// interval is monotone (slopes vanish at data extrema, |slope| <= 3 min(adjacent
// secants) elsewhere). Nodes are reproduced exactly.
// Beyond the last node the explicit tail applies (zero when absent); below the
// first node the inner extension applies.
class RadialFunction {
 public:
  static constexpr std::size_t kMinPoints = 8;

  RadialFunction(std::vector<double> grid, std::vector<double> values,
                 std::optional<PowerTail> tail = std::nullopt,
                 InnerExtension inner = InnerExtension::constant());

  double operator()(double r) const;

  std::span<const double> grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  const std::optional<PowerTail>& tail() const noexcept { return tail_; }
  const InnerExtension& inner() const noexcept { return inner_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double r_min() const noexcept { return grid_.front(); }
  double r_max() const noexcept { return grid_.back(); }

  // Copies with the far-field or near-field behaviour replaced.
  RadialFunction with_tail(std::optional<PowerTail> tail) const;
  RadialFunction with_inner(InnerExtension inner) const;

  // max |value| over the grid nodes.
  double sup_norm() const;

 private:
  double interpolate(std::size_t i, double r) const;

  std::vector<double> grid_;
  std::vector<double> values_;
  std::vector<double> log_grid_;
  std::vector<double> slopes_;      // d value / d log r at the nodes
  std::vector<double> log_slopes_;  // d log|value| / d log r; NaN off same-sign runs
  std::optional<PowerTail> tail_;
  InnerExtension inner_;
};

// Builds a RadialFunction from unordered (radius, value) samples.
// Errors: EmptyInput, DuplicateRadius, NonFiniteValue, OutOfRange (radius <= 0
// or fewer than RadialFunction::kMinPoints samples).
RadialFunction make_radial(std::vector<std::pair<double, double>> samples,
                           std::optional<PowerTail> tail = std::nullopt,
                           InnerExtension inner = InnerExtension::constant());

// `points` log-spaced radii on [r_min, r_max], endpoints included exactly.
std::vector<double> log_grid(double r_min, double r_max, std::size_t points);

// The window shared by the built-in experiments: 256 points on [1e-3, 1e4].
std::vector<double> default_grid();

// Sorted union of two grids; nodes closer than 1e-12 relative are merged.
std::vector<double> merge_grids(std::span<const double> a, std::span<const double> b);

// Samples `f` on `grid`.
RadialFunction sample_radial(const std::function<double(double)>& f, std::vector<double> grid,
                             std::optional<PowerTail> tail = std::nullopt,
                             InnerExtension inner = InnerExtension::constant());

// Whether ∫ |u(|x|)| / (1 + |x|^{n+alpha}) dx < ∞, decided from the declared
// tail (sigma > -alpha) and inner extension (exponent > -n).
bool in_l_alpha(const RadialFunction& u, double alpha, int n);

}  // namespace fraclap
