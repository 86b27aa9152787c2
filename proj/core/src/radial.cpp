#include "fraclap/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fraclap/error.hpp"

namespace fraclap {

namespace {

// d/dt of the Lagrange interpolant through (t[j], y[j]), j in [lo, hi), at t[i].
double stencil_derivative(std::span<const double> t, std::span<const double> y, std::size_t lo,
                          std::size_t hi, std::size_t i) {
  double result = 0.0;
  double diag = 0.0;
  for (std::size_t j = lo; j < hi; ++j) {
    if (j == i) continue;
    diag += 1.0 / (t[i] - t[j]);
    double num = 1.0;
    double den = 1.0;
    for (std::size_t k = lo; k < hi; ++k) {
      if (k != j) den *= t[j] - t[k];
      if (k != j && k != i) num *= t[i] - t[k];
    }
    result += y[j] * num / den;
  }
  return result + y[i] * diag;
}

std::vector<double> limited_slopes(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  std::vector<double> secant(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) secant[i] = (y[i + 1] - y[i]) / (t[i + 1] - t[i]);

  std::vector<double> m(n);
  constexpr std::size_t kStencil = 5;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = i >= kStencil / 2 ? i - kStencil / 2 : 0;
    lo = std::min(lo, n - kStencil);
    m[i] = stencil_derivative(t, y, lo, lo + kStencil, i);
  }

  auto limit = [](double slope, double bound_secant) {
    if (bound_secant == 0.0 || slope * bound_secant <= 0.0) return 0.0;
    const double cap = 3.0 * std::abs(bound_secant);
    return std::copysign(std::min(std::abs(slope), cap), bound_secant);
  };

  m[0] = limit(m[0], secant[0]);
  m[n - 1] = limit(m[n - 1], secant[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double left = secant[i - 1];
    const double right = secant[i];
    if (left * right <= 0.0) {
      m[i] = 0.0;
      continue;
    }
    const double tighter = std::abs(left) < std::abs(right) ? left : right;
    m[i] = limit(m[i], tighter);
  }
  return m;
}

// Slopes of log|y| over maximal runs of nonzero values of one sign; NaN
// elsewhere and on runs too short for the stencil.
std::vector<double> log_run_slopes(std::span<const double> t, std::span<const double> y) {
  const std::size_t n = t.size();
  std::vector<double> out(n, std::numeric_limits<double>::quiet_NaN());
  std::size_t start = 0;
  while (start < n) {
    if (y[start] == 0.0) {
      ++start;
      continue;
    }
    std::size_t end = start + 1;
    while (end < n && y[end] != 0.0 && (y[end] > 0.0) == (y[start] > 0.0)) ++end;
    if (end - start >= 5) {
      std::vector<double> logs(end - start);
      for (std::size_t i = start; i < end; ++i) logs[i - start] = std::log(std::abs(y[i]));
      const auto m = limited_slopes(t.subspan(start, end - start), logs);
      std::copy(m.begin(), m.end(), out.begin() + static_cast<std::ptrdiff_t>(start));
    }
    start = end;
  }
  return out;
}

void check_grid(std::span<const double> grid, std::span<const double> values) {
  if (grid.empty()) fail(ErrorKind::EmptyInput, "grid", "no samples");
  if (grid.size() != values.size()) {
    fail(ErrorKind::OutOfRange, "values", "grid and values differ in length");
  }
  if (grid.size() < RadialFunction::kMinPoints) {
    fail(ErrorKind::OutOfRange, "grid",
         "need at least " + std::to_string(RadialFunction::kMinPoints) + " points, got " +
             std::to_string(grid.size()));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] <= 0.0) {
      fail(ErrorKind::OutOfRange, "radius", "radii must be finite and positive");
    }
    if (!std::isfinite(values[i])) {
      fail(ErrorKind::NonFiniteValue, "value", "at r = " + std::to_string(grid[i]));
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      if (grid[i] == grid[i - 1]) {
        fail(ErrorKind::DuplicateRadius, "radius", "r = " + std::to_string(grid[i]));
      }
      fail(ErrorKind::OutOfRange, "grid", "radii must be strictly increasing");
    }
  }
}

}  // namespace

RadialFunction::RadialFunction(std::vector<double> grid, std::vector<double> values,
                               std::optional<PowerTail> tail, InnerExtension inner)
    : grid_(std::move(grid)), values_(std::move(values)), tail_(tail), inner_(inner) {
  check_grid(grid_, values_);
  if (tail_ && (!std::isfinite(tail_->sigma) || !std::isfinite(tail_->c))) {
    fail(ErrorKind::NonFiniteValue, "tail", "tail exponent and coefficient must be finite");
  }
  if (!std::isfinite(inner_.exponent)) {
    fail(ErrorKind::NonFiniteValue, "inner", "inner exponent must be finite");
  }
  log_grid_.resize(grid_.size());
  std::transform(grid_.begin(), grid_.end(), log_grid_.begin(), [](double r) { return std::log(r); });
  slopes_ = limited_slopes(log_grid_, values_);
  log_slopes_ = log_run_slopes(log_grid_, values_);
}

double RadialFunction::interpolate(std::size_t i, double r) const {
  const double h = log_grid_[i + 1] - log_grid_[i];
  const double s = (std::log(r) - log_grid_[i]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
  const double h10 = s3 - 2.0 * s2 + s;
  const double h01 = -2.0 * s3 + 3.0 * s2;
  const double h11 = s3 - s2;
  if (!std::isnan(log_slopes_[i]) && !std::isnan(log_slopes_[i + 1]) &&
      (values_[i] > 0.0) == (values_[i + 1] > 0.0)) {
    const double log_value = h00 * std::log(std::abs(values_[i])) + h10 * h * log_slopes_[i] +
                             h01 * std::log(std::abs(values_[i + 1])) + h11 * h * log_slopes_[i + 1];
    return std::copysign(std::exp(log_value), values_[i]);
  }
  return h00 * values_[i] + h10 * h * slopes_[i] + h01 * values_[i + 1] + h11 * h * slopes_[i + 1];
}

double RadialFunction::operator()(double r) const {
  if (r > grid_.back()) {
    if (!tail_) return 0.0;
    return tail_->c * std::pow(r, -tail_->sigma);
  }
  if (r < grid_.front()) {
    switch (inner_.kind) {
      case InnerKind::constant: return values_.front();
      case InnerKind::zero: return 0.0;
      case InnerKind::power:
        if (r <= 0.0) {
          if (inner_.exponent > 0.0) return 0.0;
          if (inner_.exponent == 0.0) return values_.front();
          return values_.front() == 0.0 ? 0.0 : std::copysign(HUGE_VAL, values_.front());
        }
        return values_.front() * std::pow(r / grid_.front(), inner_.exponent);
    }
  }
  const auto it = std::upper_bound(grid_.begin(), grid_.end(), r);
  const std::size_t upper = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t i = upper - 1;
  if (grid_[i] == r) return values_[i];
  return interpolate(i, r);
}

RadialFunction RadialFunction::with_tail(std::optional<PowerTail> tail) const {
  RadialFunction copy = *this;
  if (tail && (!std::isfinite(tail->sigma) || !std::isfinite(tail->c))) {
    fail(ErrorKind::NonFiniteValue, "tail", "tail exponent and coefficient must be finite");
  }
  copy.tail_ = tail;
  return copy;
}

RadialFunction RadialFunction::with_inner(InnerExtension inner) const {
  RadialFunction copy = *this;
  copy.inner_ = inner;
  return copy;
}

double RadialFunction::sup_norm() const {
  double best = 0.0;
  for (double v : values_) best = std::max(best, std::abs(v));
  return best;
}

RadialFunction make_radial(std::vector<std::pair<double, double>> samples,
                           std::optional<PowerTail> tail, InnerExtension inner) {
  if (samples.empty()) fail(ErrorKind::EmptyInput, "samples", "no samples given");
  for (const auto& [r, v] : samples) {
    if (!std::isfinite(r) || r <= 0.0) {
      fail(ErrorKind::OutOfRange, "radius", "radii must be finite and positive");
    }
    if (!std::isfinite(v)) fail(ErrorKind::NonFiniteValue, "value", "at r = " + std::to_string(r));
  }
  std::sort(samples.begin(), samples.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<double> grid;
  std::vector<double> values;
  grid.reserve(samples.size());
  values.reserve(samples.size());
  for (const auto& [r, v] : samples) {
    if (!grid.empty() && grid.back() == r) {
      fail(ErrorKind::DuplicateRadius, "radius", "r = " + std::to_string(r));
    }
    grid.push_back(r);
    values.push_back(v);
  }
  return RadialFunction(std::move(grid), std::move(values), tail, inner);
}

std::vector<double> log_grid(double r_min, double r_max, std::size_t points) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    fail(ErrorKind::OutOfRange, "grid", "need 0 < r_min < r_max < inf");
  }
  if (points < 2) fail(ErrorKind::OutOfRange, "points", "need at least two points");
  std::vector<double> grid(points);
  const double lo = std::log(r_min);
  const double step = (std::log(r_max) - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = std::exp(lo + step * static_cast<double>(i));
  grid.front() = r_min;
  grid.back() = r_max;
  return grid;
}

std::vector<double> default_grid() { return log_grid(1e-3, 1e4, 256); }

std::vector<double> merge_grids(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  out.reserve(all.size());
  for (double r : all) {
    if (!out.empty() && std::abs(r - out.back()) <= 1e-12 * std::abs(r)) continue;
    out.push_back(r);
  }
  return out;
}

RadialFunction sample_radial(const std::function<double(double)>& f, std::vector<double> grid,
                             std::optional<PowerTail> tail, InnerExtension inner) {
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), f);
  return RadialFunction(std::move(grid), std::move(values), tail, inner);
}

bool in_l_alpha(const RadialFunction& u, double alpha, int n) {
  if (u.tail() && u.tail()->c != 0.0 && !(u.tail()->sigma > -alpha)) return false;
  if (u.inner().kind == InnerKind::power && u.values().front() != 0.0 &&
      !(u.inner().exponent > -static_cast<double>(n))) {
    return false;
  }
  return true;
}

}  // namespace fraclap
