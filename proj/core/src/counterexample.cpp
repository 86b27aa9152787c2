#include "fraclap/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/parallel.hpp"

namespace fraclap {

double Bump::operator()(double s) const {
  if (!(s > lo) || !(s < hi)) return 0.0;
  if (profile) return profile(s);
  return amplitude * std::exp(-1.0 / ((s - lo) * (hi - s)));
}

void Bump::validate() const {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    fail(ErrorKind::BumpInvalid, "support", "need 0 < lo < hi");
  }
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    fail(ErrorKind::BumpInvalid, "amplitude", "must be > 0");
  }
  if (!profile) return;
  bool nonzero = false;
  for (int i = 0; i <= 256; ++i) {
    const double s = lo + (hi - lo) * i / 256.0;
    const double value = profile(s);
    if (!std::isfinite(value) || value < 0.0) {
      fail(ErrorKind::BumpInvalid, "profile", "profile must be finite and nonnegative");
    }
    if ((i == 0 || i == 256) && value != 0.0) {
      fail(ErrorKind::BumpInvalid, "profile", "profile must vanish at the support ends");
    }
    nonzero = nonzero || value > 0.0;
  }
  if (!nonzero) fail(ErrorKind::BumpInvalid, "profile", "profile vanishes identically");
}

RadialFunction bump_source(const Bump& bump, std::size_t dense_points) {
  bump.validate();
  std::vector<double> dense;
  dense.reserve(dense_points);
  for (std::size_t i = 1; i <= dense_points; ++i) {
    dense.push_back(bump.lo + (bump.hi - bump.lo) * static_cast<double>(i) /
                                  static_cast<double>(dense_points + 1));
  }
  const auto base = default_grid();
  auto grid = merge_grids(base, dense);
  return sample_radial([&bump](double s) { return bump(s); }, std::move(grid), std::nullopt,
                       InnerExtension::constant());
}

CounterexampleReport build_counterexample(double alpha, int n, const Bump& bump,
                                          const QuadratureSpec& spec, QuadDiagnostics* diag) {
  if (n < 1) fail(ErrorKind::OutOfRange, "n", "dimension must be >= 1");
  if (!(alpha > 0.0) || !(alpha < std::min(2.0, static_cast<double>(n)))) {
    fail(ErrorKind::OutOfRange, "alpha", "must lie in (0, min(2, n))");
  }
  auto f = bump_source(bump);
  auto u = riesz_potential(f, alpha, n, spec, {}, diag);

  CounterexampleReport report{.f = f, .u = u, .sample_radii = {}, .frac_laplacian_values = {}};
  report.r_lo = 0.05 * bump.lo;
  report.r_hi = 0.95 * bump.lo;
  report.monotone_floor = 1e-10 * u.sup_norm();
  report.min_forward_difference = std::numeric_limits<double>::infinity();
  const auto grid = u.grid();
  const auto values = u.values();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (grid[i] <= report.r_lo || grid[i + 1] >= report.r_hi) continue;
    report.min_forward_difference =
        std::min(report.min_forward_difference, values[i + 1] - values[i]);
  }
  report.strictly_increasing = report.min_forward_difference > report.monotone_floor;

  const double f_max = f.sup_norm();
  for (double v : f.values()) report.f_nonneg = report.f_nonneg && v >= 0.0;

  std::vector<double> inside;
  for (int i = 0; i < 8; ++i) inside.push_back(bump.lo * (0.1 + 0.1 * i));
  std::vector<double> support;
  for (int i = 0; i < 12; ++i) support.push_back(bump.lo + (bump.hi - bump.lo) * (i + 0.5) / 12.0);
  std::vector<double> outside{1.25 * bump.hi, 1.5 * bump.hi, 2.5 * bump.hi, 5.0 * bump.hi};

  auto& radii = report.sample_radii;
  radii.insert(radii.end(), inside.begin(), inside.end());
  radii.insert(radii.end(), support.begin(), support.end());
  radii.insert(radii.end(), outside.begin(), outside.end());
  report.frac_laplacian_values.assign(radii.size(), 0.0);
  parallel_for(radii.size(), [&](std::size_t i) {
    report.frac_laplacian_values[i] = frac_laplacian(u, alpha, n, radii[i], spec, diag);
  });

  report.min_frac_laplacian = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double value = report.frac_laplacian_values[i];
    report.min_frac_laplacian = std::min(report.min_frac_laplacian, value / f_max);
    report.residual = std::max(report.residual, std::abs(value - bump(radii[i])) / f_max);
  }
  return report;
}

}  // namespace fraclap
