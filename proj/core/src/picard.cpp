#include "fraclap/picard.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "fraclap/averages.hpp"
#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"

namespace fraclap {

std::string_view to_string(PicardOutcome outcome) {
  switch (outcome) {
    case PicardOutcome::collapse_to_zero: return "collapse_to_zero";
    case PicardOutcome::blow_up: return "blow_up";
    case PicardOutcome::stationary: return "stationary";
    case PicardOutcome::max_iters: return "max_iters";
  }
  return "max_iters";
}

namespace {

// |y|^weight w^power with w clamped at zero.
RadialFunction make_source(const RadialFunction& w, double weight, double power, double order,
                           const char* field) {
  const auto grid = w.grid();
  const auto values = w.values();
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = std::pow(grid[i], weight) * std::pow(std::max(values[i], 0.0), power);
  }
  std::optional<PowerTail> tail;
  if (w.tail() && w.tail()->c > 0.0) {
    tail = PowerTail{power * w.tail()->sigma - weight, std::pow(w.tail()->c, power)};
    if (!(tail->sigma > order)) {
      fail(ErrorKind::DivergentConvolution, field,
           "source tail exponent " + std::to_string(tail->sigma) +
               " does not exceed the Riesz order " + std::to_string(order));
    }
  }
  InnerExtension inner = InnerExtension::constant();
  if (w.inner().kind == InnerKind::zero) {
    inner = InnerExtension::zero();
  } else {
    const double e = w.inner().kind == InnerKind::power ? w.inner().exponent : 0.0;
    const double exponent = weight + power * e;
    if (exponent != 0.0) inner = InnerExtension::power(exponent);
  }
  return RadialFunction(std::vector<double>(grid.begin(), grid.end()), std::move(out), tail, inner);
}

struct Refit {
  RadialFunction f;
  bool ok;
  double residual;
};

// Replaces the tail by a power law fitted over the top decade of the grid.
Refit refit_tail(const RadialFunction& f, double max_residual) {
  if (f.sup_norm() == 0.0) return {f.with_tail(std::nullopt), true, 0.0};
  const double hi = f.r_max();
  const double lo = std::max(f.r_min(), hi / 10.0);
  const auto report = fit_decay(f, lo, hi);
  if (report.residual > max_residual) return {f, false, report.residual};
  const double sigma = report.fitted_exponent;
  const PowerTail tail{sigma, f.values().back() * std::pow(hi, sigma)};
  return {f.with_tail(tail), true, report.residual};
}

double relative_change(const RadialFunction& next, const RadialFunction& prev) {
  const double norm = prev.sup_norm();
  double diff = 0.0;
  const auto a = next.values();
  const auto b = prev.values();
  for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
  if (norm == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / norm;
}

}  // namespace

PicardTrajectory picard_iterate(const ValidatedParams& params, const RadialFunction& u0,
                                const RadialFunction& v0, std::size_t steps,
                                const QuadratureSpec& spec, const PicardThresholds& thresholds,
                                QuadDiagnostics* diag) {
  if (!params.subcritical_order()) {
    fail(ErrorKind::NotSubcritical, "order", "iteration needs 2k+alpha < n and 2l+beta < n");
  }
  const ProblemParams& P = params.raw();
  const int n = P.n;
  const double gamma_u = params.order_u();
  const double gamma_v = params.order_v();

  PicardTrajectory traj;
  RadialFunction u = u0;
  RadialFunction v = v0;
  traj.u_iterates.push_back(u);
  traj.v_iterates.push_back(v);
  traj.sup_norms_u.push_back(u.sup_norm());
  traj.sup_norms_v.push_back(v.sup_norm());
  traj.residuals.push_back(0.0);
  const double initial = std::max(u.sup_norm(), v.sup_norm());
  if (initial == 0.0) {
    traj.outcome = PicardOutcome::collapse_to_zero;
    return traj;
  }

  RieszOptions options_u{std::vector<double>(u0.grid().begin(), u0.grid().end())};
  RieszOptions options_v{std::vector<double>(v0.grid().begin(), v0.grid().end())};
  bool stopped = false;
  for (std::size_t m = 0; m < steps; ++m) {
    const auto source_u = make_source(v, P.a, P.p, gamma_u, "p");
    const auto source_v = make_source(u, P.b, P.q, gamma_v, "q");
    auto next_u = riesz_potential(source_u, gamma_u, n, spec, options_u, diag);
    auto next_v = riesz_potential(source_v, gamma_v, n, spec, options_v, diag);

    auto fit_u = refit_tail(next_u, thresholds.max_fit_residual);
    auto fit_v = refit_tail(next_v, thresholds.max_fit_residual);
    const double residual = std::max(relative_change(fit_u.f, u), relative_change(fit_v.f, v));
    u = fit_u.f;
    v = fit_v.f;
    traj.u_iterates.push_back(u);
    traj.v_iterates.push_back(v);
    traj.sup_norms_u.push_back(u.sup_norm());
    traj.sup_norms_v.push_back(v.sup_norm());
    traj.residuals.push_back(residual);

    const double sup = std::max(u.sup_norm(), v.sup_norm());
    if (sup < thresholds.collapse * initial) {
      traj.outcome = PicardOutcome::collapse_to_zero;
      return traj;
    }
    if (sup > thresholds.blow_up * initial) {
      traj.outcome = PicardOutcome::blow_up;
      return traj;
    }
    if (!fit_u.ok || !fit_v.ok) {
      traj.warning = "tail refit residual " +
                     std::to_string(std::max(fit_u.residual, fit_v.residual)) +
                     " exceeds the limit; stopping";
      stopped = true;
      break;
    }
  }
  traj.outcome = !stopped && traj.residuals.back() < thresholds.stationary
                     ? PicardOutcome::stationary
                     : PicardOutcome::max_iters;
  return traj;
}

}  // namespace fraclap
