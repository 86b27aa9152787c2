#include "fraclap/liouville.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "fraclap/error.hpp"

namespace fraclap {

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::nonexistence_linear: return "nonexistence_linear";
    case Verdict::nonexistence_u_decay: return "nonexistence_u_decay";
    case Verdict::nonexistence_v_decay: return "nonexistence_v_decay";
    case Verdict::nonexistence_subcritical: return "nonexistence_subcritical";
    case Verdict::nonexistence_high_order: return "nonexistence_high_order";
    case Verdict::critical_pair: return "critical_pair";
    case Verdict::outside: return "outside";
  }
  return "outside";
}

std::string_view to_string(LimitClass limit) {
  switch (limit) {
    case LimitClass::diverges_to_minus_infinity: return "diverges_to_minus_infinity";
    case LimitClass::arithmetic_decrease: return "arithmetic_decrease";
    case LimitClass::converges: return "converges";
    case LimitClass::constant: return "constant";
    case LimitClass::diverges_to_plus_infinity: return "diverges_to_plus_infinity";
  }
  return "constant";
}

namespace {

constexpr double kTieTolerance = 1e-12;

bool nearly_equal(double x, double y) {
  return std::abs(x - y) <= kTieTolerance * std::max({1.0, std::abs(x), std::abs(y)});
}

std::string num(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", x);
  return buffer;
}

}  // namespace

RegionVerdict classify(const ValidatedParams& params) {
  const ProblemParams& P = params.raw();
  const double n = P.n;
  const double ou = params.order_u();
  const double ov = params.order_v();
  const double pq = P.p * P.q;

  RegionVerdict result;
  auto hold = [&result](Verdict verdict, std::string reason) {
    if (result.satisfied.empty()) {
      result.verdict = verdict;
      result.reason = std::move(reason);
    }
    result.satisfied.push_back(verdict);
  };

  if (params.high_order() && P.n >= 2) {
    hold(Verdict::nonexistence_high_order,
         "max{2k+alpha, 2l+beta} = " + num(std::max(ou, ov)) + " >= n = " + num(n) +
             " with n >= 2 (higher-order case, covered by a cited result)");
  }
  if (P.p >= 1.0 && P.q >= 1.0) {
    if (P.p == 1.0 && P.q == 1.0) hold(Verdict::nonexistence_linear, "p = q = 1");
    if (pq > 1.0) {
      const double su = (ou + P.a + P.p * (ov + P.b)) / (pq - 1.0);
      const double sv = (ov + P.b + P.q * (ou + P.a)) / (pq - 1.0);
      if (su > n - ou) {
        hold(Verdict::nonexistence_u_decay,
             "pq = " + num(pq) + " > 1 and (2k+alpha+a+p(2l+beta+b))/(pq-1) = " + num(su) +
                 " > n-2k-alpha = " + num(n - ou));
      }
      if (sv > n - ov) {
        hold(Verdict::nonexistence_v_decay,
             "pq = " + num(pq) + " > 1 and (2l+beta+b+q(2k+alpha+a))/(pq-1) = " + num(sv) +
                 " > n-2l-beta = " + num(n - ov));
      }
    }
  }

  std::string fallback = "no criterion applies: 2k+alpha = " + num(ou) + ", 2l+beta = " +
                         num(ov) + ", n = " + num(n) + ", p = " + num(P.p) + ", q = " + num(P.q);
  Verdict fallback_verdict = Verdict::outside;
  if (params.subcritical_order()) {
    const double p_star = (n + ou + 2.0 * P.a) / (n - ov);
    const double q_star = (n + ov + 2.0 * P.b) / (n - ou);
    const bool p_in = P.p > 0.0 && (P.p <= p_star || nearly_equal(P.p, p_star));
    const bool q_in = P.q > 0.0 && (P.q <= q_star || nearly_equal(P.q, q_star));
    const std::string box = "p* = (n+2k+alpha+2a)/(n-2l-beta) = " + num(p_star) +
                            ", q* = (n+2l+beta+2b)/(n-2k-alpha) = " + num(q_star);
    if (nearly_equal(P.p, p_star) && nearly_equal(P.q, q_star)) {
      fallback_verdict = Verdict::critical_pair;
      fallback = "(p, q) = (" + num(P.p) + ", " + num(P.q) + ") is the critical pair; " + box;
    } else if (p_in && q_in) {
      hold(Verdict::nonexistence_subcritical,
           "0 < p = " + num(P.p) + " <= p*, 0 < q = " + num(P.q) + " <= q*; " + box);
    } else {
      fallback = "(p, q) = (" + num(P.p) + ", " + num(P.q) + ") leaves the subcritical box; " + box;
    }
  }
  if (result.satisfied.empty()) {
    result.verdict = fallback_verdict;
    result.reason = std::move(fallback);
  }
  return result;
}

ProblemParams swap_roles(const ProblemParams& params) {
  ProblemParams s = params;
  std::swap(s.k, s.l);
  std::swap(s.alpha, s.beta);
  std::swap(s.a, s.b);
  std::swap(s.p, s.q);
  return s;
}

Verdict mirror(Verdict verdict) {
  if (verdict == Verdict::nonexistence_u_decay) return Verdict::nonexistence_v_decay;
  if (verdict == Verdict::nonexistence_v_decay) return Verdict::nonexistence_u_decay;
  return verdict;
}

RegionMap region_map(const ProblemParams& base, double p_lo, double p_hi, double q_lo, double q_hi,
                     std::size_t p_count, std::size_t q_count) {
  if (p_count == 0 || q_count == 0) fail(ErrorKind::OutOfRange, "resolution", "must be >= 1");
  if (!(p_lo >= 0.0) || !(p_hi >= p_lo) || !std::isfinite(p_hi)) {
    fail(ErrorKind::OutOfRange, "p_range", "need 0 <= p_lo <= p_hi");
  }
  if (!(q_lo >= 0.0) || !(q_hi >= q_lo) || !std::isfinite(q_hi)) {
    fail(ErrorKind::OutOfRange, "q_range", "need 0 <= q_lo <= q_hi");
  }
  auto axis = [](double lo, double hi, std::size_t count) {
    std::vector<double> values(count);
    if (count == 1) {
      values[0] = 0.5 * (lo + hi);
      return values;
    }
    for (std::size_t i = 0; i < count; ++i) {
      values[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    return values;
  };
  const auto ps = axis(p_lo, p_hi, p_count);
  const auto qs = axis(q_lo, q_hi, q_count);

  RegionMap map;
  map.p_count = p_count;
  map.q_count = q_count;
  map.cells.reserve(p_count * q_count);
  for (double p : ps) {
    for (double q : qs) {
      ProblemParams cell = base;
      cell.p = p;
      cell.q = q;
      map.cells.push_back({p, q, classify(validate(cell))});
    }
  }
  return map;
}

ExponentSequence bootstrap(const ValidatedParams& params, std::size_t i_max) {
  if (!params.subcritical_order()) {
    fail(ErrorKind::NotSubcritical, "order", "bootstrap needs 2k+alpha < n and 2l+beta < n");
  }
  if (i_max < 2) fail(ErrorKind::OutOfRange, "i_max", "must be >= 2");
  const ProblemParams& P = params.raw();
  const double n = P.n;
  const double ou = params.order_u();
  const double ov = params.order_v();
  const double shift_u = P.a + ou;
  const double shift_v = P.b + ov;

  ExponentSequence seq;
  seq.mu_u.resize(i_max + 1);
  seq.mu_v.resize(i_max + 1);
  seq.mu_u[0] = 0.5 * (n - ou);
  seq.mu_v[0] = 0.5 * (n - ov);
  for (std::size_t i = 0; i < i_max; ++i) {
    seq.mu_u[i + 1] = P.p * seq.mu_v[i] - shift_u;
    seq.mu_v[i + 1] = P.q * seq.mu_u[i] - shift_v;
  }
  seq.tau = n + ou + 2.0 * P.a - P.p * (n - ov);

  const double pq = P.p * P.q;
  const double c_u = P.p * shift_v + shift_u;
  const double c_v = P.q * shift_u + shift_v;
  auto limit_of = [&](double mu0, double c, double& limit) {
    if (nearly_equal(pq, 1.0)) {
      limit = std::numeric_limits<double>::quiet_NaN();
      return c > 0.0 ? LimitClass::arithmetic_decrease
                     : (c == 0.0 ? LimitClass::constant : LimitClass::diverges_to_plus_infinity);
    }
    limit = c / (pq - 1.0);
    if (nearly_equal(mu0, limit)) return LimitClass::constant;
    if (pq < 1.0) return LimitClass::converges;
    return mu0 < limit ? LimitClass::diverges_to_minus_infinity
                       : LimitClass::diverges_to_plus_infinity;
  };
  seq.limit_class = limit_of(seq.mu_u[0], c_u, seq.limit_u);
  seq.limit_class_v = limit_of(seq.mu_v[0], c_v, seq.limit_v);
  return seq;
}

KelvinDefect kelvin_defect(const RadialFunction& u, double lambda, double sigma, double tolerance) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail(ErrorKind::OutOfRange, "lambda", "must be > 0");
  if (tolerance < 0.0) tolerance = 1e-6 * u.sup_norm();
  std::vector<double> grid;
  std::vector<double> omega;
  for (double r : u.grid()) {
    if (!(r < lambda)) break;
    grid.push_back(r);
    omega.push_back(std::pow(lambda / r, sigma) * u(lambda * lambda / r) - u(r));
  }
  if (grid.size() < RadialFunction::kMinPoints) {
    fail(ErrorKind::OutOfRange, "lambda",
         "only " + std::to_string(grid.size()) + " grid nodes lie below lambda");
  }

  std::vector<Interval> negative;
  bool open = false;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (omega[i] < -tolerance) {
      if (!open) negative.push_back({grid[i], grid[i]});
      negative.back().hi = grid[i];
      open = true;
    } else {
      open = false;
    }
  }
  return {RadialFunction(std::move(grid), std::move(omega), std::nullopt, InnerExtension::constant()),
          std::move(negative), tolerance};
}

}  // namespace fraclap
