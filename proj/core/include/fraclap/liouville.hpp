#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fraclap/params.hpp"
#include "fraclap/radial.hpp"

namespace fraclap {

// Which nonexistence criterion covers a parameter point, if any.
//   nonexistence_linear      p = q = 1 (with p, q >= 1)
//   nonexistence_u_decay     pq > 1, p, q >= 1 and σ_u > n - 2k - α
//   nonexistence_v_decay     pq > 1, p, q >= 1 and σ_v > n - 2l - β
//   nonexistence_subcritical 2k+α, 2l+β < n and (p, q) in the box
//                            0 < p <= p*, 0 < q <= q* minus the critical pair
//   nonexistence_high_order  max{2k+α, 2l+β} >= n and n >= 2 (cited result)
//   critical_pair            (p, q) = (p*, q*) with p* = (n+2k+α+2a)/(n-2l-β),
//                            q* = (n+2l+β+2b)/(n-2k-α)
//   outside                  none of the above
enum class Verdict {
  nonexistence_linear,
  nonexistence_u_decay,
  nonexistence_v_decay,
  nonexistence_subcritical,
  nonexistence_high_order,
  critical_pair,
  outside,
};

std::string_view to_string(Verdict verdict);

struct RegionVerdict {
  Verdict verdict = Verdict::outside;
  std::string reason;  // the inequality that decided, with numbers
  // Every criterion that holds, in check order; verdict is the first of them
  // (or critical_pair / outside when none does).
  std::vector<Verdict> satisfied;
};

// Checks in order: high order, p = q = 1, the two decay inequalities, the
// subcritical box. Equality with the critical pair is decided with a relative
// tolerance of 1e-12.
RegionVerdict classify(const ValidatedParams& params);

// (n, k, l, α, β, a, b, p, q) -> (n, l, k, β, α, b, a, q, p).
ProblemParams swap_roles(const ProblemParams& params);

// The verdict of the swapped point: u_decay and v_decay trade places.
Verdict mirror(Verdict verdict);

struct RegionCell {
  double p = 0.0;
  double q = 0.0;
  RegionVerdict verdict;
};

struct RegionMap {
  std::size_t p_count = 0;
  std::size_t q_count = 0;
  std::vector<RegionCell> cells;  // p-major: cells[i * q_count + j]

  const RegionCell& at(std::size_t i, std::size_t j) const { return cells[i * q_count + j]; }
};

// classify over p_i = p_lo + i (p_hi - p_lo)/(p_count - 1) and likewise for q;
// a count of one samples the midpoint. Errors: OutOfRange for empty or
// non-positive ranges or a template that fails validation.
RegionMap region_map(const ProblemParams& base, double p_lo, double p_hi, double q_lo, double q_hi,
                     std::size_t p_count, std::size_t q_count);

enum class LimitClass {
  diverges_to_minus_infinity,
  arithmetic_decrease,
  converges,
  constant,
  diverges_to_plus_infinity,
};

std::string_view to_string(LimitClass limit);

// Lower-bound exponents from iterating the integral system on u >= C|x|^{-μ}:
//   μ_{u,0} = (n-2k-α)/2,  μ_{v,0} = (n-2l-β)/2,
//   μ_{u,i+1} = p μ_{v,i} - (a+2k+α),  μ_{v,i+1} = q μ_{u,i} - (b+2l+β).
// Even steps satisfy μ_{i+2} = pq μ_i - C with fixed point C/(pq - 1); the
// limit class follows from pq and the sign of μ_0 minus that fixed point.
struct ExponentSequence {
  std::vector<double> mu_u;
  std::vector<double> mu_v;
  LimitClass limit_class = LimitClass::constant;    // of the even u iterates
  LimitClass limit_class_v = LimitClass::constant;  // of the even v iterates
  double limit_u = 0.0;  // fixed point C_u/(pq - 1); NaN when pq = 1
  double limit_v = 0.0;
  double tau = 0.0;  // n + 2k + α + 2a - p(n - 2l - β)
};

// Errors: NotSubcritical unless 2k+α, 2l+β < n; OutOfRange for i_max < 2.
ExponentSequence bootstrap(const ValidatedParams& params, std::size_t i_max);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct KelvinDefect {
  RadialFunction omega;  // u_λ - u on the nodes of u below λ
  std::vector<Interval> negative_set;
  double tolerance = 0.0;
};

// ω(r) = (λ/r)^σ u(λ²/r) - u(r) for r < λ; the negative set collects maximal
// runs of nodes where ω < -tolerance (default 1e-6 sup|u|, the interpolation budget).
// Errors: OutOfRange for λ <= 0 or fewer than 8 grid nodes below λ.
KelvinDefect kelvin_defect(const RadialFunction& u, double lambda, double sigma,
                           double tolerance = -1.0);

}  // namespace fraclap
