#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fraclap/error.hpp"
#include "fraclap/kernels.hpp"
#include "fraclap/parallel.hpp"
#include "fraclap/sphere.hpp"

namespace fraclap {

namespace {

void check_source(const RadialFunction& f, double gamma, int n) {
  if (n < 1) fail(ErrorKind::OutOfRange, "n", "dimension must be >= 1");
  if (!(gamma > 0.0) || !(gamma < n)) fail(ErrorKind::OutOfRange, "gamma", "must lie in (0, n)");
  if (f.tail() && f.tail()->c != 0.0 && !(f.tail()->sigma > gamma)) {
    fail(ErrorKind::DivergentTail, "tail",
         "source tail exponent " + std::to_string(f.tail()->sigma) +
             " must exceed gamma = " + std::to_string(gamma));
  }
  if (f.inner().kind == InnerKind::power && !(f.inner().exponent > -n)) {
    fail(ErrorKind::DivergentTail, "inner", "source is not locally integrable at the origin");
  }
}

// Behaviour of the kernel at s = r: |r - s|^{γ-1} for γ < 1, logarithmic at
// γ = 1 (left to adaptivity), bounded otherwise.
double diagonal_exponent(double gamma) { return gamma < 1.0 ? 1.0 - gamma : 0.0; }

class PotentialAt {
 public:
  PotentialAt(const RadialFunction& f, double gamma, int n, double r, const QuadratureSpec& spec,
              QuadDiagnostics* diag)
      : f_(f), gamma_(gamma), n_(n), r_(r), spec_(spec), diag_(diag),
        mu_r_(diagonal_exponent(gamma)) {}

  double operator()() const {
    const auto grid = f_.grid();
    const double g0 = grid.front();
    const double gN = grid.back();
    double total = 0.0;

    if (f_.inner().kind != InnerKind::zero && f_.values().front() != 0.0) {
      const double e = f_.inner().kind == InnerKind::power ? f_.inner().exponent : 0.0;
      const double mu0 = r_ == 0.0 ? 1.0 - gamma_ - e : -(n_ - 1.0 + e);
      total += segment(0.0, g0, mu0, 0.0, {});
    }

    total += segment(g0, gN, 0.0, 0.0, grid);

    if (f_.tail() && f_.tail()->c != 0.0) {
      double start = gN;
      if (r_ >= gN) {
        start = 2.0 * r_;
        total += segment(gN, start, 0.0, 0.0, {});
      }
      const double decay = f_.tail()->sigma + 1.0 - gamma_;
      const auto part = integrate_to_infinity(
          [this](double s) { return integrand(s); }, start, decay, spec_);
      record(part);
      total += part.value;
    }
    return riesz_constant(gamma_, n_) * sphere_area(n_) * total;
  }

 private:
  double integrand(double s) const {
    const double fs = f_(s);
    if (fs == 0.0) return 0.0;
    return std::pow(s, n_ - 1.0) * fs * ring_kernel(r_, s, gamma_, n_, spec_, diag_);
  }

  // ∫_lo^hi, split at s = r when r is interior.
  double segment(double lo, double hi, double mu_lo, double mu_hi,
                 std::span<const double> breaks) const {
    auto f = [this](double s) { return integrand(s); };
    if (r_ > lo && r_ < hi) {
      const auto left = integrate_ref(f, lo, r_, mu_lo, mu_r_, breaks, spec_);
      const auto right = integrate_ref(f, r_, hi, mu_r_, mu_hi, breaks, spec_);
      record(left);
      record(right);
      return left.value + right.value;
    }
    const double mu_a = r_ == lo && lo > 0.0 ? mu_r_ : mu_lo;
    const double mu_b = r_ == hi ? mu_r_ : mu_hi;
    const auto part = integrate_ref(f, lo, hi, mu_a, mu_b, breaks, spec_);
    record(part);
    return part.value;
  }

  void record(const QuadResult& result) const {
    if (diag_) diag_->record(result);
  }

  const RadialFunction& f_;
  double gamma_;
  int n_;
  double r_;
  const QuadratureSpec& spec_;
  QuadDiagnostics* diag_;
  double mu_r_;
};

}  // namespace

double riesz_potential_at(const RadialFunction& f, double gamma, int n, double r,
                          const QuadratureSpec& spec, QuadDiagnostics* diag) {
  spec.validate();
  check_source(f, gamma, n);
  if (!(r >= 0.0) || !std::isfinite(r)) fail(ErrorKind::OutOfRange, "r", "must be finite and >= 0");
  return PotentialAt(f, gamma, n, r, spec, diag)();
}

RadialFunction riesz_potential(const RadialFunction& f, double gamma, int n,
                               const QuadratureSpec& spec, const RieszOptions& options,
                               QuadDiagnostics* diag) {
  spec.validate();
  check_source(f, gamma, n);
  std::vector<double> grid = options.output_grid
                                 ? *options.output_grid
                                 : std::vector<double>(f.grid().begin(), f.grid().end());
  for (double r : grid) {
    if (!(r > 0.0) || !std::isfinite(r)) fail(ErrorKind::OutOfRange, "output_grid", "radii must be > 0");
  }

  std::vector<double> values(grid.size(), 0.0);
  parallel_for(grid.size(), [&](std::size_t i) {
    values[i] = PotentialAt(f, gamma, n, grid[i], spec, diag)();
  });

  double sigma = n - gamma;
  if (f.tail() && f.tail()->c != 0.0) sigma = std::min(sigma, f.tail()->sigma - gamma);
  const double r_max = grid.back();
  const PowerTail tail{sigma, values.back() * std::pow(r_max, sigma)};
  return RadialFunction(std::move(grid), std::move(values), tail, InnerExtension::constant());
}

}  // namespace fraclap
