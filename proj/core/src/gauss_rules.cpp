#include "fraclap/gauss_rules.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "fraclap/error.hpp"

namespace fraclap {

GaussRule compute_gauss_jacobi(int points, double right, double left) {
  if (points < 1) fail(ErrorKind::OutOfRange, "gauss_nodes", "need at least one node");
  if (!(right > -1.0) || !(left > -1.0)) {
    fail(ErrorKind::OutOfRange, "jacobi_exponent",
         "weight exponents must exceed -1, got " + std::to_string(right) + ", " +
             std::to_string(left));
  }
  const double a = right;
  const double b = left;
  const double ab = a + b;

  Eigen::VectorXd diag(points);
  Eigen::VectorXd sub(points > 1 ? points - 1 : 0);
  for (int k = 0; k < points; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (int k = 1; k < points; ++k) {
    const double s = 2.0 * k + ab;
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(b2);
  }

  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));

  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  if (points == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    fail(ErrorKind::NoConvergence, "gauss_jacobi", "tridiagonal eigensolver failed");
  }
  for (int i = 0; i < points; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

const GaussRule& gauss_jacobi(int points, double right, double left) {
  thread_local std::map<std::tuple<int, double, double>, GaussRule> cache;
  const auto key = std::make_tuple(points, right, left);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_gauss_jacobi(points, right, left)).first;
  return it->second;
}

}  // namespace fraclap
