#pragma once

#include <vector>

namespace fraclap {

// Nodes and weights on [-1, 1] for the weight (1 - x)^right * (1 + x)^left,
// right, left > -1. right = left = 0 is Gauss-Legendre.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Golub-Welsch on the Jacobi recurrence. Exact for polynomials of degree
// 2*points - 1 against the weight.
GaussRule compute_gauss_jacobi(int points, double right, double left);

// Same rule from a per-thread cache. The reference stays valid for the
// lifetime of the calling thread.
const GaussRule& gauss_jacobi(int points, double right, double left);

}  // namespace fraclap
