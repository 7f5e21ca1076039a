#pragma once

#include <vector>

namespace mpx {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule of order n; cached per order.
const QuadratureRule& gauss_legendre(int n);

// Nodes/weights mapped onto [a, b].
QuadratureRule gauss_legendre_on(int n, double a, double b);

}  // namespace mpx
