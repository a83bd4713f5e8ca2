// SPDX-License-Identifier: Apache-2.0
//
// Gauss-Legendre quadrature on the reference interval [-1, 1].

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sgfem {

struct QuadratureRule {
  std::vector<double> points;   // strictly increasing in [-1, 1]
  std::vector<double> weights;  // positive, summing to 2

  std::size_t size() const { return points.size(); }
};

/// n-point Gauss-Legendre rule, exact for polynomials of degree 2n-1.
/// Nodes are found by Newton iteration on P_n starting from the Chebyshev
/// estimates; converges to machine precision in a handful of steps.
inline QuadratureRule gauss_legendre(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("gauss_legendre: n must be in [1, 16]");
  QuadratureRule rule;
  rule.points.assign(n, 0.0);
  rule.weights.assign(n, 0.0);

  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence for P_n(x) and P_n'(x)
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // one more recurrence pass at the converged node for the weight
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);

    rule.points[i] = -x;  // descending cosine estimates map to the left half
    rule.points[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.points[n / 2] = 0.0;  // exact center node for odd n
  }
  return rule;
}

}  // namespace sgfem
