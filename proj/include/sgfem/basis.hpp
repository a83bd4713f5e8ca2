// SPDX-License-Identifier: Apache-2.0
//
// 1-D element basis families: C0 Lagrange, C1 cubic Hermite, and C^(p-1)
// B-splines on an open knot vector. eval_basis returns values and first/second
// derivatives with respect to the reference coordinate xi in [-1, 1]; physical
// derivatives follow by the chain rule with the element Jacobian h/2.
//
// Hermite slope DOFs carry physical units (du/dx at the vertex): the slope
// shape functions are scaled by h/2 inside eval so that global C1 continuity
// holds on non-uniform meshes without extra bookkeeping at assembly sites.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgfem/quadrature.hpp"

namespace sgfem {

enum class BasisKind { lagrange, hermite_cubic, bspline };

struct BasisFamily {
  BasisKind kind = BasisKind::lagrange;
  int degree = 1;

  static BasisFamily lagrange(int p) {
    if (p < 1) throw std::invalid_argument("BasisFamily: Lagrange degree must be >= 1");
    return {BasisKind::lagrange, p};
  }
  static BasisFamily hermite_cubic() { return {BasisKind::hermite_cubic, 3}; }
  static BasisFamily bspline(int p) {
    // p >= 2 keeps second derivatives square integrable across spans
    if (p < 2) throw std::invalid_argument("BasisFamily: B-spline degree must be >= 2");
    return {BasisKind::bspline, p};
  }

  int dofs_per_element() const {
    return kind == BasisKind::hermite_cubic ? 4 : degree + 1;
  }
  int continuity() const {
    switch (kind) {
      case BasisKind::lagrange: return 0;
      case BasisKind::hermite_cubic: return 1;
      case BasisKind::bspline: return degree - 1;
    }
    return 0;
  }
  std::string name() const {
    switch (kind) {
      case BasisKind::lagrange: return "lagrange" + std::to_string(degree);
      case BasisKind::hermite_cubic: return "hermite";
      case BasisKind::bspline: return "bspline" + std::to_string(degree);
    }
    return "?";
  }
};

/// Open (clamped) knot vector on [a, b]: end knots repeated degree+1 times,
/// interior knots simple, so the spline space has maximal smoothness.
struct KnotVector {
  int degree = 0;
  std::vector<double> knots;

  int n_ctrl() const { return static_cast<int>(knots.size()) - degree - 1; }
  int n_spans() const { return n_ctrl() - degree; }
  double a() const { return knots.front(); }
  double b() const { return knots.back(); }
};

inline KnotVector open_knot_vector(int p, int n_elem, double a, double b) {
  if (p < 2) throw std::invalid_argument("open_knot_vector: degree must be >= 2");
  if (n_elem < 1) throw std::invalid_argument("open_knot_vector: n_elem must be >= 1");
  if (!(a < b)) throw std::invalid_argument("open_knot_vector: degenerate interval");
  KnotVector kv;
  kv.degree = p;
  kv.knots.reserve(static_cast<std::size_t>(n_elem + 2 * p + 1));
  for (int i = 0; i <= p; ++i) kv.knots.push_back(a);
  for (int i = 1; i < n_elem; ++i) kv.knots.push_back(a + (b - a) * i / n_elem);
  for (int i = 0; i <= p; ++i) kv.knots.push_back(b);
  return kv;
}

/// Knot span index s with knots[s] <= t < knots[s+1] (right end maps to the
/// last span).
inline int find_span(const KnotVector& kv, double t) {
  const int p = kv.degree;
  const int n = kv.n_ctrl() - 1;
  if (t >= kv.knots[static_cast<std::size_t>(n + 1)]) return n;
  if (t <= kv.knots[static_cast<std::size_t>(p)]) return p;
  int lo = p, hi = n + 1;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (t < kv.knots[static_cast<std::size_t>(mid)])
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

/// Nonzero B-spline basis functions and derivatives at t (The NURBS Book,
/// algorithm A2.3). ders[k][j] is the k-th derivative of N_{span-p+j}.
inline std::vector<std::vector<double>> bspline_ders(const KnotVector& kv, int span, double t,
                                                     int nders) {
  const int p = kv.degree;
  const auto& U = kv.knots;
  std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
  std::vector<double> left(p + 1, 0.0), right(p + 1, 0.0);

  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - U[static_cast<std::size_t>(span + 1 - j)];
    right[j] = U[static_cast<std::size_t>(span + j)] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  std::vector<std::vector<double>> ders(nders + 1, std::vector<double>(p + 1, 0.0));
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  std::vector<std::vector<double>> a(2, std::vector<double>(p + 1, 0.0));
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= nders; ++k) {
      double dsum = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        dsum = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        dsum += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        dsum += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = dsum;
      std::swap(s1, s2);
    }
  }

  double factor = p;
  for (int k = 1; k <= nders; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= (p - k);
  }
  return ders;
}

/// Identifies one element: its physical interval, plus the knot vector and
/// span index when the family is a B-spline.
struct ElementGeometry {
  double x0 = -1.0;
  double x1 = 1.0;
  const KnotVector* knots = nullptr;
  int span_elem = 0;

  double length() const { return x1 - x0; }
};

/// Values and reference-coordinate derivatives of the element-supported basis
/// functions at the quadrature points: value[a][q], d1[a][q], d2[a][q].
struct BasisEval {
  std::vector<std::vector<double>> value;
  std::vector<std::vector<double>> d1;
  std::vector<std::vector<double>> d2;

  std::size_t n_funcs() const { return value.size(); }
};

namespace detail {

// Equispaced Lagrange node xi_a = -1 + 2a/p; value/d1/d2 by product-rule sums.
inline void lagrange_point(int p, double xi, std::vector<double>& val, std::vector<double>& der1,
                           std::vector<double>& der2) {
  std::vector<double> nodes(p + 1);
  for (int a = 0; a <= p; ++a) nodes[a] = -1.0 + 2.0 * a / p;
  val.assign(p + 1, 0.0);
  der1.assign(p + 1, 0.0);
  der2.assign(p + 1, 0.0);
  for (int a = 0; a <= p; ++a) {
    double v = 1.0;
    for (int b = 0; b <= p; ++b)
      if (b != a) v *= (xi - nodes[b]) / (nodes[a] - nodes[b]);
    val[a] = v;

    double s1 = 0.0;
    for (int c = 0; c <= p; ++c) {
      if (c == a) continue;
      double prod = 1.0 / (nodes[a] - nodes[c]);
      for (int b = 0; b <= p; ++b)
        if (b != a && b != c) prod *= (xi - nodes[b]) / (nodes[a] - nodes[b]);
      s1 += prod;
    }
    der1[a] = s1;

    double s2 = 0.0;
    for (int c = 0; c <= p; ++c) {
      if (c == a) continue;
      for (int e = 0; e <= p; ++e) {
        if (e == a || e == c) continue;
        double prod = 1.0 / ((nodes[a] - nodes[c]) * (nodes[a] - nodes[e]));
        for (int b = 0; b <= p; ++b)
          if (b != a && b != c && b != e) prod *= (xi - nodes[b]) / (nodes[a] - nodes[b]);
        s2 += prod;
      }
    }
    der2[a] = s2;
  }
}

// Cubic Hermite shapes on [-1,1]; DOF order (u_L, u'_L, u_R, u'_R). The slope
// shapes here are unscaled (reference-slope convention).
inline void hermite_point(double xi, double v[4], double d1[4], double d2[4]) {
  const double um = 1.0 - xi, up = 1.0 + xi;
  v[0] = um * um * (2.0 + xi) / 4.0;
  v[1] = um * um * up / 4.0;
  v[2] = up * up * (2.0 - xi) / 4.0;
  v[3] = -up * up * um / 4.0;
  d1[0] = -3.0 * (1.0 - xi * xi) / 4.0;
  d1[1] = um * (-1.0 - 3.0 * xi) / 4.0;
  d1[2] = 3.0 * (1.0 - xi * xi) / 4.0;
  d1[3] = -up * (1.0 - 3.0 * xi) / 4.0;
  d2[0] = 1.5 * xi;
  d2[1] = (3.0 * xi - 1.0) / 2.0;
  d2[2] = -1.5 * xi;
  d2[3] = (3.0 * xi + 1.0) / 2.0;
}

}  // namespace detail

/// Basis values/derivatives at the rule's points for one element. B-spline
/// geometry must reference its knot vector; the span's parametric width is
/// taken from the knots, so x0/x1 must match the span.
inline BasisEval eval_basis(const BasisFamily& family, const ElementGeometry& geom,
                            const QuadratureRule& rule) {
  const std::size_t nq = rule.size();
  const double h = geom.length();
  if (!(h > 0.0)) throw std::invalid_argument("eval_basis: element length must be positive");

  BasisEval out;
  const int nf = family.dofs_per_element();
  out.value.assign(nf, std::vector<double>(nq, 0.0));
  out.d1.assign(nf, std::vector<double>(nq, 0.0));
  out.d2.assign(nf, std::vector<double>(nq, 0.0));

  switch (family.kind) {
    case BasisKind::lagrange: {
      std::vector<double> v, d1, d2;
      for (std::size_t q = 0; q < nq; ++q) {
        detail::lagrange_point(family.degree, rule.points[q], v, d1, d2);
        for (int a = 0; a < nf; ++a) {
          out.value[a][q] = v[a];
          out.d1[a][q] = d1[a];
          out.d2[a][q] = d2[a];
        }
      }
      break;
    }
    case BasisKind::hermite_cubic: {
      const double scale = 0.5 * h;  // physical-slope DOF convention
      for (std::size_t q = 0; q < nq; ++q) {
        double v[4], d1[4], d2[4];
        detail::hermite_point(rule.points[q], v, d1, d2);
        for (int a = 0; a < 4; ++a) {
          const double s = (a % 2 == 1) ? scale : 1.0;
          out.value[a][q] = s * v[a];
          out.d1[a][q] = s * d1[a];
          out.d2[a][q] = s * d2[a];
        }
      }
      break;
    }
    case BasisKind::bspline: {
      if (geom.knots == nullptr)
        throw std::invalid_argument("eval_basis: B-spline needs a knot vector");
      const KnotVector& kv = *geom.knots;
      if (kv.degree != family.degree)
        throw std::invalid_argument("eval_basis: knot vector degree mismatch");
      const int span = kv.degree + geom.span_elem;
      const double J = 0.5 * h;  // d(t)/d(xi)
      for (std::size_t q = 0; q < nq; ++q) {
        const double t = geom.x0 + 0.5 * (rule.points[q] + 1.0) * h;
        auto ders = bspline_ders(kv, span, t, 2);
        for (int a = 0; a < nf; ++a) {
          out.value[a][q] = ders[0][a];
          out.d1[a][q] = ders[1][a] * J;
          out.d2[a][q] = ders[2][a] * J * J;
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace sgfem
