// SPDX-License-Identifier: Apache-2.0
//
// Simple-shear benchmark in its 1-D reduced form. Under lateral periodicity
// the plate response is u_x = u(y), and the strain-gradient energy collapses
// to w(u', u'') = (c2/2) u'^2 + (k/2) u''^2 with k = c5 + c6 + c7. The
// Euler-Lagrange equation c2 u'' - k u'''' = 0 is solved in closed form by
// {1, y, sinh(y/r), cosh(y/r)} with r = sqrt(k/c2); that closed form is the
// oracle every discrete solver here is measured against.
//
// Two discrete paths are provided: a primal Galerkin solve for C1-capable
// families (Hermite cubic, B-splines) with boundary conditions imposed by
// point penalties (strong imposition available as a switch), and a mixed
// (u, g, L) solve with equal-order C0 Lagrange fields where g relaxes u' and
// L enforces the compatibility constraint.

#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sgfem/basis.hpp"
#include "sgfem/constitutive.hpp"
#include "sgfem/dof_map.hpp"
#include "sgfem/mesh.hpp"
#include "sgfem/quadrature.hpp"
#include "sgfem/sparse.hpp"

namespace sgfem {

struct ShearCase {
  enum class Kind { displacement, traction };
  Kind kind = Kind::displacement;
  double load = 0.0;  // prescribed top displacement [mm] or top traction [N/mm]
  double H = 1.0;     // plate height [mm]

  static ShearCase displacement_driven(double H, double u_hat) {
    if (!(H > 0.0)) throw std::invalid_argument("ShearCase: H must be positive");
    return {Kind::displacement, u_hat, H};
  }
  static ShearCase traction_driven(double H, double t_hat) {
    if (!(H > 0.0)) throw std::invalid_argument("ShearCase: H must be positive");
    return {Kind::traction, t_hat, H};
  }
};

struct ReducedShearModuli {
  double c2 = 0.0;  // shear modulus [MPa]
  double k = 0.0;   // gradient modulus c5+c6+c7 [N]
  double r = 0.0;   // internal length sqrt(k/c2) [mm]
};

inline ReducedShearModuli reduced_moduli(const ConstitutiveParams& p) {
  const double k = p.c5 + p.c6 + p.c7;
  if (!(p.c2 > 0.0))
    throw std::invalid_argument("reduced_moduli: c2 = " + std::to_string(p.c2) +
                                " must be positive");
  if (!(k > 0.0))
    throw std::invalid_argument("reduced_moduli: c5+c6+c7 = " + std::to_string(k) +
                                " must be positive (ill-posed reduction)");
  return {p.c2, k, std::sqrt(k / p.c2)};
}

/// Closed-form shear solution u(y) = q1 + q2 y + q3 sinh(y/r) + q4 cosh(y/r).
/// Displacement case: u(0) = 0, u(H) = load, u'(H) = 0, u''(0) = 0.
/// Traction case: u(0) = 0, u'(0) = 0, c2 u'(H) - k u'''(H) = load, u''(H) = 0.
/// Evaluation always goes through exponentials scaled by 1/cosh(H/r) so that
/// thin boundary layers (large H/r) neither overflow nor cancel.
struct ClosedFormShear {
  ShearCase::Kind kind = ShearCase::Kind::displacement;
  double H = 1.0;
  double r = 1.0;
  double c2 = 1.0;
  double k = 1.0;
  double load = 0.0;
  double q1 = 0.0, q2 = 0.0, q3 = 0.0, q4 = 0.0;

  double u(double y) const { return eval(y, 0); }
  double du(double y) const { return eval(y, 1); }
  double d2u(double y) const { return eval(y, 2); }
  double d3u(double y) const { return eval(y, 3); }

  double eval(double y, int order) const {
    const double A = H / r;
    const double x = y / r;
    // Hyperbolics are always taken through exponentials scaled by 1/cosh(A):
    // bounded for every layer ratio (no overflow past A = 30), and free of
    // the catastrophic sinh/cosh cancellation the raw q-form suffers at the
    // boundaries once A is moderately large.
    const double den = 1.0 + std::exp(-2.0 * A);
    if (kind == ShearCase::Kind::displacement) {
      // S = sinh(x)/cosh(A), C = cosh(x)/cosh(A); S(0) = 0 exactly.
      const double S = (std::exp(x - A) - std::exp(-x - A)) / den;
      const double C = (std::exp(x - A) + std::exp(-x - A)) / den;
      const double alpha = -load * r / (H - r * std::tanh(A));
      switch (order) {
        case 0: return q2 * y + alpha * S;
        case 1: return q2 + alpha * C / r;
        case 2: return alpha * S / (r * r);
        case 3: return alpha * C / (r * r * r);
      }
    } else {
      // Layer pair relative to y = 0: T = (sinh(A-x) - sinh A)/cosh A written
      // with expm1 so T(0) = 0 exactly, plus S, C as above shifted to A - x.
      // Past x = 40 expm1(x) equals exp(x) to double precision, so the growing
      // factor folds into one non-positive exponent instead of overflowing.
      const double S = (std::exp(-x) - std::exp(x - 2.0 * A)) / den;
      const double C = (std::exp(-x) + std::exp(x - 2.0 * A)) / den;
      const double grow = x > 40.0 ? std::exp(x - 2.0 * A) : std::exp(-2.0 * A) * std::expm1(x);
      const double T = (std::expm1(-x) - grow) / den;
      const double beta = r * load / c2;
      switch (order) {
        case 0: return q2 * y + beta * T;
        case 1: return q2 - beta * C / r;
        case 2: return beta * S / (r * r);
        case 3: return -beta * C / (r * r * r);
      }
    }
    throw std::invalid_argument("ClosedFormShear: derivative order must be 0..3");
  }
};

inline ClosedFormShear analytic_shear(const ShearCase& sc, const ConstitutiveParams& params) {
  const ReducedShearModuli m = reduced_moduli(params);
  ClosedFormShear f;
  f.kind = sc.kind;
  f.H = sc.H;
  f.r = m.r;
  f.c2 = m.c2;
  f.k = m.k;
  f.load = sc.load;

  const double A = sc.H / m.r;
  const double th = std::tanh(A);
  if (sc.kind == ShearCase::Kind::displacement) {
    // q2 = u_hat cosh(A) / (H cosh(A) - r sinh(A)), q3 its sinh companion;
    // both rewritten over cosh(A) so they stay finite for any layer ratio.
    const double den = sc.H - m.r * th;
    f.q1 = 0.0;
    f.q4 = 0.0;
    f.q2 = sc.load / den;
    f.q3 = (A <= 700.0) ? -sc.load * m.r / (den * std::cosh(A)) : 0.0;
  } else {
    // s = c2 r^2 (cosh(A) - 1) + (c5+c6+c7) = k cosh(A), so the quotients
    // reduce to multiples of r t_hat / c2.
    const double beta = m.r * sc.load / m.c2;
    f.q1 = -beta * th;
    f.q2 = sc.load / m.c2;
    f.q3 = -beta;
    f.q4 = beta * th;
  }
  return f;
}

/// Finite-element solution of one 1-D field (or the u/g pair for the mixed
/// method). Evaluation maps y to its element and applies the chain rule, so
/// derivative orders are physical.
struct DiscreteSolution1D {
  BasisFamily family;
  Mesh1D mesh;
  KnotVector knots;  // B-spline families only
  DofMap dof_map;
  std::vector<double> dofs;
  std::vector<double> g_dofs;  // mixed method: relaxed-gradient field
  bool mixed = false;

  /// Size of the algebraic system behind this solution. The equal-order mixed
  /// method also solves for one multiplier dof per field dof, so it reports
  /// three fields even though only u and g are stored for evaluation.
  int n_dofs() const {
    const int n1 = static_cast<int>(dofs.size());
    return mixed ? 3 * n1 : n1;
  }

  double eval(double y, int order = 0) const { return eval_field(dofs, y, order); }
  double eval_g(double y, int order = 0) const {
    if (!mixed) throw std::logic_error("DiscreteSolution1D: no gradient field in a primal solve");
    return eval_field(g_dofs, y, order);
  }

 private:
  double eval_field(const std::vector<double>& coeffs, double y, int order) const {
    if (order < 0 || order > 2)
      throw std::invalid_argument("DiscreteSolution1D: derivative order must be 0..2");
    const int e = mesh.locate(y);
    ElementGeometry geom{mesh.x0(e), mesh.x1(e),
                         family.kind == BasisKind::bspline ? &knots : nullptr, e};
    const double h = geom.length();
    const double xi = 2.0 * (y - geom.x0) / h - 1.0;
    QuadratureRule point;
    point.points = {xi};
    point.weights = {0.0};
    const BasisEval be = eval_basis(family, geom, point);
    const auto& tab = (order == 0) ? be.value : (order == 1 ? be.d1 : be.d2);
    const auto& edofs = dof_map.element_dofs[static_cast<std::size_t>(e)];
    double s = 0.0;
    for (std::size_t a = 0; a < edofs.size(); ++a)
      s += coeffs[static_cast<std::size_t>(edofs[a])] * tab[a][0];
    return s * std::pow(2.0 / h, order);
  }
};

enum class BcEnforcement { penalty, strong };

struct ShearSolveOptions {
  double penalty = 0.0;  // <= 0 picks the default scale below
  BcEnforcement enforcement = BcEnforcement::penalty;
  int quad_points = 0;  // 0 picks degree+1
};

/// Penalty stiff enough to dominate both operator scales on elements of
/// size h, without chasing the constraint beyond solver precision.
inline double default_penalty(const ReducedShearModuli& m, double h) {
  return 1e8 * std::max(m.c2 / h, m.k / (h * h * h));
}

inline void assemble_shear_triplets(const BasisFamily& family, const Mesh1D& mesh,
                                    const KnotVector* knots, const DofMap& map,
                                    const ReducedShearModuli& m, int quad_points,
                                    TripletBuffer& buf) {
  const int nq = quad_points > 0 ? quad_points : family.degree + 1;
  const QuadratureRule rule = gauss_legendre(nq);
  const int nf = family.dofs_per_element();
  buf.reserve(buf.size() + static_cast<std::size_t>(mesh.n_elems()) * nf * nf);

  // Reference tables depend only on the rule for Lagrange (and on the element
  // size for Hermite), so the first element's evaluation is reused wherever
  // valid; B-spline shapes are span-specific.
  BasisEval shared;
  double shared_h = -1.0;
  if (family.kind != BasisKind::bspline) {
    shared = eval_basis(family, ElementGeometry{mesh.x0(0), mesh.x1(0)}, rule);
    shared_h = mesh.length(0);
  }

  for (int e = 0; e < mesh.n_elems(); ++e) {
    ElementGeometry geom{mesh.x0(e), mesh.x1(e), knots, e};
    const double h = geom.length();
    const double j1 = 2.0 / h, j2 = j1 * j1;
    const bool reuse = family.kind == BasisKind::lagrange ||
                       (family.kind == BasisKind::hermite_cubic && h == shared_h);
    BasisEval local;
    if (!reuse) local = eval_basis(family, geom, rule);
    const BasisEval& be = reuse ? shared : local;
    const auto& edofs = map.element_dofs[static_cast<std::size_t>(e)];
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double wq = rule.weights[q] * 0.5 * h;
      for (int a = 0; a < nf; ++a)
        for (int b = 0; b < nf; ++b) {
          const double v = m.c2 * (be.d1[a][q] * j1) * (be.d1[b][q] * j1) +
                           m.k * (be.d2[a][q] * j2) * (be.d2[b][q] * j2);
          buf.add(edofs[static_cast<std::size_t>(a)], edofs[static_cast<std::size_t>(b)], wq * v);
        }
    }
  }
}

/// Pure Galerkin operator of the reduced shear energy,
/// A_ab = Int c2 phi'_a phi'_b + k phi''_a phi''_b dy, without boundary terms.
inline SparseMatrix assemble_shear_operator(const BasisFamily& family, const Mesh1D& mesh,
                                            const KnotVector* knots, const DofMap& map,
                                            const ReducedShearModuli& m, int quad_points = 0) {
  TripletBuffer buf;
  assemble_shear_triplets(family, mesh, knots, map, m, quad_points, buf);
  return compress(buf, map.n_dofs, map.n_dofs);
}

namespace detail {

struct PointTerms {
  TripletBuffer* buf;
  std::vector<double>* rhs;
  const BasisFamily* family;
  const Mesh1D* mesh;
  const KnotVector* knots;
  const DofMap* map;

  // Adds K (u(y0) - target) du(y0) or, with slope=true, the u' analogue.
  void penalty(double y0, double target, double K, bool slope) const {
    const int e = mesh->locate(y0);
    ElementGeometry geom{mesh->x0(e), mesh->x1(e), knots, e};
    const double h = geom.length();
    QuadratureRule point;
    point.points = {2.0 * (y0 - geom.x0) / h - 1.0};
    point.weights = {0.0};
    const BasisEval be = eval_basis(*family, geom, point);
    const auto& edofs = map->element_dofs[static_cast<std::size_t>(e)];
    const double j = slope ? 2.0 / h : 1.0;
    const auto& tab = slope ? be.d1 : be.value;
    for (std::size_t a = 0; a < edofs.size(); ++a) {
      const double va = tab[a][0] * j;
      (*rhs)[static_cast<std::size_t>(edofs[a])] += K * target * va;
      for (std::size_t b = 0; b < edofs.size(); ++b)
        buf->add(edofs[a], edofs[b], K * va * tab[b][0] * j);
    }
  }

  void point_load(double y0, double value) const {
    const int e = mesh->locate(y0);
    ElementGeometry geom{mesh->x0(e), mesh->x1(e), knots, e};
    QuadratureRule point;
    point.points = {2.0 * (y0 - geom.x0) / geom.length() - 1.0};
    point.weights = {0.0};
    const BasisEval be = eval_basis(*family, geom, point);
    const auto& edofs = map->element_dofs[static_cast<std::size_t>(e)];
    for (std::size_t a = 0; a < edofs.size(); ++a)
      (*rhs)[static_cast<std::size_t>(edofs[a])] += value * be.value[a][0];
  }
};

}  // namespace detail

inline DiscreteSolution1D solve_shear_1d(const BasisFamily& family, int n_elem,
                                         const ShearCase& sc, const ConstitutiveParams& params,
                                         const ShearSolveOptions& opt = {}) {
  if (family.continuity() < 1)
    throw std::invalid_argument(
        "solve_shear_1d: family must be C1 (Hermite cubic or B-spline p >= 2); "
        "use solve_shear_mixed_1d for C0 Lagrange");
  const ReducedShearModuli m = reduced_moduli(params);

  DiscreteSolution1D sol;
  sol.family = family;
  sol.mesh = interval_mesh(0.0, sc.H, n_elem);
  if (family.kind == BasisKind::bspline)
    sol.knots = open_knot_vector(family.degree, n_elem, 0.0, sc.H);
  const KnotVector* kv = family.kind == BasisKind::bspline ? &sol.knots : nullptr;
  sol.dof_map = build_dof_map(sol.mesh, family);

  TripletBuffer buf;
  assemble_shear_triplets(family, sol.mesh, kv, sol.dof_map, m, opt.quad_points, buf);
  std::vector<double> rhs(static_cast<std::size_t>(sol.dof_map.n_dofs), 0.0);

  detail::PointTerms pt{&buf, &rhs, &family, &sol.mesh, kv, &sol.dof_map};
  const double h = sc.H / n_elem;
  const double K = opt.penalty > 0.0 ? opt.penalty : default_penalty(m, h);

  std::vector<std::pair<int, double>> strong;
  const int nd = sol.dof_map.n_dofs;
  if (sc.kind == ShearCase::Kind::displacement) {
    if (opt.enforcement == BcEnforcement::penalty) {
      pt.penalty(0.0, 0.0, K, false);
      pt.penalty(sc.H, sc.load, K, false);
      pt.penalty(sc.H, 0.0, K, true);
    } else if (family.kind == BasisKind::hermite_cubic) {
      strong = {{0, 0.0}, {nd - 2, sc.load}, {nd - 1, 0.0}};
    } else {
      // open knots: end value = end control point; zero end slope means the
      // last two control points coincide
      strong = {{0, 0.0}, {nd - 1, sc.load}, {nd - 2, sc.load}};
    }
  } else {
    if (opt.enforcement == BcEnforcement::penalty) {
      pt.penalty(0.0, 0.0, K, false);
      pt.penalty(0.0, 0.0, K, true);
    } else if (family.kind == BasisKind::hermite_cubic) {
      strong = {{0, 0.0}, {1, 0.0}};
    } else {
      strong = {{0, 0.0}, {1, 0.0}};
    }
    pt.point_load(sc.H, sc.load);
  }

  SparseMatrix A = compress(buf, nd, nd);
  if (!strong.empty()) apply_dirichlet(A, rhs, strong);
  sol.dofs = solve_sparse(A, rhs);
  return sol;
}

/// Equal-order C0 mixed method: fields u (displacement), g (relaxed gradient),
/// L (multiplier tying g to u'). Essential conditions are imposed strongly.
inline DiscreteSolution1D solve_shear_mixed_1d(int n_elem, const ShearCase& sc,
                                               const ConstitutiveParams& params, int degree = 1) {
  const ReducedShearModuli m = reduced_moduli(params);
  const BasisFamily fam = BasisFamily::lagrange(degree);

  DiscreteSolution1D sol;
  sol.family = fam;
  sol.mixed = true;
  sol.mesh = interval_mesh(0.0, sc.H, n_elem);
  sol.dof_map = build_dof_map(sol.mesh, fam);

  const int n1 = sol.dof_map.n_dofs;
  const int nd = 3 * n1;  // u, g, L stacked
  const int nf = fam.dofs_per_element();
  const QuadratureRule rule = gauss_legendre(degree + 1);

  TripletBuffer buf;
  buf.reserve(static_cast<std::size_t>(sol.mesh.n_elems()) * nf * nf * 6);
  for (int e = 0; e < sol.mesh.n_elems(); ++e) {
    ElementGeometry geom{sol.mesh.x0(e), sol.mesh.x1(e), nullptr, e};
    const double h = geom.length();
    const double j1 = 2.0 / h;
    const BasisEval be = eval_basis(fam, geom, rule);
    const auto& edofs = sol.dof_map.element_dofs[static_cast<std::size_t>(e)];
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double wq = rule.weights[q] * 0.5 * h;
      for (int a = 0; a < nf; ++a) {
        const int ua = edofs[static_cast<std::size_t>(a)];
        const int ga = n1 + ua, La = 2 * n1 + ua;
        const double va = be.value[a][q], da = be.d1[a][q] * j1;
        for (int b = 0; b < nf; ++b) {
          const int ub = edofs[static_cast<std::size_t>(b)];
          const int gb = n1 + ub, Lb = 2 * n1 + ub;
          const double vb = be.value[b][q], db = be.d1[b][q] * j1;
          buf.add(ua, ub, wq * m.c2 * da * db);
          buf.add(ga, gb, wq * m.k * da * db);
          buf.add(ua, Lb, -wq * da * vb);
          buf.add(ga, Lb, wq * va * vb);
          buf.add(La, ub, -wq * va * db);
          buf.add(La, gb, wq * va * vb);
        }
      }
    }
  }

  std::vector<double> rhs(static_cast<std::size_t>(nd), 0.0);
  std::vector<std::pair<int, double>> bc;
  if (sc.kind == ShearCase::Kind::displacement) {
    bc = {{0, 0.0}, {n1 - 1, sc.load}, {n1 + n1 - 1, 0.0}};
  } else {
    bc = {{0, 0.0}, {n1, 0.0}};
    rhs[static_cast<std::size_t>(n1 - 1)] += sc.load;  // endpoint Lagrange node carries value 1
  }

  SparseMatrix A = compress(buf, nd, nd);
  apply_dirichlet(A, rhs, bc);
  const std::vector<double> x = solve_sparse(A, rhs);
  sol.dofs.assign(x.begin(), x.begin() + n1);
  sol.g_dofs.assign(x.begin() + n1, x.begin() + 2 * n1);
  return sol;
}

}  // namespace sgfem
