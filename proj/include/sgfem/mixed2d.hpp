// SPDX-License-Identifier: Apache-2.0
//
// Full 2-D mixed solver for the simple-shear plate. Displacement u, relaxed
// displacement gradient g, and multiplier L are all interpolated with
// bilinear quads; the multiplier weakly enforces g = grad(u) so the
// strain-gradient term needs only first derivatives of g. Lateral boundaries
// are periodic through shared DOF columns, which reproduces the 1-D closed
// form in y and makes the x-invariance of the discrete solution testable to
// solver precision.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sgfem/constitutive.hpp"
#include "sgfem/dof_map.hpp"
#include "sgfem/mesh.hpp"
#include "sgfem/shear.hpp"
#include "sgfem/sparse.hpp"

namespace sgfem {

struct MixedSolution2D {
  QuadMesh2D mesh;
  std::vector<double> dofs;  // kMixed2DFields per node

  double u(int node, int comp) const {
    return dofs[static_cast<std::size_t>(kMixed2DFields * node + comp)];
  }
  double g(int node, int i, int j) const {
    return dofs[static_cast<std::size_t>(kMixed2DFields * node + 2 + 2 * i + j)];
  }
  double multiplier(int node, int i, int j) const {
    return dofs[static_cast<std::size_t>(kMixed2DFields * node + 6 + 2 * i + j)];
  }
};

namespace detail {

struct QuadShape {
  // value[q][a] and physical gradient grad[q][a][dim] at the 2x2 Gauss points
  double value[4][4];
  double grad[4][4][2];
  double wq[4];
};

inline QuadShape quad_shapes(double dx, double dy) {
  constexpr double corner_xi[4] = {-1.0, 1.0, 1.0, -1.0};
  constexpr double corner_eta[4] = {-1.0, -1.0, 1.0, 1.0};
  const double gp = 1.0 / std::sqrt(3.0);
  const double pts[4][2] = {{-gp, -gp}, {gp, -gp}, {gp, gp}, {-gp, gp}};
  QuadShape s;
  for (int q = 0; q < 4; ++q) {
    const double xi = pts[q][0], eta = pts[q][1];
    s.wq[q] = 0.25 * dx * dy;  // unit Gauss weights times the Jacobian
    for (int a = 0; a < 4; ++a) {
      s.value[q][a] = 0.25 * (1.0 + corner_xi[a] * xi) * (1.0 + corner_eta[a] * eta);
      s.grad[q][a][0] = 0.25 * corner_xi[a] * (1.0 + corner_eta[a] * eta) * (2.0 / dx);
      s.grad[q][a][1] = 0.25 * corner_eta[a] * (1.0 + corner_xi[a] * xi) * (2.0 / dy);
    }
  }
  return s;
}

}  // namespace detail

/// Assembles and solves the periodic shear plate with the mixed formulation.
/// Case D prescribes u on both horizontal edges and g = 0 on the top; case T
/// applies the traction as a consistent top-edge load with u = g = 0 along
/// the bottom and the vertical displacement pinned on top.
inline MixedSolution2D solve_shear_mixed_2d(const QuadMesh2D& mesh, const ShearCase& sc,
                                            const ConstitutiveParams& params,
                                            double /*penalty*/ = 0.0) {
  if (!mesh.periodic_x)
    throw std::invalid_argument("solve_shear_mixed_2d: mesh must be periodic in x");
  (void)reduced_moduli(params);  // well-posedness gate

  const Rank4Tensor C = build_isotropic_C(params, 2);
  const Rank6Tensor D = build_isotropic_D(params, 2);
  const DofMap map = build_dof_map_mixed2d(mesh);
  const detail::QuadShape sh = detail::quad_shapes(mesh.dx(), mesh.dy());

  auto udof = [](int local, int i) { return kMixed2DFields * local + i; };
  auto gdof = [](int local, int i, int j) { return kMixed2DFields * local + 2 + 2 * i + j; };
  auto ldof = [](int local, int i, int j) { return kMixed2DFields * local + 6 + 2 * i + j; };

  TripletBuffer buf;
  buf.reserve(static_cast<std::size_t>(mesh.n_elems()) * 4 * 4 * 4 * (4 + 16 + 16));
  for (int ey = 0; ey < mesh.ny; ++ey)
    for (int ex = 0; ex < mesh.nx; ++ex) {
      const auto& edofs = map.element_dofs[static_cast<std::size_t>(ey * mesh.nx + ex)];
      for (int q = 0; q < 4; ++q) {
        const double w = sh.wq[q];
        for (int a = 0; a < 4; ++a) {
          const double Na = sh.value[q][a];
          const double* Ga = sh.grad[q][a];
          for (int b = 0; b < 4; ++b) {
            const double Nb = sh.value[q][b];
            const double* Gb = sh.grad[q][b];

            for (int i = 0; i < 2; ++i)
              for (int k = 0; k < 2; ++k) {
                double v = 0.0;
                for (int j = 0; j < 2; ++j)
                  for (int l = 0; l < 2; ++l) v += Ga[j] * C(i, j, k, l) * Gb[l];
                buf.add(edofs[static_cast<std::size_t>(udof(a, i))],
                        edofs[static_cast<std::size_t>(udof(b, k))], w * v);
              }

            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j)
                for (int p = 0; p < 2; ++p)
                  for (int r = 0; r < 2; ++r) {
                    double v = 0.0;
                    for (int k = 0; k < 2; ++k)
                      for (int n = 0; n < 2; ++n) v += Ga[k] * D(i, j, k, p, r, n) * Gb[n];
                    buf.add(edofs[static_cast<std::size_t>(gdof(a, i, j))],
                            edofs[static_cast<std::size_t>(gdof(b, p, r))], w * v);
                  }

            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j) {
                // -L_ij du_{i,j} and its transpose
                buf.add(edofs[static_cast<std::size_t>(udof(a, i))],
                        edofs[static_cast<std::size_t>(ldof(b, i, j))], -w * Ga[j] * Nb);
                buf.add(edofs[static_cast<std::size_t>(ldof(a, i, j))],
                        edofs[static_cast<std::size_t>(udof(b, i))], -w * Na * Gb[j]);
                // +L_ij dg_ij and its transpose
                buf.add(edofs[static_cast<std::size_t>(gdof(a, i, j))],
                        edofs[static_cast<std::size_t>(ldof(b, i, j))], w * Na * Nb);
                buf.add(edofs[static_cast<std::size_t>(ldof(a, i, j))],
                        edofs[static_cast<std::size_t>(gdof(b, i, j))], w * Na * Nb);
              }
          }
        }
      }
    }

  std::vector<double> rhs(static_cast<std::size_t>(map.n_dofs), 0.0);
  std::vector<std::pair<int, double>> bc;
  auto pin_u = [&](int node, int comp, double v) {
    bc.push_back({kMixed2DFields * node + comp, v});
  };
  auto pin_g = [&](int node) {
    for (int f = 2; f < 6; ++f) bc.push_back({kMixed2DFields * node + f, 0.0});
  };

  if (sc.kind == ShearCase::Kind::displacement) {
    for (int i = 0; i < mesh.n_cols(); ++i) {
      const int bottom = mesh.node_id(i, 0);
      const int top = mesh.node_id(i, mesh.ny);
      pin_u(bottom, 0, 0.0);
      pin_u(bottom, 1, 0.0);
      pin_u(top, 0, sc.load);
      pin_u(top, 1, 0.0);
      pin_g(top);
    }
  } else {
    for (int i = 0; i < mesh.n_cols(); ++i) {
      const int bottom = mesh.node_id(i, 0);
      const int top = mesh.node_id(i, mesh.ny);
      pin_u(bottom, 0, 0.0);
      pin_u(bottom, 1, 0.0);
      pin_g(bottom);
      pin_u(top, 1, 0.0);
      // consistent load for t = (load, 0): each top node collects dx/2 from
      // both adjacent edge elements (all interior under periodicity)
      rhs[static_cast<std::size_t>(kMixed2DFields * top + 0)] += sc.load * mesh.dx();
    }
  }

  SparseMatrix A = compress(buf, map.n_dofs, map.n_dofs);
  apply_dirichlet(A, rhs, bc);

  MixedSolution2D sol;
  sol.mesh = mesh;
  sol.dofs = solve_sparse(A, rhs);
  return sol;
}

/// Uniform-y samples of u_x along a vertical edge (bilinear in y between
/// nodes, exact at nodes).
inline std::vector<std::pair<double, double>> sample_edge(const MixedSolution2D& sol,
                                                          const std::string& edge,
                                                          int n_samples) {
  if (n_samples < 2) throw std::invalid_argument("sample_edge: need at least 2 samples");
  int col = 0;
  if (edge == "left")
    col = 0;
  else if (edge == "right")
    col = sol.mesh.periodic_x ? 0 : sol.mesh.nx;
  else
    throw std::invalid_argument("sample_edge: edge must be 'left' or 'right'");

  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  const double H = sol.mesh.H;
  for (int s = 0; s < n_samples; ++s) {
    const double y = H * s / (n_samples - 1);
    int j = std::min(static_cast<int>(y / sol.mesh.dy()), sol.mesh.ny - 1);
    const double y0 = j * sol.mesh.dy();
    const double t = (y - y0) / sol.mesh.dy();
    const double v0 = sol.u(sol.mesh.node_id(col, j), 0);
    const double v1 = sol.u(sol.mesh.node_id(col, j + 1), 0);
    out.push_back({y, (1.0 - t) * v0 + t * v1});
  }
  return out;
}

}  // namespace sgfem
