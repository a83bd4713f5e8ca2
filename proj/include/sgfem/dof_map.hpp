// SPDX-License-Identifier: Apache-2.0
//
// Global degree-of-freedom numbering. For the 1-D families the element
// connectivity encodes the family's continuity: Lagrange elements share only
// endpoint values, Hermite elements share value+slope pairs, B-spline elements
// overlap in degree-many control points. The 2-D mixed map stacks ten fields
// per node: displacement (2), displacement gradient (4), and the Lagrange
// multiplier enforcing their compatibility (4).

#pragma once

#include <stdexcept>
#include <vector>

#include "sgfem/basis.hpp"
#include "sgfem/mesh.hpp"

namespace sgfem {

enum class DofKind { value, slope, control_point };

struct DofDescriptor {
  DofKind kind = DofKind::value;
  int field = 0;  // 2-D mixed: 0..9; 1-D: always 0
  double x = 0.0;
  double y = 0.0;
};

struct DofMap {
  int n_dofs = 0;
  std::vector<std::vector<int>> element_dofs;
  std::vector<DofDescriptor> descriptors;
};

inline DofMap build_dof_map(const Mesh1D& mesh, const BasisFamily& family) {
  const int ne = mesh.n_elems();
  if (ne < 1) throw std::invalid_argument("build_dof_map: empty mesh");
  DofMap map;
  map.element_dofs.resize(static_cast<std::size_t>(ne));

  switch (family.kind) {
    case BasisKind::lagrange: {
      const int p = family.degree;
      map.n_dofs = ne * p + 1;
      map.descriptors.resize(static_cast<std::size_t>(map.n_dofs));
      for (int e = 0; e < ne; ++e) {
        auto& dofs = map.element_dofs[static_cast<std::size_t>(e)];
        dofs.resize(static_cast<std::size_t>(p) + 1);
        for (int a = 0; a <= p; ++a) {
          const int g = e * p + a;
          dofs[static_cast<std::size_t>(a)] = g;
          map.descriptors[static_cast<std::size_t>(g)] = {
              DofKind::value, 0, mesh.x0(e) + mesh.length(e) * a / p, 0.0};
        }
      }
      break;
    }
    case BasisKind::hermite_cubic: {
      map.n_dofs = 2 * (ne + 1);
      map.descriptors.resize(static_cast<std::size_t>(map.n_dofs));
      for (int v = 0; v <= ne; ++v) {
        const double xv = mesh.vertices[static_cast<std::size_t>(v)];
        map.descriptors[static_cast<std::size_t>(2 * v)] = {DofKind::value, 0, xv, 0.0};
        map.descriptors[static_cast<std::size_t>(2 * v + 1)] = {DofKind::slope, 0, xv, 0.0};
      }
      for (int e = 0; e < ne; ++e)
        map.element_dofs[static_cast<std::size_t>(e)] = {2 * e, 2 * e + 1, 2 * e + 2, 2 * e + 3};
      break;
    }
    case BasisKind::bspline: {
      const int p = family.degree;
      map.n_dofs = ne + p;
      map.descriptors.resize(static_cast<std::size_t>(map.n_dofs));
      // Greville abscissae locate the control points for reporting purposes.
      const KnotVector kv = open_knot_vector(p, ne, mesh.a(), mesh.b());
      for (int i = 0; i < map.n_dofs; ++i) {
        double g = 0.0;
        for (int j = 1; j <= p; ++j) g += kv.knots[static_cast<std::size_t>(i + j)];
        map.descriptors[static_cast<std::size_t>(i)] = {DofKind::control_point, 0, g / p, 0.0};
      }
      for (int e = 0; e < ne; ++e) {
        auto& dofs = map.element_dofs[static_cast<std::size_t>(e)];
        dofs.resize(static_cast<std::size_t>(p) + 1);
        for (int a = 0; a <= p; ++a) dofs[static_cast<std::size_t>(a)] = e + a;
      }
      break;
    }
  }
  return map;
}

/// Mixed 2-D numbering: ten fields per node, node-major, so DOF
/// 10*node + field. Fields: 0,1 = u_x,u_y; 2..5 = g_xx,g_xy,g_yx,g_yy;
/// 6..9 = the matching multiplier components.
inline constexpr int kMixed2DFields = 10;

inline DofMap build_dof_map_mixed2d(const QuadMesh2D& mesh) {
  DofMap map;
  map.n_dofs = kMixed2DFields * mesh.n_nodes();
  map.descriptors.resize(static_cast<std::size_t>(map.n_dofs));
  for (int n = 0; n < mesh.n_nodes(); ++n)
    for (int f = 0; f < kMixed2DFields; ++f)
      map.descriptors[static_cast<std::size_t>(kMixed2DFields * n + f)] = {
          DofKind::value, f, mesh.node_x(n), mesh.node_y(n)};

  map.element_dofs.resize(static_cast<std::size_t>(mesh.n_elems()));
  for (int ey = 0; ey < mesh.ny; ++ey)
    for (int ex = 0; ex < mesh.nx; ++ex) {
      auto& dofs = map.element_dofs[static_cast<std::size_t>(ey * mesh.nx + ex)];
      dofs.reserve(4 * kMixed2DFields);
      for (int corner : mesh.elem_nodes(ex, ey))
        for (int f = 0; f < kMixed2DFields; ++f) dofs.push_back(kMixed2DFields * corner + f);
    }
  return map;
}

}  // namespace sgfem
