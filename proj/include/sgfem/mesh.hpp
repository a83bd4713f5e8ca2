// SPDX-License-Identifier: Apache-2.0
//
// Interval meshes for the 1-D solvers and structured quadrilateral meshes for
// the 2-D mixed solver. The quad mesh supports periodic identification in x:
// the right-edge nodes alias the left-edge column, shrinking the node table.

#pragma once

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

namespace sgfem {

struct Mesh1D {
  std::vector<double> vertices;  // ascending, size n_elems()+1

  int n_elems() const { return static_cast<int>(vertices.size()) - 1; }
  double a() const { return vertices.front(); }
  double b() const { return vertices.back(); }
  double x0(int e) const { return vertices[static_cast<std::size_t>(e)]; }
  double x1(int e) const { return vertices[static_cast<std::size_t>(e) + 1]; }
  double length(int e) const { return x1(e) - x0(e); }

  /// Element containing y, clamped to the mesh at either end.
  int locate(double y) const {
    auto it = std::upper_bound(vertices.begin(), vertices.end(), y);
    int e = static_cast<int>(it - vertices.begin()) - 1;
    return std::clamp(e, 0, n_elems() - 1);
  }
};

inline Mesh1D interval_mesh(double a, double b, int n) {
  if (n < 1) throw std::invalid_argument("interval_mesh: need at least one element");
  if (!(a < b)) throw std::invalid_argument("interval_mesh: degenerate interval");
  Mesh1D m;
  m.vertices.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) m.vertices[static_cast<std::size_t>(i)] = a + (b - a) * i / n;
  m.vertices.back() = b;
  return m;
}

/// Structured nx-by-ny grid of bilinear quads on [0,L] x [0,H]. With
/// periodic_x the nodes at i == nx are identified with i == 0, so the stored
/// grid has nx columns instead of nx+1.
struct QuadMesh2D {
  double L = 1.0, H = 1.0;
  int nx = 1, ny = 1;
  bool periodic_x = false;

  int n_cols() const { return periodic_x ? nx : nx + 1; }
  int n_rows() const { return ny + 1; }
  int n_nodes() const { return n_cols() * n_rows(); }
  int n_elems() const { return nx * ny; }
  double dx() const { return L / nx; }
  double dy() const { return H / ny; }

  /// Node id for logical grid position (i, j); i == nx wraps when periodic.
  int node_id(int i, int j) const {
    const int col = periodic_x ? (i % nx) : i;
    return j * n_cols() + col;
  }
  double node_x(int id) const { return (id % n_cols()) * dx(); }
  double node_y(int id) const { return (id / n_cols()) * dy(); }

  /// Counterclockwise corner nodes of element (ex, ey).
  std::array<int, 4> elem_nodes(int ex, int ey) const {
    return {node_id(ex, ey), node_id(ex + 1, ey), node_id(ex + 1, ey + 1), node_id(ex, ey + 1)};
  }
};

inline QuadMesh2D quad_mesh(double L, double H, int nx, int ny, bool periodic_x = false) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("quad_mesh: need at least one element per direction");
  if (!(L > 0.0) || !(H > 0.0)) throw std::invalid_argument("quad_mesh: domain must have positive size");
  if (periodic_x && nx < 2)
    throw std::invalid_argument("quad_mesh: periodic direction needs at least two elements");
  return {L, H, nx, ny, periodic_x};
}

}  // namespace sgfem
