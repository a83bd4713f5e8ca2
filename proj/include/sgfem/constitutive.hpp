// SPDX-License-Identifier: Apache-2.0
//
// Material parameters and isotropic stiffness tensors for strain-gradient
// elasticity, plus the deformation energy density
//
//   w = 1/2 eps:C:eps + 1/2 grad(eps):D:grad(eps)
//
// with eps_ij = (u_{i,j} + u_{j,i})/2 and eps_ij,k = (u_{i,jk} + u_{j,ik})/2.
// Units are MPa / mm / N throughout.

#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgfem {

/// Engineering description of an isotropic material with a characteristic
/// microstructural length l_c (mm).
struct EngineeringMaterial {
  double E;   // Young's modulus (MPa)
  double nu;  // Poisson's ratio
  double lc;  // characteristic length (mm)
};

/// First- and second-gradient moduli. c1, c2 are the Lame parameters
/// (lambda, mu); c3..c7 carry units of N. Individual gradient moduli may be
/// negative; well-posedness of reduced models is checked at the use site.
struct ConstitutiveParams {
  double c1 = 0.0;  // MPa
  double c2 = 0.0;  // MPa
  double c3 = 0.0;  // N
  double c4 = 0.0;  // N
  double c5 = 0.0;  // N
  double c6 = 0.0;  // N
  double c7 = 0.0;  // N

  double lambda() const { return c1; }
  double mu() const { return c2; }
};

/// Dense rank-4 stiffness tensor, dim^4 entries, row-major index order.
struct Rank4Tensor {
  int dim = 0;
  std::vector<double> a;

  explicit Rank4Tensor(int d) : dim(d), a(static_cast<std::size_t>(d * d * d * d), 0.0) {}

  double& operator()(int i, int j, int k, int l) {
    return a[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)];
  }
  double operator()(int i, int j, int k, int l) const {
    return a[static_cast<std::size_t>(((i * dim + j) * dim + k) * dim + l)];
  }
};

/// Dense rank-6 stiffness tensor, dim^6 entries.
struct Rank6Tensor {
  int dim = 0;
  std::vector<double> a;

  explicit Rank6Tensor(int d)
      : dim(d), a(static_cast<std::size_t>(d * d * d) * static_cast<std::size_t>(d * d * d), 0.0) {}

  double& operator()(int i, int j, int k, int l, int m, int n) {
    return a[static_cast<std::size_t>(((((i * dim + j) * dim + k) * dim + l) * dim + m) * dim + n)];
  }
  double operator()(int i, int j, int k, int l, int m, int n) const {
    return a[static_cast<std::size_t>(((((i * dim + j) * dim + k) * dim + l) * dim + m) * dim + n)];
  }
};

/// Displacement gradient and second gradient at a point. Only the leading
/// dim x dim (x dim) block is used; grad2_u must be symmetric in its last
/// two indices (mixed partials commute).
struct StrainState {
  int dim = 2;
  std::array<std::array<double, 3>, 3> grad_u{};            // u_{i,j}
  std::array<std::array<std::array<double, 3>, 3>, 3> grad2_u{};  // u_{i,jk}
};

inline void validate(const EngineeringMaterial& mat) {
  if (!(mat.E > 0.0)) throw std::invalid_argument("EngineeringMaterial: E must be > 0");
  if (!(mat.nu > -1.0 && mat.nu < 0.5))
    throw std::invalid_argument("EngineeringMaterial: nu must lie in (-1, 0.5)");
  if (!(mat.lc >= 0.0)) throw std::invalid_argument("EngineeringMaterial: lc must be >= 0");
}

inline void validate(const ConstitutiveParams& p) {
  for (double c : {p.c1, p.c2, p.c3, p.c4, p.c5, p.c6, p.c7})
    if (!std::isfinite(c)) throw std::invalid_argument("ConstitutiveParams: moduli must be finite");
  if (!(p.c2 > 0.0)) throw std::invalid_argument("ConstitutiveParams: c2 (shear modulus) must be > 0");
}

/// Granular-micromechanics map from (E, nu, l_c) to the seven moduli:
///   c1 = E nu / ((1+nu)(1-2nu)),   c2 = E / (2(1+nu)),
///   c3 = c4 = l_c^2/112 * c1,
///   c5 = c7 = l_c^2/1120 * (7 c2 + 3 c1),
///   c6      = l_c^2/1120 * (7 c2 - 4 c1).
inline ConstitutiveParams params_from_engineering(const EngineeringMaterial& mat) {
  validate(mat);
  const double E = mat.E, nu = mat.nu, lc2 = mat.lc * mat.lc;
  ConstitutiveParams p;
  p.c1 = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
  p.c2 = E / (2.0 * (1.0 + nu));
  p.c3 = lc2 / 112.0 * p.c1;
  p.c4 = p.c3;
  p.c5 = lc2 / 1120.0 * (7.0 * p.c2 + 3.0 * p.c1);
  p.c6 = lc2 / 1120.0 * (7.0 * p.c2 - 4.0 * p.c1);
  p.c7 = p.c5;
  return p;
}

/// Isotropic rank-4 stiffness: C_ijkl = c1 d_ij d_kl + c2 (d_ik d_jl + d_il d_jk).
inline Rank4Tensor build_isotropic_C(const ConstitutiveParams& p, int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("build_isotropic_C: dim must be 2 or 3");
  auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  Rank4Tensor C(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          C(i, j, k, l) = p.c1 * d(i, j) * d(k, l) + p.c2 * (d(i, k) * d(j, l) + d(i, l) * d(j, k));
  return C;
}

/// Isotropic rank-6 stiffness: the fifteen-delta-product expansion with
/// groups weighted by c3 (4 terms), c4 (1), c5 (4), c6 (2), c7 (4).
inline Rank6Tensor build_isotropic_D(const ConstitutiveParams& p, int dim) {
  if (dim != 2 && dim != 3) throw std::invalid_argument("build_isotropic_D: dim must be 2 or 3");
  auto d = [](int i, int j) { return i == j ? 1.0 : 0.0; };
  Rank6Tensor D(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n) {
              double v = p.c3 * (d(i, j) * d(k, l) * d(m, n) + d(i, n) * d(j, k) * d(l, m) +
                                 d(i, j) * d(k, m) * d(l, n) + d(i, k) * d(j, n) * d(l, m)) +
                         p.c4 * d(i, j) * d(k, n) * d(m, l) +
                         p.c5 * (d(i, k) * d(j, l) * d(m, n) + d(i, m) * d(j, k) * d(l, n) +
                                 d(i, k) * d(j, m) * d(l, n) + d(i, l) * d(j, k) * d(m, n)) +
                         p.c6 * (d(i, l) * d(j, m) * d(k, n) + d(i, m) * d(j, l) * d(k, n)) +
                         p.c7 * (d(i, l) * d(j, n) * d(m, k) + d(i, m) * d(j, n) * d(l, k) +
                                 d(i, n) * d(j, l) * d(k, m) + d(i, n) * d(j, m) * d(k, l));
              D(i, j, k, l, m, n) = v;
            }
  return D;
}

/// Deformation energy density w = 1/2 eps:C:eps + 1/2 grad(eps):D:grad(eps),
/// MPa (= mJ/mm^3). Strains are symmetrized from the stored gradients first.
inline double energy_density(const Rank4Tensor& C, const Rank6Tensor& D, const StrainState& s) {
  if (C.dim != s.dim || D.dim != s.dim)
    throw std::invalid_argument("energy_density: C, D, and StrainState must share dim");
  const int dim = s.dim;

  double eps[3][3] = {};
  double deps[3][3][3] = {};
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      eps[i][j] = 0.5 * (s.grad_u[i][j] + s.grad_u[j][i]);
      for (int k = 0; k < dim; ++k)
        deps[i][j][k] = 0.5 * (s.grad2_u[i][j][k] + s.grad2_u[j][i][k]);
    }

  double w1 = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) w1 += eps[i][j] * C(i, j, k, l) * eps[k][l];

  double w2 = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          for (int m = 0; m < dim; ++m)
            for (int n = 0; n < dim; ++n) w2 += deps[i][j][k] * D(i, j, k, l, m, n) * deps[l][m][n];

  return 0.5 * w1 + 0.5 * w2;
}

}  // namespace sgfem
