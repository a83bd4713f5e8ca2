// SPDX-License-Identifier: Apache-2.0
//
// Nonlinear 1-D pull-out benchmark: a rigid bar of vanishing radius is pulled
// axially out of a clamped cylinder of radius R. In cylindrical reduction the
// axial displacement u_z(r) carries a quartic strain-gradient energy density
// w(u', u''). The residual and tangent are produced by differentiating the
// transcribed energy with a two-variable second-order jet (exact forward-mode
// derivatives); hand-derived closed forms of the same partials are kept
// alongside for cross-validation. The printed derivative listings in the
// source material contain transcription slips, so the energy is the single
// source of truth here.
//
// Families: Hermite cubic and B-spline (C1-conforming), quadratic Lagrange in
// a broken-second-derivative variant (u'' taken element-wise), and a mixed
// (u, g, L) variant that relaxes g = u' with a multiplier.

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
#include "sgfem/shear.hpp"
#include "sgfem/sparse.hpp"

namespace sgfem {

enum class RadialMeasure { r_dr, dr };

struct PulloutDomain {
  double r_in = 0.01;  // inner radius standing in for the bar radius -> 0 [mm]
  double R = 1.0;      // clamped outer radius [mm]
  double u_p = 0.0;    // imposed axial displacement of the bar [mm]
  RadialMeasure measure = RadialMeasure::r_dr;
};

inline void validate(const PulloutDomain& d) {
  if (!(d.r_in > 0.0) || !(d.r_in < d.R))
    throw std::invalid_argument("PulloutDomain: need 0 < r_in < R");
  if (!std::isfinite(d.u_p)) throw std::invalid_argument("PulloutDomain: u_p must be finite");
}

struct PulloutFamily {
  enum class Kind { lagrange, hermite, bspline, mixed };
  Kind kind = Kind::hermite;
  int degree = 3;

  static PulloutFamily lagrange(int p = 2) {
    if (p < 1) throw std::invalid_argument("PulloutFamily: Lagrange degree must be >= 1");
    return {Kind::lagrange, p};
  }
  static PulloutFamily hermite() { return {Kind::hermite, 3}; }
  static PulloutFamily bspline(int p = 2) {
    if (p < 2) throw std::invalid_argument("PulloutFamily: B-spline degree must be >= 2");
    return {Kind::bspline, p};
  }
  static PulloutFamily mixed(int p = 1) {
    if (p < 1) throw std::invalid_argument("PulloutFamily: mixed field degree must be >= 1");
    return {Kind::mixed, p};
  }

  BasisFamily basis() const {
    switch (kind) {
      case Kind::lagrange: return BasisFamily::lagrange(degree);
      case Kind::hermite: return BasisFamily::hermite_cubic();
      case Kind::bspline: return BasisFamily::bspline(degree);
      case Kind::mixed: return BasisFamily::lagrange(degree);
    }
    throw std::logic_error("PulloutFamily: bad kind");
  }
  bool is_mixed() const { return kind == Kind::mixed; }
  std::string name() const {
    switch (kind) {
      case Kind::lagrange: return "lagrange";
      case Kind::hermite: return "hermite";
      case Kind::bspline: return "bspline";
      case Kind::mixed: return "mixed";
    }
    return "?";
  }
};

/// Two-variable truncated Taylor value: carries f, f_a, f_b, f_aa, f_ab, f_bb
/// through arithmetic, so evaluating the energy once yields all the partials
/// the residual and tangent need, exactly.
struct Jet2 {
  double v = 0.0;
  double da = 0.0, db = 0.0;
  double daa = 0.0, dab = 0.0, dbb = 0.0;

  static Jet2 var_a(double x) { return {x, 1.0, 0.0, 0.0, 0.0, 0.0}; }
  static Jet2 var_b(double x) { return {x, 0.0, 1.0, 0.0, 0.0, 0.0}; }
};

inline Jet2 operator+(const Jet2& p, const Jet2& q) {
  return {p.v + q.v, p.da + q.da, p.db + q.db, p.daa + q.daa, p.dab + q.dab, p.dbb + q.dbb};
}
inline Jet2 operator-(const Jet2& p, const Jet2& q) {
  return {p.v - q.v, p.da - q.da, p.db - q.db, p.daa - q.daa, p.dab - q.dab, p.dbb - q.dbb};
}
inline Jet2 operator*(const Jet2& p, const Jet2& q) {
  return {p.v * q.v,
          p.da * q.v + p.v * q.da,
          p.db * q.v + p.v * q.db,
          p.daa * q.v + 2.0 * p.da * q.da + p.v * q.daa,
          p.dab * q.v + p.da * q.db + p.db * q.da + p.v * q.dab,
          p.dbb * q.v + 2.0 * p.db * q.db + p.v * q.dbb};
}
inline Jet2 operator*(double s, const Jet2& p) {
  return {s * p.v, s * p.da, s * p.db, s * p.daa, s * p.dab, s * p.dbb};
}
inline Jet2 operator*(const Jet2& p, double s) { return s * p; }
inline Jet2 operator+(const Jet2& p, double s) {
  Jet2 r = p;
  r.v += s;
  return r;
}
inline Jet2 operator+(double s, const Jet2& p) { return p + s; }

/// The pull-out energy density, written once over any scalar-like type:
/// a = u_z', b = u_z'', r the radial coordinate.
template <class T>
T pullout_energy_density_t(const T& a, const T& b, double r, const ConstitutiveParams& c) {
  const T a2 = a * a;
  const T a3 = a2 * a;
  const T a4 = a2 * a2;
  const T b2 = b * b;
  const T ab = a * b;
  const T a2b2 = a2 * b2;
  const double r2 = r * r;

  T w = (c.c1 / 8.0) * a4;
  w = w + c.c2 * (0.5 * a2 + 0.25 * a4);
  w = w + (c.c3 / (2.0 * r)) * (a2 * b + a + (2.0 * r) * b);
  w = w + (2.0 * c.c4) * a2b2;
  w = w + (c.c5 / (4.0 * r2)) *
              (a2 + (4.0 * r2) * a2b2 + r2 * b2 + (4.0 * r) * (a3 * b) + (2.0 * r) * ab + a4);
  w = w + (c.c6 / (2.0 * r2)) * ((2.0 * r2) * a2b2 + a2 + r2 * b2 + a4);
  w = w + (c.c7 / (4.0 * r2)) * ((4.0 * r2) * a2b2 + a2 + r2 * b2 + a4);
  return w;
}

inline double pullout_energy_density(double du, double d2u, double r,
                                     const ConstitutiveParams& c) {
  if (!(r > 0.0)) throw std::invalid_argument("pullout_energy_density: r must be positive");
  return pullout_energy_density_t<double>(du, d2u, r, c);
}

struct PulloutEnergyDerivs {
  double w = 0.0;
  double da = 0.0, db = 0.0;
  double daa = 0.0, dab = 0.0, dbb = 0.0;
};

inline PulloutEnergyDerivs pullout_energy_jet(double a, double b, double r,
                                              const ConstitutiveParams& c) {
  if (!(r > 0.0)) throw std::invalid_argument("pullout_energy_jet: r must be positive");
  const Jet2 w = pullout_energy_density_t<Jet2>(Jet2::var_a(a), Jet2::var_b(b), r, c);
  return {w.v, w.da, w.db, w.daa, w.dab, w.dbb};
}

/// Hand-differentiated partials of the same energy, used to cross-check the
/// jet arithmetic in the test suite.
inline PulloutEnergyDerivs pullout_energy_derivs_closed(double a, double b, double r,
                                                        const ConstitutiveParams& c) {
  if (!(r > 0.0)) throw std::invalid_argument("pullout_energy_derivs_closed: r must be positive");
  const double r2 = r * r;
  const double a2 = a * a, a3 = a2 * a, b2 = b * b;
  PulloutEnergyDerivs d;
  d.w = pullout_energy_density_t<double>(a, b, r, c);
  d.da = 0.5 * c.c1 * a3 + c.c2 * (a + a3) + (c.c3 / (2.0 * r)) * (2.0 * a * b + 1.0) +
         4.0 * c.c4 * a * b2 +
         (c.c5 / (4.0 * r2)) *
             (2.0 * a + 8.0 * r2 * a * b2 + 12.0 * r * a2 * b + 2.0 * r * b + 4.0 * a3) +
         (c.c6 / (2.0 * r2)) * (4.0 * r2 * a * b2 + 2.0 * a + 4.0 * a3) +
         (c.c7 / (4.0 * r2)) * (8.0 * r2 * a * b2 + 2.0 * a + 4.0 * a3);
  d.db = (c.c3 / (2.0 * r)) * (a2 + 2.0 * r) + 4.0 * c.c4 * a2 * b +
         (c.c5 / (4.0 * r2)) * (8.0 * r2 * a2 * b + 2.0 * r2 * b + 4.0 * r * a3 + 2.0 * r * a) +
         (c.c6 / (2.0 * r2)) * (4.0 * r2 * a2 * b + 2.0 * r2 * b) +
         (c.c7 / (4.0 * r2)) * (8.0 * r2 * a2 * b + 2.0 * r2 * b);
  d.daa = 1.5 * c.c1 * a2 + c.c2 * (1.0 + 3.0 * a2) + (c.c3 / r) * b + 4.0 * c.c4 * b2 +
          (c.c5 / (4.0 * r2)) * (2.0 + 8.0 * r2 * b2 + 24.0 * r * a * b + 12.0 * a2) +
          (c.c6 / (2.0 * r2)) * (4.0 * r2 * b2 + 2.0 + 12.0 * a2) +
          (c.c7 / (4.0 * r2)) * (8.0 * r2 * b2 + 2.0 + 12.0 * a2);
  d.dab = (c.c3 / r) * a + 8.0 * c.c4 * a * b +
          (c.c5 / (4.0 * r2)) * (16.0 * r2 * a * b + 12.0 * r * a2 + 2.0 * r) +
          (c.c6 / (2.0 * r2)) * (8.0 * r2 * a * b) + (c.c7 / (4.0 * r2)) * (16.0 * r2 * a * b);
  d.dbb = 4.0 * c.c4 * a2 + (c.c5 / (4.0 * r2)) * (8.0 * r2 * a2 + 2.0 * r2) +
          (c.c6 / (2.0 * r2)) * (4.0 * r2 * a2 + 2.0 * r2) +
          (c.c7 / (4.0 * r2)) * (8.0 * r2 * a2 + 2.0 * r2);
  return d;
}

/// Discrete state of the pull-out problem. Primal families store the u DOFs;
/// the mixed variant stacks [u; g; L], each of length n_field.
struct PulloutState {
  PulloutFamily family;
  Mesh1D mesh;
  KnotVector knots;  // B-spline only
  DofMap dof_map;    // one scalar field
  std::vector<double> dofs;
  int n_field = 0;

  int n_dofs() const { return static_cast<int>(dofs.size()); }

  DiscreteSolution1D solution() const {
    DiscreteSolution1D s;
    s.family = family.basis();
    s.mesh = mesh;
    s.knots = knots;
    s.dof_map = dof_map;
    if (family.is_mixed()) {
      s.mixed = true;
      s.dofs.assign(dofs.begin(), dofs.begin() + n_field);
      s.g_dofs.assign(dofs.begin() + n_field, dofs.begin() + 2 * n_field);
    } else {
      s.dofs = dofs;
    }
    return s;
  }
};

inline PulloutState make_pullout_state(const PulloutFamily& family, int n_elem,
                                       const PulloutDomain& dom) {
  validate(dom);
  PulloutState st;
  st.family = family;
  st.mesh = interval_mesh(dom.r_in, dom.R, n_elem);
  const BasisFamily basis = family.basis();
  if (basis.kind == BasisKind::bspline)
    st.knots = open_knot_vector(basis.degree, n_elem, dom.r_in, dom.R);
  st.dof_map = build_dof_map(st.mesh, basis);
  st.n_field = st.dof_map.n_dofs;
  st.dofs.assign(static_cast<std::size_t>(family.is_mixed() ? 3 * st.n_field : st.n_field), 0.0);
  return st;
}

namespace detail {

inline double radial_weight(const PulloutDomain& dom, double x) {
  return dom.measure == RadialMeasure::r_dr ? x : 1.0;
}

// One pass over the mesh producing any of: functional value, residual,
// tangent triplets. Null outputs are skipped.
inline void pullout_assemble(const PulloutState& st, const PulloutDomain& dom,
                             const ConstitutiveParams& params, double* energy,
                             std::vector<double>* residual, TripletBuffer* tangent) {
  const BasisFamily basis = st.family.basis();
  const KnotVector* kv = basis.kind == BasisKind::bspline ? &st.knots : nullptr;
  const int nf = basis.dofs_per_element();
  const QuadratureRule rule = gauss_legendre(std::min(16, 2 * basis.degree));
  const bool mixed = st.family.is_mixed();
  const int n1 = st.n_field;

  if (energy) *energy = 0.0;
  if (residual) residual->assign(st.dofs.size(), 0.0);
  if (tangent)
    tangent->reserve(static_cast<std::size_t>(st.mesh.n_elems()) * nf * nf * (mixed ? 7 : 1));

  BasisEval shared;
  double shared_h = -1.0;
  if (basis.kind != BasisKind::bspline) {
    shared = eval_basis(basis, ElementGeometry{st.mesh.x0(0), st.mesh.x1(0)}, rule);
    shared_h = st.mesh.length(0);
  }

  for (int e = 0; e < st.mesh.n_elems(); ++e) {
    ElementGeometry geom{st.mesh.x0(e), st.mesh.x1(e), kv, e};
    const double h = geom.length();
    const double j1 = 2.0 / h, j2 = j1 * j1;
    const bool reuse = basis.kind == BasisKind::lagrange ||
                       (basis.kind == BasisKind::hermite_cubic && h == shared_h);
    BasisEval local;
    if (!reuse) local = eval_basis(basis, geom, rule);
    const BasisEval& be = reuse ? shared : local;
    const auto& edofs = st.dof_map.element_dofs[static_cast<std::size_t>(e)];

    for (std::size_t q = 0; q < rule.size(); ++q) {
      const double x = geom.x0 + 0.5 * (rule.points[q] + 1.0) * h;
      const double wmu = rule.weights[q] * 0.5 * h * radial_weight(dom, x);

      // a = u' everywhere; b = u'' for primal families, g' for the mixed one
      double a = 0.0, b = 0.0, gval = 0.0, Lval = 0.0;
      for (int i = 0; i < nf; ++i) {
        const int gi = edofs[static_cast<std::size_t>(i)];
        const double d1 = be.d1[i][q] * j1;
        a += st.dofs[static_cast<std::size_t>(gi)] * d1;
        if (mixed) {
          b += st.dofs[static_cast<std::size_t>(n1 + gi)] * d1;
          gval += st.dofs[static_cast<std::size_t>(n1 + gi)] * be.value[i][q];
          Lval += st.dofs[static_cast<std::size_t>(2 * n1 + gi)] * be.value[i][q];
        } else {
          b += st.dofs[static_cast<std::size_t>(gi)] * be.d2[i][q] * j2;
        }
      }

      const PulloutEnergyDerivs d = pullout_energy_jet(a, b, x, params);
      if (energy) *energy += wmu * (d.w + (mixed ? Lval * (gval - a) : 0.0));

      if (!residual && !tangent) continue;
      for (int i = 0; i < nf; ++i) {
        const int gi = edofs[static_cast<std::size_t>(i)];
        const double vi = be.value[i][q];
        const double d1i = be.d1[i][q] * j1;
        const double d2i = mixed ? 0.0 : be.d2[i][q] * j2;
        if (residual) {
          if (mixed) {
            (*residual)[static_cast<std::size_t>(gi)] += wmu * (d.da - Lval) * d1i;
            (*residual)[static_cast<std::size_t>(n1 + gi)] += wmu * (d.db * d1i + Lval * vi);
            (*residual)[static_cast<std::size_t>(2 * n1 + gi)] += wmu * (gval - a) * vi;
          } else {
            (*residual)[static_cast<std::size_t>(gi)] += wmu * (d.da * d1i + d.db * d2i);
          }
        }
        if (tangent) {
          for (int jn = 0; jn < nf; ++jn) {
            const int gj = edofs[static_cast<std::size_t>(jn)];
            const double vj = be.value[jn][q];
            const double d1j = be.d1[jn][q] * j1;
            if (mixed) {
              tangent->add(gi, gj, wmu * d.daa * d1i * d1j);
              tangent->add(gi, n1 + gj, wmu * d.dab * d1i * d1j);
              tangent->add(n1 + gi, gj, wmu * d.dab * d1i * d1j);
              tangent->add(n1 + gi, n1 + gj, wmu * d.dbb * d1i * d1j);
              tangent->add(gi, 2 * n1 + gj, -wmu * d1i * vj);
              tangent->add(2 * n1 + gi, gj, -wmu * vi * d1j);
              tangent->add(n1 + gi, 2 * n1 + gj, wmu * vi * vj);
              tangent->add(2 * n1 + gi, n1 + gj, wmu * vi * vj);
            } else {
              const double d2j = be.d2[jn][q] * j2;
              tangent->add(gi, gj, wmu * (d.daa * d1i * d1j + d.dab * (d1i * d2j + d2i * d1j) +
                                          d.dbb * d2i * d2j));
            }
          }
        }
      }
    }
  }
}

}  // namespace detail

/// Value of the discrete functional whose gradient is the residual: the
/// integrated energy density, plus the multiplier term for the mixed variant.
inline double pullout_total_energy(const PulloutState& st, const PulloutDomain& dom,
                                   const ConstitutiveParams& params) {
  double energy = 0.0;
  detail::pullout_assemble(st, dom, params, &energy, nullptr, nullptr);
  return energy;
}

inline std::pair<std::vector<double>, SparseMatrix> pullout_residual_tangent(
    const PulloutState& st, const PulloutDomain& dom, const ConstitutiveParams& params) {
  std::vector<double> residual;
  TripletBuffer buf;
  detail::pullout_assemble(st, dom, params, nullptr, &residual, &buf);
  const int n = static_cast<int>(st.dofs.size());
  return {std::move(residual), compress(buf, n, n)};
}

struct NewtonConfig {
  int max_iter = 50;
  double tol_rel = 1e-10;
  double tol_abs = 1e-12;
  // Step-stagnation acceptance: an undamped step that moves no component by
  // more than tol_step * (1 + |u|_inf) means the iterate sits within rounding
  // of the discrete solution. On fine C1 meshes the evaluated residual cannot
  // fall below roughly |T|_max * eps * |u| (coordinate rounding pushed through
  // the stiffest tangent modes), so a pure residual test would spin forever
  // even though u itself is converged to working precision.
  double tol_step = 1e-12;
  int max_halvings = 8;
  bool clamp_outer_slope = false;  // additionally impose u'(R) = 0
  bool log_initial_guess = false;  // start from the u_p * ln(R/r)/ln(R/r_in) lift
};

struct NewtonReport {
  std::vector<double> residual_norms;  // free-DOF 2-norm at each accepted iterate
  std::vector<double> step_scales;     // damping factor chosen per iteration
  std::vector<double> energies;        // discrete functional at each accepted iterate
  int iterations = 0;
  bool converged = false;
};

namespace detail {

inline std::vector<std::pair<int, double>> pullout_constraints(const PulloutState& st,
                                                               const PulloutDomain& dom,
                                                               bool clamp_outer_slope) {
  const int n1 = st.n_field;
  std::vector<std::pair<int, double>> bc;
  switch (st.family.kind) {
    case PulloutFamily::Kind::lagrange:
      bc = {{0, dom.u_p}, {n1 - 1, 0.0}};
      if (clamp_outer_slope)
        throw std::invalid_argument(
            "solve_pullout: outer slope clamp needs a slope-capable family (Hermite, B-spline, "
            "or mixed)");
      break;
    case PulloutFamily::Kind::hermite:
      bc = {{0, dom.u_p}, {n1 - 2, 0.0}};
      if (clamp_outer_slope) bc.push_back({n1 - 1, 0.0});
      break;
    case PulloutFamily::Kind::bspline:
      bc = {{0, dom.u_p}, {n1 - 1, 0.0}};
      if (clamp_outer_slope) bc.push_back({n1 - 2, 0.0});
      break;
    case PulloutFamily::Kind::mixed:
      bc = {{0, dom.u_p}, {n1 - 1, 0.0}};
      if (clamp_outer_slope) bc.push_back({n1 + n1 - 1, 0.0});
      break;
  }
  return bc;
}

inline void apply_initial_guess(PulloutState& st, const PulloutDomain& dom, bool log_guess) {
  std::fill(st.dofs.begin(), st.dofs.end(), 0.0);
  if (log_guess) {
    const double denom = std::log(dom.R / dom.r_in);
    auto uval = [&](double x) { return dom.u_p * std::log(dom.R / x) / denom; };
    auto uder = [&](double x) { return -dom.u_p / (x * denom); };
    for (int i = 0; i < st.n_field; ++i) {
      const DofDescriptor& dd = st.dof_map.descriptors[static_cast<std::size_t>(i)];
      const double vv = (dd.kind == DofKind::slope) ? uder(dd.x) : uval(dd.x);
      st.dofs[static_cast<std::size_t>(i)] = vv;
      if (st.family.is_mixed()) st.dofs[static_cast<std::size_t>(st.n_field + i)] = uder(dd.x);
    }
  }
}

inline double free_norm(const std::vector<double>& r, const std::vector<char>& is_fixed) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!is_fixed[i]) s += r[i] * r[i];
  return std::sqrt(s);
}

}  // namespace detail

inline std::pair<PulloutState, NewtonReport> solve_pullout(const PulloutFamily& family,
                                                           int n_elem, const PulloutDomain& dom,
                                                           const ConstitutiveParams& params,
                                                           const NewtonConfig& cfg = {}) {
  PulloutState st = make_pullout_state(family, n_elem, dom);
  const auto bc = detail::pullout_constraints(st, dom, cfg.clamp_outer_slope);

  detail::apply_initial_guess(st, dom, cfg.log_initial_guess);
  std::vector<char> is_fixed(st.dofs.size(), 0);
  for (const auto& [dof, v] : bc) {
    st.dofs[static_cast<std::size_t>(dof)] = v;
    is_fixed[static_cast<std::size_t>(dof)] = 1;
  }

  NewtonReport report;
  std::vector<double> residual;
  TripletBuffer tbuf;
  detail::pullout_assemble(st, dom, params, nullptr, &residual, nullptr);
  double norm = detail::free_norm(residual, is_fixed);
  const double norm0 = norm;
  report.residual_norms.push_back(norm);
  report.energies.push_back(pullout_total_energy(st, dom, params));

  const int n = static_cast<int>(st.dofs.size());
  for (int iter = 0; iter < cfg.max_iter; ++iter) {
    if (norm <= cfg.tol_rel * (1.0 + norm0) || norm <= cfg.tol_abs) {
      report.converged = true;
      break;
    }

    tbuf.entries.clear();
    detail::pullout_assemble(st, dom, params, nullptr, nullptr, &tbuf);
    SparseMatrix T = compress(tbuf, n, n);
    std::vector<double> rhs(st.dofs.size());
    for (std::size_t i = 0; i < st.dofs.size(); ++i) rhs[i] = -residual[i];
    std::vector<std::pair<int, double>> inc_bc;
    inc_bc.reserve(bc.size());
    for (const auto& [dof, v] : bc) inc_bc.push_back({dof, 0.0});
    apply_dirichlet(T, rhs, inc_bc);
    const std::vector<double> step = solve_sparse(T, rhs);

    double scale = 1.0;
    std::vector<double> trial(st.dofs.size());
    std::vector<double> trial_res;
    double trial_norm = norm;
    for (int halve = 0; halve <= cfg.max_halvings; ++halve) {
      for (std::size_t i = 0; i < st.dofs.size(); ++i) trial[i] = st.dofs[i] + scale * step[i];
      PulloutState probe = st;
      probe.dofs = trial;
      detail::pullout_assemble(probe, dom, params, nullptr, &trial_res, nullptr);
      trial_norm = detail::free_norm(trial_res, is_fixed);
      if (trial_norm < norm || halve == cfg.max_halvings) break;
      scale *= 0.5;
    }

    st.dofs = trial;
    residual = trial_res;
    norm = trial_norm;
    ++report.iterations;
    report.step_scales.push_back(scale);
    report.residual_norms.push_back(norm);
    report.energies.push_back(pullout_total_energy(st, dom, params));

    if (scale == 1.0 && cfg.tol_step > 0.0) {
      double du = 0.0, u = 0.0;
      for (std::size_t i = 0; i < st.dofs.size(); ++i) {
        du = std::max(du, std::fabs(step[i]));
        u = std::max(u, std::fabs(st.dofs[i]));
      }
      if (du <= cfg.tol_step * (1.0 + u)) {
        report.converged = true;
        break;
      }
    }
  }

  if (!report.converged)
    report.converged = (norm <= cfg.tol_rel * (1.0 + norm0) || norm <= cfg.tol_abs);
  return {std::move(st), std::move(report)};
}

}  // namespace sgfem
