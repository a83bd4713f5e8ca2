// SPDX-License-Identifier: Apache-2.0
//
// Benchmark harness: the trapezoidal L1 profile error, JSON run
// configuration, h-convergence studies against the appropriate reference
// (closed form for shear, finest same-family solve for pull-out), fixed-DOF
// run-time tables, and the CSV serialization used by the command-line tool.
// Error columns are deterministic run to run; timing columns are not.

#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgfem/constitutive.hpp"
#include "sgfem/mixed2d.hpp"
#include "sgfem/pullout.hpp"
#include "sgfem/shear.hpp"

namespace sgfem {

/// Trapezoidal integral of |ref - sim| over the normalized coordinate [0,1]:
/// both profiles must be sampled at the same N uniform stations.
inline double l1_error(const std::vector<double>& ref, const std::vector<double>& sim) {
  if (ref.size() != sim.size()) throw std::invalid_argument("l1_error: profile length mismatch");
  const std::size_t n = ref.size();
  if (n < 2) throw std::invalid_argument("l1_error: need at least 2 samples");
  const double dx = 1.0 / static_cast<double>(n - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i)
    sum += 0.5 * (std::abs(ref[i] - sim[i]) + std::abs(ref[i + 1] - sim[i + 1])) * dx;
  return sum;
}

struct ConvergenceRecord {
  std::string problem;
  std::string family;
  int n_elem = 0;
  int dofs = 0;
  double error = 0.0;
  double wall_time_s = 0.0;
};

struct BenchRecord {
  std::string problem;
  std::string family;
  int nodes = 0;
  int dofs = 0;
  double runtime_s = 0.0;
};

struct RunConfig {
  std::string problem = "shearD";  // shearD | shearT | pullout
  EngineeringMaterial material{400.0, 0.49, 0.1};
  bool material_explicit = false;
  ConstitutiveParams params{};  // used when material_explicit

  double H = 0.5;      // shear plate height [mm]
  double load = 0.05;  // u_hat (case D) or t_hat (case T)
  PulloutDomain domain{0.01, 1.0, 0.1, RadialMeasure::r_dr};

  std::string family = "hermite";  // lagrange | hermite | bspline | mixed
  int degree = 0;                  // 0 picks the family default
  std::vector<int> elements{8, 16, 32, 64, 128};
  double penalty = 0.0;  // 0 picks the default scale
  NewtonConfig newton{};
  int samples = 201;
  int reference_elements = 5000;
  int dof_target = 106;
  std::string out_dir = ".";
  long seed = 12345;
};

inline int family_default_degree(const std::string& family) {
  if (family == "hermite") return 3;
  if (family == "bspline" || family == "lagrange") return 2;
  if (family == "mixed") return 1;
  throw std::invalid_argument("unknown family '" + family + "'");
}

inline ConstitutiveParams config_params(const RunConfig& cfg) {
  return cfg.material_explicit ? cfg.params : params_from_engineering(cfg.material);
}

inline ShearCase config_shear_case(const RunConfig& cfg) {
  if (cfg.problem == "shearD") return ShearCase::displacement_driven(cfg.H, cfg.load);
  if (cfg.problem == "shearT") return ShearCase::traction_driven(cfg.H, cfg.load);
  throw std::invalid_argument("config_shear_case: problem '" + cfg.problem + "' is not a shear case");
}

inline void validate(const RunConfig& cfg) {
  if (cfg.problem != "shearD" && cfg.problem != "shearT" && cfg.problem != "pullout")
    throw std::invalid_argument("RunConfig: problem must be shearD, shearT, or pullout");
  const int degree = cfg.degree > 0 ? cfg.degree : family_default_degree(cfg.family);
  if (cfg.family == "hermite" && degree != 3)
    throw std::invalid_argument("RunConfig: Hermite is cubic; leave degree unset or 3");
  if (cfg.family == "bspline" && degree < 2)
    throw std::invalid_argument("RunConfig: B-spline degree must be >= 2");
  if ((cfg.family == "lagrange" || cfg.family == "mixed") && degree < 1)
    throw std::invalid_argument("RunConfig: Lagrange-based degree must be >= 1");
  if (cfg.problem != "pullout" && cfg.family == "lagrange")
    throw std::invalid_argument(
        "RunConfig: plain Lagrange lacks the continuity for the shear solve; use mixed, "
        "hermite, or bspline");
  if (cfg.elements.empty()) throw std::invalid_argument("RunConfig: elements list is empty");
  for (int n : cfg.elements)
    if (n < 1) throw std::invalid_argument("RunConfig: element counts must be >= 1");
  if (cfg.samples < 2) throw std::invalid_argument("RunConfig: samples must be >= 2");
  if (cfg.penalty < 0.0) throw std::invalid_argument("RunConfig: penalty must be >= 0");
  if (cfg.reference_elements < 1)
    throw std::invalid_argument("RunConfig: reference_elements must be >= 1");
  if (cfg.dof_target < 2) throw std::invalid_argument("RunConfig: dof_target must be >= 2");
  if (cfg.problem != "pullout" && !(cfg.H > 0.0))
    throw std::invalid_argument("RunConfig: H must be positive");
  if (cfg.problem == "pullout") validate(cfg.domain);
  if (cfg.material_explicit)
    validate(cfg.params);
  else
    (void)params_from_engineering(cfg.material);  // throws on bad inputs
  if (cfg.newton.max_iter < 1) throw std::invalid_argument("RunConfig: newton.max_iter must be >= 1");
}

inline RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig cfg;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "problem")
        cfg.problem = value.get<std::string>();
      else if (key == "material") {
        if (value.contains("E")) {
          cfg.material = {value.at("E").get<double>(), value.at("nu").get<double>(),
                          value.value("lc", 0.0)};
          cfg.material_explicit = false;
        } else {
          cfg.params = {value.at("c1").get<double>(), value.at("c2").get<double>(),
                        value.at("c3").get<double>(), value.at("c4").get<double>(),
                        value.at("c5").get<double>(), value.at("c6").get<double>(),
                        value.at("c7").get<double>()};
          cfg.material_explicit = true;
        }
      } else if (key == "geometry") {
        if (value.contains("H")) {
          cfg.H = value.at("H").get<double>();
          cfg.load = value.value("load", cfg.load);
        }
        if (value.contains("R")) {
          cfg.domain.R = value.at("R").get<double>();
          cfg.domain.r_in = value.value("r_in", cfg.domain.R / 100.0);
          cfg.domain.u_p = value.value("u_p", cfg.domain.u_p);
          const std::string measure = value.value("measure", std::string("r_dr"));
          if (measure == "r_dr")
            cfg.domain.measure = RadialMeasure::r_dr;
          else if (measure == "dr")
            cfg.domain.measure = RadialMeasure::dr;
          else
            throw std::invalid_argument("RunConfig: measure must be r_dr or dr");
        }
      } else if (key == "family")
        cfg.family = value.get<std::string>();
      else if (key == "degree")
        cfg.degree = value.get<int>();
      else if (key == "elements")
        cfg.elements = value.is_array() ? value.get<std::vector<int>>()
                                        : std::vector<int>{value.get<int>()};
      else if (key == "penalty")
        cfg.penalty = value.get<double>();
      else if (key == "newton") {
        cfg.newton.max_iter = value.value("max_iter", cfg.newton.max_iter);
        cfg.newton.tol_rel = value.value("tol_rel", cfg.newton.tol_rel);
        cfg.newton.tol_abs = value.value("tol_abs", cfg.newton.tol_abs);
        cfg.newton.tol_step = value.value("tol_step", cfg.newton.tol_step);
        cfg.newton.max_halvings = value.value("max_halvings", cfg.newton.max_halvings);
        cfg.newton.clamp_outer_slope = value.value("clamp_outer_slope", cfg.newton.clamp_outer_slope);
        cfg.newton.log_initial_guess = value.value("log_initial_guess", cfg.newton.log_initial_guess);
      } else if (key == "samples")
        cfg.samples = value.get<int>();
      else if (key == "reference_elements")
        cfg.reference_elements = value.get<int>();
      else if (key == "dof_target")
        cfg.dof_target = value.get<int>();
      else if (key == "out")
        cfg.out_dir = value.get<std::string>();
      else if (key == "seed")
        cfg.seed = value.get<long>();
      else
        throw std::invalid_argument("RunConfig: unknown field '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("RunConfig: field '" + key + "': " + e.what());
    }
  }
  validate(cfg);
  return cfg;
}

inline RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  nlohmann::json j;
  in >> j;
  return parse_run_config(j);
}

namespace detail {

class WallTimer {
 public:
  WallTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline DiscreteSolution1D solve_shear_by_family(const RunConfig& cfg, int n_elem) {
  const ConstitutiveParams params = config_params(cfg);
  const ShearCase sc = config_shear_case(cfg);
  const int degree = cfg.degree > 0 ? cfg.degree : family_default_degree(cfg.family);
  if (cfg.family == "mixed") return solve_shear_mixed_1d(n_elem, sc, params, degree);
  ShearSolveOptions opt;
  opt.penalty = cfg.penalty;
  const BasisFamily fam =
      cfg.family == "hermite" ? BasisFamily::hermite_cubic() : BasisFamily::bspline(degree);
  return solve_shear_1d(fam, n_elem, sc, params, opt);
}

inline PulloutFamily pullout_family(const RunConfig& cfg) {
  const int degree = cfg.degree > 0 ? cfg.degree : family_default_degree(cfg.family);
  if (cfg.family == "lagrange") return PulloutFamily::lagrange(degree);
  if (cfg.family == "hermite") return PulloutFamily::hermite();
  if (cfg.family == "bspline") return PulloutFamily::bspline(degree);
  if (cfg.family == "mixed") return PulloutFamily::mixed(degree);
  throw std::invalid_argument("unknown family '" + cfg.family + "'");
}

inline std::vector<double> sample_solution(const DiscreteSolution1D& sol, double a, double b,
                                           int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = sol.eval(a + (b - a) * i / (n - 1), 0);
  return out;
}

}  // namespace detail

/// One record per element count; the reference profile is the closed form for
/// shear and the finest same-family solve for pull-out. Any solve failure is
/// rethrown with the failing cell identified.
inline std::vector<ConvergenceRecord> convergence_study(const RunConfig& cfg) {
  validate(cfg);
  const ConstitutiveParams params = config_params(cfg);
  std::vector<ConvergenceRecord> records;
  records.reserve(cfg.elements.size());

  auto run_cell = [&](int n_elem, const std::vector<double>& ref,
                      auto&& solve_and_sample) {
    try {
      records.push_back(solve_and_sample(n_elem, ref));
    } catch (const std::exception& e) {
      throw std::runtime_error("convergence_study: solve failed at problem=" + cfg.problem +
                               " family=" + cfg.family + " n_elem=" + std::to_string(n_elem) +
                               ": " + e.what());
    }
  };

  if (cfg.problem == "pullout") {
    const PulloutFamily fam = detail::pullout_family(cfg);
    std::vector<double> ref;
    {
      auto [ref_state, ref_report] = solve_pullout(fam, cfg.reference_elements, cfg.domain,
                                                   params, cfg.newton);
      if (!ref_report.converged)
        throw std::runtime_error("convergence_study: reference solve did not converge (problem=" +
                                 cfg.problem + " family=" + cfg.family +
                                 " n_elem=" + std::to_string(cfg.reference_elements) + ")");
      ref = detail::sample_solution(ref_state.solution(), cfg.domain.r_in, cfg.domain.R,
                                    cfg.samples);
    }
    for (int n : cfg.elements)
      run_cell(n, ref, [&](int n_elem, const std::vector<double>& rr) {
        detail::WallTimer timer;
        auto [state, report] = solve_pullout(fam, n_elem, cfg.domain, params, cfg.newton);
        const double t = timer.seconds();
        if (!report.converged)
          throw std::runtime_error("Newton did not converge in " +
                                   std::to_string(report.iterations) + " iterations");
        const std::vector<double> sim =
            detail::sample_solution(state.solution(), cfg.domain.r_in, cfg.domain.R, cfg.samples);
        return ConvergenceRecord{cfg.problem, cfg.family, n_elem, state.n_dofs(),
                                 l1_error(rr, sim), t};
      });
    return records;
  }

  const ShearCase sc = config_shear_case(cfg);
  const ClosedFormShear oracle = analytic_shear(sc, params);
  std::vector<double> ref(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i)
    ref[static_cast<std::size_t>(i)] = oracle.u(sc.H * i / (cfg.samples - 1));

  for (int n : cfg.elements)
    run_cell(n, ref, [&](int n_elem, const std::vector<double>& rr) {
      detail::WallTimer timer;
      const DiscreteSolution1D sol = detail::solve_shear_by_family(cfg, n_elem);
      const double t = timer.seconds();
      const std::vector<double> sim = detail::sample_solution(sol, 0.0, sc.H, cfg.samples);
      return ConvergenceRecord{cfg.problem, cfg.family, n_elem, sol.n_dofs(), l1_error(rr, sim),
                               t};
    });
  return records;
}

/// Smallest element count whose DOF count is nearest the target (ties toward
/// the larger system, so families are never under-resolved).
inline int elements_for_dof_target(const std::string& family, int degree, int target) {
  auto dofs_for = [&](int n) {
    if (family == "hermite") return 2 * (n + 1);
    if (family == "bspline") return n + degree;
    if (family == "lagrange") return n * degree + 1;
    if (family == "mixed") return 3 * (n * degree + 1);
    throw std::invalid_argument("unknown family '" + family + "'");
  };
  int best_n = 1;
  int best_diff = std::abs(dofs_for(1) - target);
  for (int n = 1; dofs_for(n) <= target + 3 * degree + 4; ++n) {
    const int diff = std::abs(dofs_for(n) - target);
    if (diff < best_diff || (diff == best_diff && dofs_for(n) > dofs_for(best_n))) {
      best_n = n;
      best_diff = diff;
    }
  }
  return best_n;
}

/// Run-time table at a fixed DOF budget: one warm-up, then the median of five
/// timed repetitions per family. Pull-out cells mirror the four-family
/// comparison; shear cells cover the three families that can solve it.
inline std::vector<BenchRecord> run_benchmark(const RunConfig& cfg) {
  validate(cfg);
  const ConstitutiveParams params = config_params(cfg);
  const std::vector<std::string> families =
      cfg.problem == "pullout" ? std::vector<std::string>{"lagrange", "hermite", "mixed", "bspline"}
                               : std::vector<std::string>{"hermite", "mixed", "bspline"};

  std::vector<BenchRecord> table;
  table.reserve(families.size());
  for (const std::string& family : families) {
    RunConfig cell = cfg;
    cell.family = family;
    cell.degree = family_default_degree(family);
    const int n_elem = elements_for_dof_target(family, cell.degree, cfg.dof_target);

    int dofs = 0;
    std::vector<double> times;
    times.reserve(5);
    for (int rep = 0; rep < 6; ++rep) {
      detail::WallTimer timer;
      if (cfg.problem == "pullout") {
        auto [state, report] = solve_pullout(detail::pullout_family(cell), n_elem, cfg.domain,
                                             params, cfg.newton);
        if (!report.converged)
          throw std::runtime_error("run_benchmark: Newton did not converge (family=" + family +
                                   ")");
        dofs = state.n_dofs();
      } else {
        const DiscreteSolution1D sol = detail::solve_shear_by_family(cell, n_elem);
        dofs = sol.n_dofs();
      }
      if (rep > 0) times.push_back(timer.seconds());
    }
    std::sort(times.begin(), times.end());
    table.push_back({cfg.problem, family, n_elem + 1, dofs, times[2]});
  }
  return table;
}

// ---------------------------------------------------------------------------
// CSV serialization: floats carry 17 significant digits so round-trips are
// bit-exact; every file records the sampling count in a comment header.

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv(const std::string& path, int samples, const std::string& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << "# samples=" << samples << "\n" << header << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << "\n";
  }
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

inline void write_convergence_csv(const std::string& path, int samples,
                                  const std::vector<ConvergenceRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  for (const auto& r : records)
    rows.push_back({r.problem, r.family, std::to_string(r.n_elem), std::to_string(r.dofs),
                    format_g17(r.error), format_g17(r.wall_time_s)});
  write_csv(path, samples, "problem,family,n_elem,dofs,l1_error,wall_time_s", rows);
}

inline void write_bench_csv(const std::string& path, int samples,
                            const std::vector<BenchRecord>& records) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  for (const auto& r : records)
    rows.push_back({r.problem, r.family, std::to_string(r.nodes), std::to_string(r.dofs),
                    format_g17(r.runtime_s)});
  write_csv(path, samples, "problem,family,nodes,dofs,runtime_s", rows);
}

/// Shear profile rows (y, u, u').
inline void write_shear_profile_csv(const std::string& path,
                                    const std::vector<std::array<double, 3>>& profile) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(profile.size());
  for (const auto& p : profile)
    rows.push_back({format_g17(p[0]), format_g17(p[1]), format_g17(p[2])});
  write_csv(path, static_cast<int>(profile.size()), "y,u,u′", rows);
}

/// Radial pull-out profile rows (r, u_z).
inline void write_pullout_profile_csv(const std::string& path,
                                      const std::vector<std::array<double, 2>>& profile) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(profile.size());
  for (const auto& p : profile) rows.push_back({format_g17(p[0]), format_g17(p[1])});
  write_csv(path, static_cast<int>(profile.size()), "r,u_z", rows);
}

/// Newton iteration history: residual norm per accepted iterate.
inline void write_newton_report_csv(const std::string& path, const NewtonReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(report.residual_norms.size());
  for (std::size_t i = 0; i < report.residual_norms.size(); ++i)
    rows.push_back({std::to_string(i), format_g17(report.residual_norms[i])});
  write_csv(path, static_cast<int>(report.residual_norms.size()), "iter,norm", rows);
}

/// Nodal displacement field of a 2-D mixed solve, one row per node.
inline void write_field_csv(const std::string& path, const MixedSolution2D& sol) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(static_cast<std::size_t>(sol.mesh.n_nodes()));
  for (int id = 0; id < sol.mesh.n_nodes(); ++id)
    rows.push_back({format_g17(sol.mesh.node_x(id)), format_g17(sol.mesh.node_y(id)),
                    format_g17(sol.u(id, 0)), format_g17(sol.u(id, 1))});
  write_csv(path, sol.mesh.n_nodes(), "x,y,u_x,u_y", rows);
}

}  // namespace sgfem
