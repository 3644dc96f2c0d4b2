#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kelab/grid.hpp"

namespace kelab {

struct SolverConfig {
  double L = 8.0;  // truncation halfwidth
  int N = 257;     // nodes per axis, odd
  double tol = 1e-10;      // max-norm KE residual at termination
  int max_iter = 40;       // Newton iterations per level
  double min_step = 1e-4;  // line-search floor (Armijo, factor 0.5)

  enum class Boundary {
    support_calibrated,  // h_K plus a mass-calibrated constant and, when
                         // bc_relax is on, a far-field shape correction
    support_raw,         // plain h_K
    oracle,              // caller-supplied Dirichlet data
  };
  Boundary boundary = Boundary::support_calibrated;
  std::function<double(Vec2)> oracle_data;

  bool cascade = true;   // coarse-to-fine warm starts for large N
  int bc_outer = 8;      // calibration passes at the coarsest level
  bool bc_relax = true;  // iterate the far-field offset shape
  double bc_ring = 0.65;  // ring radius ratio used to sample the shape
  double mass_rel_tol = 5e-3;

  void validate() const;
};

struct SolveInfo {
  int newton_iterations = 0;
  int outer_passes = 0;
  std::vector<double> residual_history;  // max-norm KE residual per iteration
  double final_residual = 0.0;
  double final_mass = 0.0;
  double bc_constant = 0.0;  // calibrated additive constant
  Vec2 minimizer{};          // location of min Phi (discrete, refined)
  double min_phi = 0.0;
  double seconds = 0.0;
};

// Damped Newton solve of log det D^2 Phi + Phi = 0 on [-L,L]^2 with the
// configured Dirichlet data.  Throws SolverError / ConvexityError.
GridPotential solve(const ConvexBody& body, const SolverConfig& cfg, SolveInfo* info = nullptr);

struct ConvergenceRow {
  int N = 0;
  double L = 0.0;
  double max_residual = 0.0;
  double err_vs_oracle = 0.0;  // max over the inner window; NaN without oracle
  double lambda_min = 0.0, lambda_max = 0.0;
  double mass = 0.0;
  double seconds = 0.0;
};

// Solves per config (shared body), comparing against an optional closed-form
// oracle on the inner window |x|_inf <= window.
std::vector<ConvergenceRow> convergence_study(const ConvexBody& body,
                                              std::span<const SolverConfig> configs,
                                              const Potential* oracle, double window,
                                              std::vector<GridPotential>* grids = nullptr);

std::string convergence_csv(std::span<const ConvergenceRow> rows);

// Serial reference twins of the solver's parallel kernels (testing/bench).
namespace detail {
std::vector<double> newton_residual(const GridPotential& g, bool parallel);
double residual_max_norm(const GridPotential& g, bool parallel);
}  // namespace detail

}  // namespace kelab
