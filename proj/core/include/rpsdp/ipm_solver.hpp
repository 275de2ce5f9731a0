#pragma once

#include "rpsdp/constraint_operator.hpp"
#include "rpsdp/sdp_problem.hpp"

#include <functional>
#include <string_view>

namespace rpsdp {

struct IterationInfo {
  int iteration = 0;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  double mu = 0.0;
  double alpha_primal = 0.0;
  double alpha_dual = 0.0;
};

struct SolverOptions {
  double tol_gap = 1e-8;
  double tol_primal = 1e-8;
  double tol_dual = 1e-8;
  int max_iterations = 200;
  double step_fraction = 0.98;
  /// Ray-scaled residual below which an infeasibility certificate is accepted.
  double infeasibility_threshold = 1e-8;
  /// Consecutive iterations the certificate test must hold.
  int infeasibility_patience = 5;
  SchurPath schur_path = SchurPath::Auto;
  /// Drop rows/columns no constraint touches and dependent equality rows.
  bool presolve = true;
  std::function<void(const IterationInfo&)> progress;
  std::function<void(std::string_view)> log;

  void validate() const;
};

/// Primal-dual path following (HKM direction, Mehrotra predictor-corrector,
/// infeasible start). Objectives in the returned Solution use the problem's own
/// sense; y is the dual of the problem as stated.
Solution solve(const SdpProblem& p, const SolverOptions& opts = {});

enum class FeasibilityStatus { Feasible, Infeasible, Indeterminate };

std::string_view to_string(FeasibilityStatus s) noexcept;

struct FeasibilityResult {
  FeasibilityStatus status = FeasibilityStatus::Indeterminate;
  /// Feasible point when status = Feasible.
  Eigen::MatrixXd x;
  /// y with b^T y = 1 and A*(y) negative semidefinite (to tolerance) when Infeasible.
  Eigen::VectorXd certificate;
  Solution solution;
};

/// Residual contract for a point reported as feasible.
inline constexpr double kFeasibleEqualityTolerance = 1e-6;
inline constexpr double kFeasibleEigenTolerance = -1e-8;

/// Solves with the objective replaced by zero. A run that stops without
/// converging is still Feasible when its iterate meets the residual contract.
FeasibilityResult solve_feasibility(const SdpProblem& p, const SolverOptions& opts = {});

}  // namespace rpsdp
