#pragma once

#include "rpsdp/linalg.hpp"
#include "rpsdp/projector.hpp"
#include "rpsdp/sym_matrix.hpp"

#include <Eigen/Sparse>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rpsdp {

enum class Sense { Minimize, Maximize };

struct Constraint {
  SymMatrix a;
  double b = 0.0;
};

struct DualBound {
  double lb = 0.0;
  double ub = 0.0;
};

/// Nonnegative linear variables x_lin >= 0 entering the constraints as
/// A(X) + coeffs * x_lin = b and the objective as cost^T x_lin.
struct LinearBlock {
  Eigen::VectorXd cost;
  Eigen::SparseMatrix<double, Eigen::ColMajor, Index> coeffs;  // m x p

  Index size() const noexcept { return cost.size(); }
};

/// Reported value = offset + scale * objective. Keeps constants such as the
/// clause offset of MAX-2-SAT out of the optimization data.
struct ReportTransform {
  double offset = 0.0;
  double scale = 1.0;

  double apply(double objective) const noexcept { return offset + scale * objective; }
};

struct SdpProblem {
  Sense sense = Sense::Minimize;
  SymMatrix c;
  std::vector<Constraint> constraints;
  std::optional<std::vector<DualBound>> dual_bounds;
  std::optional<LinearBlock> linear;
  ReportTransform report;
  std::string name;

  Index dim() const noexcept { return c.dim(); }
  Index m() const noexcept { return static_cast<Index>(constraints.size()); }
  Eigen::VectorXd rhs() const;

  /// Throws DimensionMismatch / InvalidParameters on inconsistent data.
  void validate() const;
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, MaxIterations, NumericalTrouble };

std::string_view to_string(SolveStatus s) noexcept;
std::string_view to_string(Sense s) noexcept;

struct Residuals {
  double primal = 0.0;  // ||A(X) - b|| / (1 + ||b||)
  double dual = 0.0;    // ||A*(y) + S - C||_F / (1 + ||C||_F), sense-adjusted
  double gap = 0.0;     // |p - d| / (1 + |p| + |d|)
};

struct Solution {
  SolveStatus status = SolveStatus::NumericalTrouble;
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  Eigen::MatrixXd s;
  Eigen::VectorXd x_lin;
  Eigen::VectorXd s_lin;
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  Residuals residuals;
  int iterations = 0;
  double wall_time_seconds = 0.0;
  /// Set after lifting: y certifies the projected dual only.
  bool dual_projected_only = false;
  /// Improving ray. PrimalInfeasible: y with b^T y > 0 and -A*(y) psd (to tolerance).
  /// DualInfeasible: stored in `ray_x`.
  Eigen::VectorXd certificate;
  Eigen::MatrixXd ray_x;
  /// Constraint indices removed by the dependency presolve.
  std::vector<Index> dropped_constraints;
};

/// lambda-reformulation: every constraint gains (lam_up_i, lam_lo_i) >= 0 with
/// A(X) + lam_up - lam_lo = b, penalized through the dual bounds.
struct LambdaProblem {
  SdpProblem base;
  std::vector<DualBound> bounds;

  /// The expanded SDP with a 2m-variable linear block (lam_up first, then lam_lo).
  SdpProblem expanded() const;
};

LambdaProblem lambda_reformulate(const SdpProblem& p);

/// Constraint matrices become congruence views sharing `projector`; the objective
/// is materialized. b, sense, bounds and linear block carry over unchanged.
SdpProblem project_problem(const SdpProblem& p, std::shared_ptr<const Projector> projector);

/// Lifts X to P^T X P and re-evaluates the objective on `original`.
Solution lift_solution(const Projector& projector, const Solution& s, const SdpProblem& original);

struct FeasibilityResiduals {
  double max_equality_violation = 0.0;
  double min_eigenvalue = 0.0;
};

FeasibilityResiduals feasibility_residuals(const SdpProblem& p, const Eigen::MatrixXd& x,
                                           const Eigen::VectorXd& x_lin = {});
FeasibilityResiduals feasibility_residuals(const SdpProblem& p, const SymMatrix& x);

/// A(X) (+ coeffs x_lin when a linear block is present).
Eigen::VectorXd apply_constraints(const SdpProblem& p, const Eigen::MatrixXd& x, const Eigen::VectorXd& x_lin = {});
/// <C, X> (+ cost^T x_lin).
double objective_value(const SdpProblem& p, const Eigen::MatrixXd& x, const Eigen::VectorXd& x_lin = {});

}  // namespace rpsdp
