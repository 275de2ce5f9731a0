#include "rpsdp/sdp_problem.hpp"

#include "rpsdp/error.hpp"

#include <cmath>
#include <string>

namespace rpsdp {

std::string_view to_string(SolveStatus s) noexcept {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::PrimalInfeasible: return "primal-infeasible";
    case SolveStatus::DualInfeasible: return "dual-infeasible";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::NumericalTrouble: return "numerical-trouble";
  }
  return "unknown";
}

std::string_view to_string(Sense s) noexcept { return s == Sense::Minimize ? "min" : "max"; }

Eigen::VectorXd SdpProblem::rhs() const {
  Eigen::VectorXd b(m());
  for (Index i = 0; i < m(); ++i) b[i] = constraints[static_cast<std::size_t>(i)].b;
  return b;
}

void SdpProblem::validate() const {
  if (c.dim() < 1) throw Error(ErrorKind::InvalidDimension, "objective matrix is empty");
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    if (constraints[i].a.dim() != c.dim())
      throw Error(ErrorKind::DimensionMismatch, "constraint " + std::to_string(i) + " has the wrong dimension");
    if (!std::isfinite(constraints[i].b)) throw Error(ErrorKind::InvalidMatrix, "non-finite right-hand side");
  }
  if (dual_bounds) {
    if (dual_bounds->size() != constraints.size())
      throw Error(ErrorKind::DimensionMismatch, "dual bound count differs from constraint count");
    for (const DualBound& d : *dual_bounds)
      if (!(d.lb <= d.ub)) throw Error(ErrorKind::InvalidParameters, "dual bound with lb > ub");
  }
  if (linear) {
    if (linear->coeffs.rows() != m() || linear->coeffs.cols() != linear->size())
      throw Error(ErrorKind::DimensionMismatch, "linear block shape mismatch");
  }
}

LambdaProblem lambda_reformulate(const SdpProblem& p) {
  if (!p.dual_bounds) throw Error(ErrorKind::MissingDualBounds, "lambda reformulation needs dual bounds");
  p.validate();
  for (const DualBound& d : *p.dual_bounds)
    if (!std::isfinite(d.lb) || !std::isfinite(d.ub))
      throw Error(ErrorKind::MissingDualBounds, "dual bounds must be finite");
  if (p.linear) throw Error(ErrorKind::InvalidParameters, "problem already carries a linear block");
  return LambdaProblem{p, *p.dual_bounds};
}

SdpProblem LambdaProblem::expanded() const {
  SdpProblem out = base;
  const Index m = base.m();
  if (m == 0) return out;
  LinearBlock lin;
  lin.cost.resize(2 * m);
  std::vector<Eigen::Triplet<double, Index>> trips;
  trips.reserve(static_cast<std::size_t>(2 * m));
  for (Index i = 0; i < m; ++i) {
    const DualBound& d = bounds[static_cast<std::size_t>(i)];
    // Minimize: + ub lam_up - lb lam_lo. Maximize: + lb lam_up - ub lam_lo.
    if (base.sense == Sense::Minimize) {
      lin.cost[i] = d.ub;
      lin.cost[m + i] = -d.lb;
    } else {
      lin.cost[i] = d.lb;
      lin.cost[m + i] = -d.ub;
    }
    trips.emplace_back(i, i, 1.0);
    trips.emplace_back(i, m + i, -1.0);
  }
  lin.coeffs.resize(m, 2 * m);
  lin.coeffs.setFromTriplets(trips.begin(), trips.end());
  out.linear = std::move(lin);
  return out;
}

SdpProblem project_problem(const SdpProblem& p, std::shared_ptr<const Projector> projector) {
  if (!projector) throw Error(ErrorKind::InvalidConfig, "null projector");
  if (projector->n() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "projector n differs from problem dimension");
  if (projector->kind() == ProjectorKind::Identity) return p;
  SdpProblem out;
  out.sense = p.sense;
  out.c = congruence(*projector, p.c);
  out.constraints.reserve(p.constraints.size());
  for (const Constraint& con : p.constraints)
    out.constraints.push_back({SymMatrix::congruence_view(projector, con.a), con.b});
  out.dual_bounds = p.dual_bounds;
  out.linear = p.linear;
  out.report = p.report;
  out.name = p.name;
  return out;
}

Eigen::VectorXd apply_constraints(const SdpProblem& p, const Eigen::MatrixXd& x, const Eigen::VectorXd& x_lin) {
  if (x.rows() != p.dim() || x.cols() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "X has the wrong dimension");
  Eigen::VectorXd ax(p.m());
  for (Index i = 0; i < p.m(); ++i) ax[i] = p.constraints[static_cast<std::size_t>(i)].a.dot(x);
  if (p.linear && x_lin.size() > 0) {
    if (x_lin.size() != p.linear->size()) throw Error(ErrorKind::DimensionMismatch, "linear variable length mismatch");
    ax += p.linear->coeffs * x_lin;
  }
  return ax;
}

double objective_value(const SdpProblem& p, const Eigen::MatrixXd& x, const Eigen::VectorXd& x_lin) {
  double v = p.c.dot(x);
  if (p.linear && x_lin.size() == p.linear->size()) v += p.linear->cost.dot(x_lin);
  return v;
}

Solution lift_solution(const Projector& projector, const Solution& s, const SdpProblem& original) {
  if (s.x.rows() != projector.k()) throw Error(ErrorKind::DimensionMismatch, "solution dimension differs from projector k");
  if (original.dim() != projector.n()) throw Error(ErrorKind::DimensionMismatch, "original dimension differs from projector n");
  Solution out = s;
  if (projector.kind() == ProjectorKind::Identity) return out;
  out.x = projector.lift_dense(s.x);
  out.s.resize(0, 0);
  out.dual_projected_only = true;
  out.primal_obj = objective_value(original, out.x, out.x_lin);
  if (s.ray_x.size() > 0) out.ray_x = projector.lift_dense(s.ray_x);
  return out;
}

FeasibilityResiduals feasibility_residuals(const SdpProblem& p, const Eigen::MatrixXd& x, const Eigen::VectorXd& x_lin) {
  FeasibilityResiduals r;
  const Eigen::VectorXd ax = apply_constraints(p, x, x_lin);
  r.max_equality_violation = p.m() > 0 ? (ax - p.rhs()).cwiseAbs().maxCoeff() : 0.0;
  r.min_eigenvalue = min_eigenvalue(x);
  if (p.linear && x_lin.size() > 0) r.min_eigenvalue = std::min(r.min_eigenvalue, x_lin.minCoeff());
  return r;
}

FeasibilityResiduals feasibility_residuals(const SdpProblem& p, const SymMatrix& x) {
  if (x.dim() != p.dim()) throw Error(ErrorKind::DimensionMismatch, "X has the wrong dimension");
  return feasibility_residuals(p, x.to_dense());
}

}  // namespace rpsdp
