#include "rpsdp/constraint_operator.hpp"
#include "rpsdp/error.hpp"
#include "rpsdp/graph.hpp"
#include "rpsdp/ipm_solver.hpp"
#include "rpsdp/linalg.hpp"
#include "rpsdp/relaxations.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <memory>

using namespace rpsdp;
using rpsdp::testing::strictly_feasible_sdp;

namespace {

Graph k3() { return parse_edge_list("3 3\n1 2 1\n1 3 1\n2 3 1"); }

// A(X) = b is infeasible for X psd iff some y has b^T y = 1 and A*(y) nsd.
void check_certificate(const SdpProblem& p, const Eigen::VectorXd& y, double tol) {
  REQUIRE(y.size() == p.m());
  CHECK(p.rhs().dot(y) == doctest::Approx(1.0).epsilon(1e-8));
  Eigen::MatrixXd aty = Eigen::MatrixXd::Zero(p.dim(), p.dim());
  for (Index i = 0; i < p.m(); ++i) p.constraints[i].a.add_to(aty, y[i]);
  CHECK(symmetric_eigenvalues(aty).maxCoeff() <= tol * (1 + y.norm()));
}

}  // namespace

TEST_SUITE("ipm-solver") {
  TEST_CASE("one by one problem") {
    // min 2x s.t. x = 3, x >= 0.
    SdpProblem p;
    p.c = SymMatrix::from_entries(1, {{0, 0, 2.0}});
    p.constraints.push_back({SymMatrix::identity(1), 3.0});
    const Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.primal_obj == doctest::Approx(6.0).epsilon(1e-7));
    CHECK(s.dual_obj == doctest::Approx(6.0).epsilon(1e-7));
    CHECK(s.x(0, 0) == doctest::Approx(3.0).epsilon(1e-7));
  }

  TEST_CASE("maxcut on the triangle") {
    const Solution s = solve(maxcut_sdp(k3()));
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.primal_obj == doctest::Approx(9.0).epsilon(1e-7));
    CHECK(s.dual_obj == doctest::Approx(9.0).epsilon(1e-7));
    for (Index i = 0; i < 3; ++i) CHECK(std::abs(s.y[i]) == doctest::Approx(3.0).epsilon(1e-5));
    for (Index i = 0; i < 3; ++i)
      for (Index j = i + 1; j < 3; ++j) CHECK(s.x(i, j) == doctest::Approx(-0.5).epsilon(1e-5));
  }

  TEST_CASE("maxcut on a single edge") {
    const Solution s = solve(maxcut_sdp(parse_edge_list("2 1\n1 2 1")));
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(s.primal_obj == doctest::Approx(4.0).epsilon(1e-7));
    const SdpProblem quarter = maxcut_sdp(parse_edge_list("2 1\n1 2 1"), true);
    const Solution q = solve(quarter);
    CHECK(quarter.report.offset + quarter.report.scale * q.primal_obj == doctest::Approx(1.0).epsilon(1e-7));
  }

  TEST_CASE("single two-literal clause") {
    // Three unit vectors at 60 and 120 degrees reach 9/8 expected clauses.
    const SdpProblem p = max2sat_sdp(parse_dimacs_cnf("p cnf 2 1\n1 2 0\n"));
    const Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    CHECK(p.report.offset + p.report.scale * s.primal_obj == doctest::Approx(9.0 / 8.0).epsilon(1e-6));
  }

  TEST_CASE("random strictly feasible instances reach tolerance") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const Index n = 3 + static_cast<Index>(seed % 8);
      const Index m = 1 + static_cast<Index>(seed % 5);
      const auto inst = strictly_feasible_sdp(seed, n, m);
      const Solution s = solve(inst.problem);
      REQUIRE(s.status == SolveStatus::Optimal);
      REQUIRE(s.residuals.primal <= 1e-8);
      REQUIRE(s.residuals.dual <= 1e-8);
      REQUIRE(s.residuals.gap <= 1e-8);
      // Weak duality against the planted pair: b^T y0 <= opt <= <C, X0>.
      const double upper = frobenius_dot(inst.problem.c.to_dense(), inst.x0);
      const double lower = inst.problem.rhs().dot(inst.y0);
      const double slack = 1e-7 * (1 + std::abs(upper));
      REQUIRE(s.primal_obj <= upper + slack);
      REQUIRE(s.dual_obj >= lower - slack);
      REQUIRE(min_eigenvalue(s.x) >= -1e-9);
      REQUIRE(min_eigenvalue(s.s) >= -1e-9);
    }
  }

  TEST_CASE("solving is deterministic") {
    const SdpProblem p = strictly_feasible_sdp(17, 9, 4).problem;
    const Solution a = solve(p), b = solve(p);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(a.iterations == b.iterations);
  }

  TEST_CASE("structured and dense schur paths agree") {
    const Graph g = gen_gnp(25, 0.3, 4);
    const auto P = std::make_shared<const Projector>(sample_sparse_subgaussian(25, 22, 0.4, 3));
    for (const SdpProblem& p : {maxcut_sdp(g), project_problem(maxcut_sdp(g), P), strictly_feasible_sdp(5, 10, 6).problem}) {
      SolverOptions a, b;
      a.schur_path = SchurPath::Structured;
      b.schur_path = SchurPath::Dense;
      const Solution sa = solve(p, a), sb = solve(p, b);
      REQUIRE(sa.status == SolveStatus::Optimal);
      REQUIRE(sb.status == SolveStatus::Optimal);
      CHECK(sa.primal_obj == doctest::Approx(sb.primal_obj).epsilon(1e-7));
    }
  }

  TEST_CASE("schur complement matches its dense definition") {
    const auto inst = strictly_feasible_sdp(6, 7, 4);
    std::vector<const SymMatrix*> mats;
    for (const auto& c : inst.problem.constraints) mats.push_back(&c.a);
    const ConstraintOperator structured = ConstraintOperator::build(mats, 7, SchurPath::Structured);
    const ConstraintOperator dense = ConstraintOperator::build(mats, 7, SchurPath::Dense);
    const Eigen::MatrixXd x = inst.x0, sinv = inst.s0.inverse();
    Eigen::MatrixXd want(4, 4);
    for (Index i = 0; i < 4; ++i)
      for (Index j = 0; j < 4; ++j)
        want(i, j) = (mats[i]->to_dense() * x * mats[j]->to_dense() * sinv).trace();
    CHECK((structured.schur(x, sinv) - want).norm() <= 1e-10 * want.norm());
    CHECK((dense.schur(x, sinv) - want).norm() <= 1e-10 * want.norm());

    const Eigen::VectorXd y = Eigen::VectorXd::LinSpaced(4, -1.0, 2.0);
    CHECK(structured.apply(x).dot(y) == doctest::Approx(frobenius_dot(structured.adjoint(y), x)).epsilon(1e-12));
  }

  TEST_CASE("unbounded problem reports a primal ray") {
    // min -tr(X) s.t. X_01 = 0.
    SdpProblem p;
    p.c = SymMatrix::from_dense(-Eigen::MatrixXd::Identity(2, 2));
    p.constraints.push_back({SymMatrix::from_entries(2, {{0, 1, 0.5}}), 0.0});
    const Solution s = solve(p);
    CHECK(s.status == SolveStatus::DualInfeasible);
    REQUIRE(s.ray_x.rows() == 2);
    CHECK(frobenius_dot(p.c.to_dense(), s.ray_x) < 0.0);
    CHECK(min_eigenvalue(s.ray_x) >= -1e-8 * s.ray_x.norm());
  }

  TEST_CASE("iteration limit is reported") {
    SolverOptions opts;
    opts.max_iterations = 1;
    const Solution s = solve(strictly_feasible_sdp(2, 8, 3).problem, opts);
    CHECK(s.status == SolveStatus::MaxIterations);
    CHECK(s.iterations == 1);
  }

  TEST_CASE("invalid options are rejected") {
    const SdpProblem p = strictly_feasible_sdp(2, 4, 2).problem;
    SolverOptions o;
    o.tol_gap = 0.0;
    CHECK_THROWS_AS(solve(p, o), Error);
    o = {};
    o.step_fraction = 1.0;
    CHECK_THROWS_AS(solve(p, o), Error);
  }

  TEST_CASE("diagonal constraints alone are feasible") {
    const SdpProblem p = maxcut_sdp(gen_gnp(20, 0.5, 1));
    const FeasibilityResult r = solve_feasibility(p);
    REQUIRE(r.status == FeasibilityStatus::Feasible);
    const auto res = feasibility_residuals(p, r.x);
    CHECK(res.max_equality_violation <= 1e-6);
    CHECK(res.min_eigenvalue >= -1e-8);
  }

  TEST_CASE("negative trace is infeasible with a certificate") {
    SdpProblem p;
    p.c = SymMatrix::zero(3);
    p.constraints.push_back({SymMatrix::identity(3), -1.0});
    const FeasibilityResult r = solve_feasibility(p);
    REQUIRE(r.status == FeasibilityStatus::Infeasible);
    check_certificate(p, r.certificate, 1e-7);
  }

  TEST_CASE("all four clauses over two variables are infeasible") {
    const SdpProblem p = gap2sat_sdp(parse_dimacs_cnf("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"));
    const FeasibilityResult r = solve_feasibility(p);
    REQUIRE(r.status == FeasibilityStatus::Infeasible);
    check_certificate(p, r.certificate, 1e-7);
  }

  TEST_CASE("satisfiable formula gives a feasible gap relaxation") {
    std::vector<bool> planted;
    const CnfFormula f = gen_planted_2sat(30, 1.0, 3, &planted);
    const SdpProblem p = gap2sat_sdp(f);
    const FeasibilityResult r = solve_feasibility(p);
    REQUIRE(r.status == FeasibilityStatus::Feasible);
    // The planted lift is itself a witness.
    CHECK(feasibility_residuals(p, assignment_lift(planted)).max_equality_violation <= 1e-12);
  }

  TEST_CASE("progress callback sees every iteration") {
    SolverOptions o;
    int calls = 0, first = -1;
    o.progress = [&](const IterationInfo& info) {
      if (calls++ == 0) first = info.iteration;
    };
    const Solution s = solve(strictly_feasible_sdp(3, 6, 2).problem, o);
    // The starting point is reported as iteration 0.
    CHECK(first == 0);
    CHECK(calls == s.iterations + 1);
  }
}
