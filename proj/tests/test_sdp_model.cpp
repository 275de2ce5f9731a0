#include "rpsdp/error.hpp"
#include "rpsdp/graph.hpp"
#include "rpsdp/ipm_solver.hpp"
#include "rpsdp/linalg.hpp"
#include "rpsdp/relaxations.hpp"
#include "rpsdp/sdp_problem.hpp"
#include "rpsdp/sdpa_format.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <memory>

using namespace rpsdp;
using rpsdp::testing::random_symmetric;
using rpsdp::testing::strictly_feasible_sdp;

namespace {

Graph k3() { return parse_edge_list("3 3\n1 2 1\n1 3 1\n2 3 1"); }

SdpProblem with_bounds(SdpProblem p, const Eigen::VectorXd& center, double radius) {
  std::vector<DualBound> b;
  for (Index i = 0; i < center.size(); ++i) b.push_back({center[i] - radius, center[i] + radius});
  p.dual_bounds = b;
  return p;
}

}  // namespace

TEST_SUITE("sdp-model") {
  TEST_CASE("identity projection keeps the problem") {
    const SdpProblem p = strictly_feasible_sdp(1, 6, 3).problem;
    const auto id = std::make_shared<const Projector>(identity_projector(6));
    const SdpProblem q = project_problem(p, id);
    REQUIRE(q.dim() == 6);
    REQUIRE(q.m() == 3);
    CHECK((q.c.to_dense() - p.c.to_dense()).norm() == 0.0);
    for (Index i = 0; i < 3; ++i) {
      CHECK((q.constraints[i].a.to_dense() - p.constraints[i].a.to_dense()).norm() == 0.0);
      CHECK(q.constraints[i].b == p.constraints[i].b);
    }
    CHECK(q.sense == p.sense);
  }

  TEST_CASE("projected maxcut on K3 uses column outer products") {
    const SdpProblem p = maxcut_sdp(k3());
    const auto P = std::make_shared<const Projector>(sample_sparse_subgaussian(3, 2, 1.0, 5));
    const SdpProblem q = project_problem(p, P);
    REQUIRE(q.dim() == 2);
    REQUIRE(q.m() == 3);
    for (Index i = 0; i < 3; ++i) {
      const Eigen::VectorXd pi = P->column(i);
      CHECK((q.constraints[i].a.to_dense() - pi * pi.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }

  TEST_CASE("projection preserves constraint order and right-hand sides bit for bit") {
    const SdpProblem p = strictly_feasible_sdp(2, 10, 6).problem;
    const auto P = std::make_shared<const Projector>(sample_sparse_subgaussian(10, 4, 0.5, 6));
    const SdpProblem q = project_problem(p, P);
    for (Index i = 0; i < p.m(); ++i) {
      const double a = p.constraints[i].b, b = q.constraints[i].b;
      CHECK(std::memcmp(&a, &b, sizeof a) == 0);
      CHECK((q.constraints[i].a.to_dense() - P->congruence_dense(p.constraints[i].a)).norm() <= 1e-12);
    }
  }

  TEST_CASE("projection rejects a projector of the wrong width") {
    const SdpProblem p = strictly_feasible_sdp(3, 5, 2).problem;
    const auto P = std::make_shared<const Projector>(sample_sparse_subgaussian(6, 3, 1.0, 1));
    CHECK_THROWS_AS(project_problem(p, P), Error);
  }

  TEST_CASE("lifted projected optimum satisfies the original constraints") {
    // n = 30, m = 5, k = 15, gamma = 0.5: over-determined enough that a lift is nontrivial.
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const SdpProblem p = strictly_feasible_sdp(seed, 30, 5).problem;
      const auto P = std::make_shared<const Projector>(sample_sparse_subgaussian(30, 15, 0.5, seed));
      const Solution s = solve(project_problem(p, P));
      REQUIRE(s.status == SolveStatus::Optimal);
      const Solution lifted = lift_solution(*P, s, p);
      const auto r = feasibility_residuals(p, lifted.x);
      CHECK(r.max_equality_violation <= 1e-6);
      CHECK(r.min_eigenvalue >= -1e-8);
      CHECK(lifted.dual_projected_only);
      // Objective identity <C, P^T Y P> = <P C P^T, Y>.
      CHECK(std::abs(lifted.primal_obj - s.primal_obj) <= 1e-8 * (1 + std::abs(s.primal_obj)));
    }
  }

  TEST_CASE("identity lift leaves the solution unchanged") {
    const SdpProblem p = strictly_feasible_sdp(4, 5, 2).problem;
    const Solution s = solve(p);
    const Solution lifted = lift_solution(identity_projector(5), s, p);
    CHECK((lifted.x - s.x).norm() <= 1e-14);
    CHECK(lifted.primal_obj == doctest::Approx(s.primal_obj).epsilon(1e-12));
  }

  TEST_CASE("lambda reformulation requires dual bounds") {
    const SdpProblem p = strictly_feasible_sdp(5, 4, 2).problem;
    try {
      lambda_reformulate(p);
      FAIL("expected missing-dual-bounds");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingDualBounds);
    }
  }

  TEST_CASE("lambda reformulation with no constraints adds no slacks") {
    SdpProblem p;
    p.c = SymMatrix::identity(3);
    p.dual_bounds = std::vector<DualBound>{};
    const SdpProblem e = lambda_reformulate(p).expanded();
    CHECK(e.m() == 0);
    CHECK((!e.linear || e.linear->size() == 0));
    CHECK((e.c.to_dense() - p.c.to_dense()).norm() == 0.0);
  }

  TEST_CASE("lambda slacks vanish when the bounds are inactive") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto inst = strictly_feasible_sdp(seed, 8, 3);
      const Solution orig = solve(inst.problem);
      REQUIRE(orig.status == SolveStatus::Optimal);
      const SdpProblem bounded = with_bounds(inst.problem, orig.y, 10.0);
      const SdpProblem lam = lambda_reformulate(bounded).expanded();
      const Solution s = solve(lam);
      REQUIRE(s.status == SolveStatus::Optimal);
      CHECK(s.x_lin.cwiseAbs().maxCoeff() <= 1e-6);
      CHECK(s.primal_obj == doctest::Approx(orig.primal_obj).epsilon(1e-6));
    }
  }

  TEST_CASE("lambda reformulation keeps a too-small projection solvable") {
    const auto inst = strictly_feasible_sdp(9, 10, 5);
    const Solution orig = solve(inst.problem);
    REQUIRE(orig.status == SolveStatus::Optimal);
    const SdpProblem bounded = with_bounds(inst.problem, orig.y, 5.0);
    const auto P = std::make_shared<const Projector>(sample_sparse_subgaussian(10, 1, 1.0, 2));

    const Solution plain = solve(project_problem(bounded, P));
    CHECK(plain.status != SolveStatus::Optimal);

    const Solution lam = solve(project_problem(lambda_reformulate(bounded).expanded(), P));
    REQUIRE(lam.status == SolveStatus::Optimal);
    CHECK(lam.x_lin.maxCoeff() > 1e-6);
  }

  TEST_CASE("matrix norms") {
    const auto id = matrix_norms(SymMatrix::identity(5));
    CHECK(id.frobenius == doctest::Approx(std::sqrt(5.0)));
    CHECK(id.nuclear == doctest::Approx(5.0));
    CHECK(id.trace == doctest::Approx(5.0));

    const auto d = matrix_norms(SymMatrix::from_entries(2, {{0, 0, 3.0}, {1, 1, -4.0}}));
    CHECK(d.frobenius == doctest::Approx(5.0));
    CHECK(d.nuclear == doctest::Approx(7.0));
    CHECK(d.trace == doctest::Approx(-1.0));
  }

  TEST_CASE("nuclear norm dominates the Frobenius norm and both scale") {
    const CounterRng rng(21);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Eigen::MatrixXd a = random_symmetric(rng, 2 + static_cast<Index>(t % 12), t);
      const auto n1 = matrix_norms(a);
      REQUIRE(n1.nuclear >= n1.frobenius - 1e-10);
      const double alpha = -2.5;
      const auto n2 = matrix_norms(Eigen::MatrixXd(alpha * a));
      REQUIRE(n2.frobenius == doctest::Approx(std::abs(alpha) * n1.frobenius).epsilon(1e-10));
      REQUIRE(n2.nuclear == doctest::Approx(std::abs(alpha) * n1.nuclear).epsilon(1e-10));
    }
  }

  TEST_CASE("feasibility residuals on the maxcut problem") {
    const SdpProblem p = maxcut_sdp(k3());
    const auto at_identity = feasibility_residuals(p, Eigen::MatrixXd::Identity(3, 3));
    CHECK(at_identity.max_equality_violation == 0.0);
    CHECK(at_identity.min_eigenvalue == doctest::Approx(1.0));
    const auto at_zero = feasibility_residuals(p, Eigen::MatrixXd::Zero(3, 3));
    CHECK(at_zero.max_equality_violation == 1.0);
    CHECK(at_zero.min_eigenvalue == doctest::Approx(0.0));
    CHECK_THROWS_AS(feasibility_residuals(p, Eigen::MatrixXd::Zero(4, 4)), Error);
  }

  TEST_CASE("solver output meets the residual contract") {
    const SdpProblem p = strictly_feasible_sdp(31, 12, 6).problem;
    const Solution s = solve(p);
    REQUIRE(s.status == SolveStatus::Optimal);
    const auto r = feasibility_residuals(p, s.x);
    CHECK(r.max_equality_violation <= 1e-6);
    CHECK(r.min_eigenvalue >= -1e-8);
  }

  TEST_CASE("problem text format round-trips exactly") {
    SdpProblem p = strictly_feasible_sdp(8, 7, 4).problem;
    p.sense = Sense::Maximize;
    p.dual_bounds = std::vector<DualBound>{{-1.0, 2.0}, {-0.5, 0.25}, {0.0, 1.0}, {-3.0, 3.0}};
    p.report = {0.75, 0.25};
    const SdpProblem q = from_sdpa_string(to_sdpa_string(p));
    REQUIRE(q.dim() == p.dim());
    REQUIRE(q.m() == p.m());
    CHECK(q.sense == p.sense);
    CHECK((q.c.to_dense() - p.c.to_dense()).norm() == 0.0);
    for (Index i = 0; i < p.m(); ++i) {
      CHECK(q.constraints[i].b == p.constraints[i].b);
      CHECK((q.constraints[i].a.to_dense() - p.constraints[i].a.to_dense()).norm() == 0.0);
    }
    REQUIRE(q.dual_bounds);
    CHECK((*q.dual_bounds)[1].lb == -0.5);
    CHECK(q.report.offset == 0.75);
    CHECK(q.report.scale == 0.25);

    const SdpProblem mc = from_sdpa_string(to_sdpa_string(maxcut_sdp(k3())));
    CHECK(mc.constraints[1].a.structure() == SymMatrix::Structure::DiagonalUnit);
  }

  TEST_CASE("malformed problem text is rejected") {
    CHECK_THROWS_AS(from_sdpa_string("rpsdp-sdp 1\nsense min\ndim x\n"), Error);
    CHECK_THROWS_AS(from_sdpa_string("not a problem"), Error);
  }
}
