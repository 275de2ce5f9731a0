// Reference optima frozen from an independent conic solver (Clarabel at 1e-10,
// cross-checked with CVXOPT); see tests/oracles/oracle_values.py.
#include "rpsdp/graph.hpp"
#include "rpsdp/ipm_solver.hpp"
#include "rpsdp/relaxations.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace rpsdp;
using rpsdp::testing::data_path;
using rpsdp::testing::read_file;

namespace {

double value_of(const SdpProblem& p) {
  const Solution s = solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  return p.report.offset + p.report.scale * s.primal_obj;
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("weighted maxcut with negative weights") {
    const Graph g = parse_edge_list(read_file(data_path("w8.txt")));
    const double v = value_of(maxcut_sdp(g));
    CHECK(v == doctest::Approx(49.13969524733665).epsilon(1e-6));
    // Brute-force best cut is 12; the relaxation bounds 4 * 12 from above.
    CHECK(v >= 48.0);
  }

  TEST_CASE("petersen maxcut") {
    CHECK(value_of(maxcut_sdp(generalized_petersen(5, 2))) == doctest::Approx(50.0).epsilon(1e-6));
  }

  TEST_CASE("max2sat with a unit clause") {
    const CnfFormula f = parse_dimacs_cnf(read_file(data_path("f6.cnf")));
    const double v = value_of(max2sat_sdp(f));
    CHECK(v == doctest::Approx(10.03766421807617).epsilon(1e-6));
    CHECK(v >= 10.0);
  }

  TEST_CASE("level two bound on the five cycle") {
    const Graph g = parse_edge_list(read_file(data_path("c5.txt")));
    const SdpProblem p = stable_set_lasserre2(g);
    CHECK(p.dim() == 16);
    CHECK(value_of(p) == doctest::Approx(2.0).epsilon(1e-6));
  }

  TEST_CASE("level two bound on the petersen graph") {
    const SdpProblem p = stable_set_lasserre2(generalized_petersen(5, 2));
    CHECK(p.dim() == 56);
    CHECK(value_of(p) == doctest::Approx(4.0).epsilon(1e-6));
  }
}
