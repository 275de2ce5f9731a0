#include "rpsdp/error.hpp"
#include "rpsdp/graph.hpp"
#include "rpsdp/ipm_solver.hpp"
#include "rpsdp/relaxations.hpp"
#include "rpsdp/rng.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

using namespace rpsdp;
using rpsdp::testing::data_path;
using rpsdp::testing::read_file;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

double reported(const SdpProblem& p, double obj) { return p.report.offset + p.report.scale * obj; }

double solved_value(const SdpProblem& p) {
  const Solution s = solve(p);
  REQUIRE(s.status == SolveStatus::Optimal);
  return reported(p, s.primal_obj);
}

std::vector<bool> random_bits(const CounterRng& rng, Index n, std::uint64_t stream) {
  std::vector<bool> b(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = rng.uniform(stream, static_cast<std::uint64_t>(i)) < 0.5;
  return b;
}

Graph path_graph(Index n) {
  Graph g;
  g.n = n;
  for (Index i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1.0});
  return g;
}

Graph cycle_graph(Index n) {
  Graph g = path_graph(n);
  g.edges.push_back({0, n - 1, 1.0});
  g.canonicalize();
  return g;
}

}  // namespace

TEST_SUITE("relaxations") {
  TEST_CASE("edge list parsing") {
    const Graph k3 = parse_edge_list("3 3\n1 2 1\n1 3 1\n2 3 1");
    CHECK(k3.n == 3);
    CHECK(k3.edges.size() == 3);
    const Graph one = parse_edge_list("2 1\r\n2 1 5\r\n");
    REQUIRE(one.edges.size() == 1);
    CHECK(one.edges[0] == WeightedEdge{0, 1, 5.0});
    const Graph unweighted = parse_edge_list("3 1\n1 3\n");
    CHECK(unweighted.edges[0].w == 1.0);

    const Graph w8 = parse_edge_list(read_file(data_path("w8.txt")));
    CHECK(w8.n == 8);
    CHECK(w8.edges.size() == 12);
    CHECK(w8.weighted());
    CHECK(parse_edge_list(write_edge_list(w8)).edges == w8.edges);
  }

  TEST_CASE("edge list errors") {
    CHECK(kind_of([] { parse_edge_list(""); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_edge_list("x y\n"); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_edge_list("3 2\n1 2\n"); }) == ErrorKind::MalformedLine);
    CHECK(kind_of([] { parse_edge_list("3 1\n1 two\n"); }) == ErrorKind::MalformedLine);
    CHECK(kind_of([] { parse_edge_list("3 1\n1 4\n"); }) == ErrorKind::VertexOutOfRange);
    CHECK(kind_of([] { parse_edge_list("3 1\n0 2\n"); }) == ErrorKind::VertexOutOfRange);
    CHECK(kind_of([] { parse_edge_list("3 2\n1 2\n2 1\n"); }) == ErrorKind::DuplicateEdge);
    CHECK(kind_of([] { parse_edge_list("3 1\n2 2\n"); }) == ErrorKind::MalformedLine);
  }

  TEST_CASE("cnf parsing") {
    const CnfFormula one = parse_dimacs_cnf("p cnf 2 1\n1 2 0\n");
    REQUIRE(one.clauses.size() == 1);
    CHECK(one.clauses[0].size == 2);
    const CnfFormula four = parse_dimacs_cnf("c comment\np cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n");
    CHECK(four.clauses.size() == 4);
    for (bool a : {false, true})
      for (bool b : {false, true}) CHECK(!four.satisfied_by({a, b}));

    const CnfFormula f6 = parse_dimacs_cnf(read_file(data_path("f6.cnf")));
    CHECK(f6.n_vars == 6);
    CHECK(f6.clauses.size() == 10);
    const CnfFormula again = parse_dimacs_cnf(write_dimacs_cnf(f6));
    REQUIRE(again.clauses.size() == f6.clauses.size());
    for (std::size_t i = 0; i < f6.clauses.size(); ++i) CHECK(again.clauses[i].lits == f6.clauses[i].lits);
  }

  TEST_CASE("cnf errors") {
    CHECK(kind_of([] { parse_dimacs_cnf("p cnf 3 1\n1 2 3 0\n"); }) == ErrorKind::ClauseTooLong);
    CHECK(kind_of([] { parse_dimacs_cnf("1 2 0\n"); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_dimacs_cnf("p dnf 2 1\n1 2 0\n"); }) == ErrorKind::MalformedHeader);
    CHECK(kind_of([] { parse_dimacs_cnf("p cnf 2 2\n1 2 0\n"); }) == ErrorKind::MalformedHeader);
  }

  TEST_CASE("gnp generator") {
    CHECK(gen_gnp(10, 0.0, 1).edges.empty());
    CHECK(gen_gnp(4, 1.0, 1).edges.size() == 6);
    const Graph g = gen_gnp(800, 0.06, 1);
    const double mean = 0.06 * 800 * 799 / 2;
    const double sd = std::sqrt(mean * 0.94);
    CHECK(std::abs(static_cast<double>(g.edges.size()) - mean) <= 3 * sd);
    CHECK(gen_gnp(50, 0.3, 9).edges == gen_gnp(50, 0.3, 9).edges);

    const Graph pm = gen_gnp(100, 0.2, 2, EdgeWeights::PlusMinusOne);
    int neg = 0;
    for (const auto& e : pm.edges) {
      REQUIRE(std::abs(e.w) == 1.0);
      neg += e.w < 0;
    }
    CHECK(neg > 0);
    CHECK(neg < static_cast<int>(pm.edges.size()));
    CHECK(kind_of([] { gen_gnp(5, 1.5, 1); }) == ErrorKind::InvalidParameters);
  }

  TEST_CASE("named base graphs") {
    CHECK(generalized_petersen(5, 2).n == 10);
    CHECK(generalized_petersen(5, 2).edges.size() == 15);
    CHECK(helm(21).n == 43);
    CHECK(helm(21).edges.size() == 63);
    CHECK(jahangir(17, 2).n == 35);
    CHECK(jahangir(17, 2).edges.size() == 51);
    CHECK(stability_number(generalized_petersen(5, 2)) == 4);
    CHECK(kind_of([] { generalized_petersen(6, 3); }) == ErrorKind::InvalidParameters);
    CHECK(kind_of([] { helm(2); }) == ErrorKind::InvalidParameters);
    CHECK(kind_of([] { jahangir(2, 1); }) == ErrorKind::InvalidParameters);
  }

  TEST_CASE("named complements match the published sizes") {
    const Graph p = gen_named_complement({NamedFamily::GeneralizedPetersen, 20, 2});
    const Graph h = gen_named_complement({NamedFamily::Helm, 21, 0});
    const Graph j = gen_named_complement({NamedFamily::Jahangir, 17, 2});
    CHECK(p.n == 40);
    CHECK(p.edges.size() == 720);
    CHECK(h.n == 43);
    CHECK(h.edges.size() == 840);
    CHECK(j.n == 35);
    CHECK(j.edges.size() == 544);
  }

  TEST_CASE("complement") {
    CHECK(complement(parse_edge_list("3 3\n1 2\n1 3\n2 3")).edges.empty());
    CHECK(complement(parse_edge_list("4 0\n")).edges.size() == 6);
    for (std::uint64_t s = 1; s <= 50; ++s) {
      const Graph g = gen_gnp(4 + static_cast<Index>(s % 20), 0.4, s);
      REQUIRE(complement(complement(g)).edges == g.edges);
    }
    CHECK(kind_of([] { complement(parse_edge_list("2 1\n1 2 3")); }) == ErrorKind::WeightedInput);
  }

  TEST_CASE("random 2-SAT generators") {
    const CnfFormula u = gen_urand(1000, 1.2, 3);
    CHECK(u.n_vars == 1000);
    CHECK(u.clauses.size() == 1200);
    for (const auto& c : u.clauses) {
      REQUIRE(c.size == 2);
      REQUIRE(std::abs(c.lits[0]) != std::abs(c.lits[1]));
    }
    std::vector<bool> planted;
    const CnfFormula p = gen_planted_2sat(200, 2.0, 5, &planted);
    CHECK(p.clauses.size() == 400);
    CHECK(p.satisfied_by(planted));
  }

  TEST_CASE("maxcut relaxation structure and values") {
    const Graph g = parse_edge_list(read_file(data_path("w8.txt")));
    const SdpProblem p = maxcut_sdp(g);
    CHECK(p.sense == Sense::Maximize);
    CHECK(p.m() == 8);
    for (const auto& c : p.constraints) {
      CHECK(c.b == 1.0);
      CHECK(c.a.structure() == SymMatrix::Structure::DiagonalUnit);
    }
    const Eigen::MatrixXd lap = p.c.to_dense();
    CHECK(lap.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-14);

    CHECK(solved_value(maxcut_sdp(parse_edge_list("3 0\n"))) == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(solved_value(maxcut_sdp(parse_edge_list("3 3\n1 2\n1 3\n2 3"), true)) == doctest::Approx(2.25).epsilon(1e-7));
  }

  TEST_CASE("laplacian quadratic form counts the cut") {
    const Graph g = gen_gnp(30, 0.3, 7, EdgeWeights::PlusMinusOne);
    const Eigen::MatrixXd lap = maxcut_sdp(g).c.to_dense();
    const CounterRng rng(8);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const std::vector<bool> side = random_bits(rng, g.n, t);
      Eigen::VectorXd x(g.n);
      for (Index i = 0; i < g.n; ++i) x[i] = side[static_cast<std::size_t>(i)] ? 1.0 : -1.0;
      REQUIRE(x.dot(lap * x) / 4 == doctest::Approx(cut_weight(g, side)).epsilon(1e-9));
    }
  }

  TEST_CASE("max2sat relaxation counts satisfied clauses on lifted assignments") {
    const CnfFormula f = gen_urand(15, 2.0, 4);
    CnfFormula with_units = f;
    with_units.clauses.push_back(Clause{{-3, 0}, 1});
    with_units.clauses.push_back(Clause{{7, 0}, 1});
    const SdpProblem p = max2sat_sdp(with_units);
    CHECK(p.sense == Sense::Maximize);
    CHECK(p.dim() == 16);
    CHECK(p.m() == 16);
    const CounterRng rng(5);
    for (std::uint64_t t = 0; t < 100; ++t) {
      const std::vector<bool> a = random_bits(rng, 15, t);
      const double v = reported(p, objective_value(p, assignment_lift(a)));
      REQUIRE(v == doctest::Approx(static_cast<double>(with_units.count_satisfied(a))).epsilon(1e-12));
    }
  }

  TEST_CASE("max2sat relaxation values") {
    CHECK(solved_value(max2sat_sdp(parse_dimacs_cnf("p cnf 2 0\n"))) == doctest::Approx(0.0).epsilon(1e-7));
    const SdpProblem unsat = max2sat_sdp(parse_dimacs_cnf("p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n"));
    CHECK(unsat.c.to_dense().cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(solved_value(unsat) == doctest::Approx(3.0).epsilon(1e-7));
  }

  TEST_CASE("gap relaxation accepts satisfying lifts") {
    for (std::uint64_t s = 1; s <= 20; ++s) {
      std::vector<bool> planted;
      const CnfFormula f = gen_planted_2sat(40, 1.5, s, &planted);
      const SdpProblem p = gap2sat_sdp(f);
      CHECK(p.c.frobenius_norm() == 0.0);
      REQUIRE(feasibility_residuals(p, assignment_lift(planted)).max_equality_violation <= 1e-12);
    }
    const SdpProblem one = gap2sat_sdp(parse_dimacs_cnf("p cnf 2 1\n1 2 0\n"));
    CHECK(feasibility_residuals(one, assignment_lift({true, true})).max_equality_violation == 0.0);
    CHECK(feasibility_residuals(one, assignment_lift({false, false})).max_equality_violation > 0.5);
  }

  TEST_CASE("assignment lift is a rank one sign matrix") {
    const Eigen::MatrixXd x = assignment_lift({true, false, true});
    CHECK(x.rows() == 4);
    CHECK(x(0, 0) == 1.0);
    CHECK(x(0, 2) == -1.0);
    CHECK(x(1, 2) == -1.0);
    CHECK(x(1, 3) == 1.0);
    CHECK(symmetric_eigenvalues(x).maxCoeff() == doctest::Approx(4.0));
  }

  TEST_CASE("lasserre matrix size") {
    for (Index n = 1; n <= 12; ++n) {
      const Graph g = gen_gnp(n, 0.3, static_cast<std::uint64_t>(n));
      REQUIRE(stable_set_lasserre2(g).dim() == 1 + n + n * (n - 1) / 2);
      REQUIRE(static_cast<Index>(lasserre2_monomials(n).size()) == 1 + n + n * (n - 1) / 2);
    }
    CHECK(stable_set_lasserre2(gen_named_complement({NamedFamily::GeneralizedPetersen, 20, 2})).dim() == 821);
    CHECK(stable_set_lasserre2(gen_named_complement({NamedFamily::Helm, 21, 0})).dim() == 947);
    CHECK(stable_set_lasserre2(gen_named_complement({NamedFamily::Jahangir, 17, 2})).dim() == 631);
    CHECK(kind_of([] { stable_set_lasserre2(parse_edge_list("2 1\n1 2 2")); }) == ErrorKind::WeightedInput);
  }

  TEST_CASE("lasserre bound on tiny graphs") {
    CHECK(solved_value(stable_set_lasserre2(parse_edge_list("3 0\n"))) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(solved_value(stable_set_lasserre2(parse_edge_list("3 3\n1 2\n1 3\n2 3"))) == doctest::Approx(1.0).epsilon(1e-6));
  }

  TEST_CASE("lasserre bound dominates the stability number") {
    for (std::uint64_t s = 1; s <= 6; ++s) {
      const Graph g = gen_gnp(5 + static_cast<Index>(s), 0.35, 40 + s);
      REQUIRE(solved_value(stable_set_lasserre2(g)) >= static_cast<double>(stability_number(g)) - 1e-6);
    }
  }

  TEST_CASE("lasserre bound is exact on even paths and cycles") {
    for (Index n : {4, 6, 8}) {
      CHECK(solved_value(stable_set_lasserre2(path_graph(n))) == doctest::Approx(static_cast<double>(n / 2)).epsilon(1e-6));
      CHECK(solved_value(stable_set_lasserre2(cycle_graph(n))) == doctest::Approx(static_cast<double>(n / 2)).epsilon(1e-6));
    }
  }
}
