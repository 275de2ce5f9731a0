#pragma once

#include "rpsdp/sym_matrix.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rpsdp {

/// Undirected weighted edge between 0-based vertices u < v.
struct WeightedEdge {
  Index u = 0;
  Index v = 0;
  double w = 1.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

struct Graph {
  Index n = 0;
  std::vector<WeightedEdge> edges;
  std::string name;

  bool weighted() const noexcept;
  /// Sorts edges by (u, v) and validates the invariants.
  void canonicalize();
  bool has_edge(Index u, Index v) const;
};

/// Literal = +-(1-based variable index).
struct Clause {
  std::array<int, 2> lits{0, 0};
  int size = 0;
};

struct CnfFormula {
  int n_vars = 0;
  std::vector<Clause> clauses;
  std::string name;

  bool satisfied_by(const std::vector<bool>& assignment) const;  // assignment[v-1]
  int count_satisfied(const std::vector<bool>& assignment) const;
};

/// "n m" header then m lines "u v [w]" (1-based). LF or CRLF.
Graph parse_edge_list(std::string_view text);
std::string write_edge_list(const Graph& g);
/// DIMACS CNF restricted to clauses of at most two literals.
CnfFormula parse_dimacs_cnf(std::string_view text);
std::string write_dimacs_cnf(const CnfFormula& f);

enum class EdgeWeights { Unit, PlusMinusOne };

Graph gen_gnp(Index n, double p, std::uint64_t seed, EdgeWeights weights = EdgeWeights::Unit);
Graph generalized_petersen(Index v, Index k);
Graph helm(Index v);
/// Cycle of length v*k plus a hub adjacent to v equally spaced cycle vertices.
Graph jahangir(Index v, Index k);
/// Rejects weighted graphs.
Graph complement(const Graph& g);

enum class NamedFamily { GeneralizedPetersen, Helm, Jahangir };

struct NamedGraphSpec {
  NamedFamily family = NamedFamily::GeneralizedPetersen;
  Index v = 0;
  Index k = 0;
};

Graph gen_named_complement(const NamedGraphSpec& spec);

/// Uniform random 2-SAT: round(c*n) clauses over two distinct variables with random signs.
CnfFormula gen_urand(int n_vars, double ratio, std::uint64_t seed);
/// Plants a random assignment and keeps drawing clauses, discarding those it violates.
CnfFormula gen_planted_2sat(int n_vars, double ratio, std::uint64_t seed, std::vector<bool>* planted = nullptr);

/// Brute-force independence number (n <= ~25).
Index stability_number(const Graph& g);
/// Weight of the cut induced by sides (true/false).
double cut_weight(const Graph& g, const std::vector<bool>& side);

}  // namespace rpsdp
