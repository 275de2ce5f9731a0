#include "rpsdp/relaxations.hpp"

#include "rpsdp/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace rpsdp {

SdpProblem maxcut_sdp(const Graph& g, bool quarter_scale) {
  if (g.n < 1) throw Error(ErrorKind::InvalidDimension, "graph has no vertices");
  std::vector<Entry> lap;
  lap.reserve(g.edges.size() + static_cast<std::size_t>(g.n));
  std::vector<double> deg(static_cast<std::size_t>(g.n), 0.0);
  for (const WeightedEdge& e : g.edges) {
    lap.push_back({e.u, e.v, -e.w});
    deg[static_cast<std::size_t>(e.u)] += e.w;
    deg[static_cast<std::size_t>(e.v)] += e.w;
  }
  for (Index i = 0; i < g.n; ++i) lap.push_back({i, i, deg[static_cast<std::size_t>(i)]});
  SdpProblem p;
  p.sense = Sense::Maximize;
  p.c = SymMatrix::from_entries(g.n, std::move(lap));
  p.constraints.reserve(static_cast<std::size_t>(g.n));
  for (Index i = 0; i < g.n; ++i) p.constraints.push_back({SymMatrix::unit_diagonal(g.n, i), 1.0});
  if (quarter_scale) p.report.scale = 0.25;
  p.name = g.name.empty() ? "maxcut" : "maxcut:" + g.name;
  return p;
}

namespace {

int sgn(int lit) { return lit > 0 ? 1 : -1; }
Index var(int lit) { return static_cast<Index>(std::abs(lit)); }

bool tautology(const Clause& c) { return c.size == 2 && c.lits[0] == -c.lits[1]; }

void check_formula(const CnfFormula& f) {
  for (const Clause& c : f.clauses) {
    if (c.size < 1 || c.size > 2) throw Error(ErrorKind::ClauseTooLong, "clauses must have one or two literals");
    for (int t = 0; t < c.size; ++t)
      if (c.lits[static_cast<std::size_t>(t)] == 0 || std::abs(c.lits[static_cast<std::size_t>(t)]) > f.n_vars)
        throw Error(ErrorKind::InvalidParameters, "literal out of range");
    if (c.size == 2 && c.lits[0] == c.lits[1]) throw Error(ErrorKind::InvalidParameters, "repeated literal in clause");
  }
}

}  // namespace

SdpProblem max2sat_sdp(const CnfFormula& f) {
  check_formula(f);
  const Index dim = f.n_vars + 1;
  std::vector<Entry> w;
  double offset = 0.0;
  for (const Clause& c : f.clauses) {
    if (tautology(c)) {
      offset += 1.0;
      continue;
    }
    if (c.size == 1) {
      offset += 0.5;
      w.push_back({0, var(c.lits[0]), static_cast<double>(sgn(c.lits[0]))});
      continue;
    }
    const int si = sgn(c.lits[0]), sj = sgn(c.lits[1]);
    offset += 0.75;
    w.push_back({0, var(c.lits[0]), 0.5 * si});
    w.push_back({0, var(c.lits[1]), 0.5 * sj});
    w.push_back({var(c.lits[0]), var(c.lits[1]), -0.5 * si * sj});
  }
  SdpProblem p;
  p.sense = Sense::Maximize;
  p.c = SymMatrix::from_entries(dim, std::move(w));
  for (Index i = 0; i < dim; ++i) p.constraints.push_back({SymMatrix::unit_diagonal(dim, i), 1.0});
  p.report.offset = offset;
  p.report.scale = 0.25;
  p.name = f.name.empty() ? "max2sat" : "max2sat:" + f.name;
  return p;
}

SdpProblem gap2sat_sdp(const CnfFormula& f) {
  check_formula(f);
  const Index dim = f.n_vars + 1;
  SdpProblem p;
  p.sense = Sense::Minimize;
  p.c = SymMatrix::zero(dim);
  for (Index i = 0; i < dim; ++i) p.constraints.push_back({SymMatrix::unit_diagonal(dim, i), 1.0});
  for (const Clause& c : f.clauses) {
    if (tautology(c)) continue;
    std::vector<Entry> e;
    if (c.size == 1) {
      e.push_back({0, var(c.lits[0]), 0.5 * sgn(c.lits[0])});
    } else {
      const int si = sgn(c.lits[0]), sj = sgn(c.lits[1]);
      e.push_back({0, var(c.lits[0]), 0.5 * si});
      e.push_back({0, var(c.lits[1]), 0.5 * sj});
      e.push_back({var(c.lits[0]), var(c.lits[1]), -0.5 * si * sj});
    }
    p.constraints.push_back({SymMatrix::from_entries(dim, std::move(e)), 1.0});
  }
  p.name = f.name.empty() ? "gap2sat" : "gap2sat:" + f.name;
  return p;
}

std::vector<std::vector<Index>> lasserre2_monomials(Index n) {
  std::vector<std::vector<Index>> mons;
  mons.reserve(static_cast<std::size_t>(1 + n + n * (n - 1) / 2));
  mons.push_back({});
  for (Index i = 0; i < n; ++i) mons.push_back({i});
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) mons.push_back({i, j});
  return mons;
}

SdpProblem stable_set_lasserre2(const Graph& g) {
  if (g.weighted()) throw Error(ErrorKind::WeightedInput, "stable set relaxation expects an unweighted graph");
  const Index n = g.n;
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "graph has no vertices");
  const auto mons = lasserre2_monomials(n);
  const Index size = static_cast<Index>(mons.size());

  std::vector<char> adj(static_cast<std::size_t>(n * n), 0);
  for (const WeightedEdge& e : g.edges) {
    adj[static_cast<std::size_t>(e.u * n + e.v)] = 1;
    adj[static_cast<std::size_t>(e.v * n + e.u)] = 1;
  }
  auto stable = [&](const std::vector<Index>& s) {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        if (adj[static_cast<std::size_t>(s[a] * n + s[b])]) return false;
    return true;
  };

  // Constraint per stable set, keyed by its sorted vertex list; ordered by size then lexicographically.
  std::map<std::pair<std::size_t, std::vector<Index>>, std::vector<Entry>> blocks;
  std::vector<Index> uni;
  for (Index a = 0; a < size; ++a) {
    const auto& ma = mons[static_cast<std::size_t>(a)];
    if (!stable(ma)) continue;
    for (Index b = a; b < size; ++b) {
      const auto& mb = mons[static_cast<std::size_t>(b)];
      if (!stable(mb)) continue;
      uni.clear();
      std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(uni));
      if (uni.empty() || !stable(uni)) continue;
      blocks[{uni.size(), uni}].push_back({a, b, 1.0});
    }
  }

  SdpProblem p;
  p.sense = Sense::Minimize;
  p.c = SymMatrix::from_entries(size, {{0, 0, 1.0}});
  p.constraints.reserve(blocks.size());
  for (auto& [key, entries] : blocks)
    p.constraints.push_back({SymMatrix::from_entries(size, std::move(entries)), key.first == 1 ? -1.0 : 0.0});
  p.name = g.name.empty() ? "stableset" : "stableset:" + g.name;
  return p;
}

Eigen::MatrixXd assignment_lift(const std::vector<bool>& assignment) {
  Eigen::VectorXd v(static_cast<Index>(assignment.size()) + 1);
  v[0] = 1.0;
  for (std::size_t i = 0; i < assignment.size(); ++i) v[static_cast<Index>(i) + 1] = assignment[i] ? 1.0 : -1.0;
  return v * v.transpose();
}

}  // namespace rpsdp
