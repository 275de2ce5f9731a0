#include "rpsdp/graph.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/rng.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <unordered_set>

namespace rpsdp {

namespace {

constexpr std::uint64_t kGnpStream = 0x676e70;
constexpr std::uint64_t kSatStream = 0x323573;

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

std::string line_error(std::size_t lineno, const std::string& what) {
  return "line " + std::to_string(lineno) + ": " + what;
}

std::uint64_t pair_key(Index u, Index v) { return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v); }

}  // namespace

bool Graph::weighted() const noexcept {
  return std::any_of(edges.begin(), edges.end(), [](const WeightedEdge& e) { return e.w != 1.0; });
}

void Graph::canonicalize() {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (WeightedEdge& e : edges) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) throw Error(ErrorKind::MalformedLine, "self-loop on vertex " + std::to_string(e.u + 1));
    if (e.u < 0 || e.v >= n) throw Error(ErrorKind::VertexOutOfRange, "edge endpoint out of range");
    if (!std::isfinite(e.w)) throw Error(ErrorKind::MalformedLine, "non-finite edge weight");
    if (!seen.insert(pair_key(e.u, e.v)).second)
      throw Error(ErrorKind::DuplicateEdge, "duplicate edge " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1));
  }
  std::sort(edges.begin(), edges.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
}

bool Graph::has_edge(Index u, Index v) const {
  if (u > v) std::swap(u, v);
  return std::any_of(edges.begin(), edges.end(), [&](const WeightedEdge& e) { return e.u == u && e.v == v; });
}

bool CnfFormula::satisfied_by(const std::vector<bool>& a) const {
  return count_satisfied(a) == static_cast<int>(clauses.size());
}

int CnfFormula::count_satisfied(const std::vector<bool>& a) const {
  int count = 0;
  for (const Clause& c : clauses) {
    bool sat = false;
    for (int t = 0; t < c.size && !sat; ++t) {
      const int lit = c.lits[static_cast<std::size_t>(t)];
      sat = a[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    }
    count += sat;
  }
  return count;
}

Graph parse_edge_list(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t ln = 0;
  auto next_content = [&]() -> std::ptrdiff_t {
    while (ln < lines.size() && tokens(lines[ln]).empty()) ++ln;
    return ln < lines.size() ? static_cast<std::ptrdiff_t>(ln) : -1;
  };
  if (next_content() < 0) throw Error(ErrorKind::MalformedHeader, "empty edge list");
  const auto head = tokens(lines[ln]);
  long long n = 0, m = 0;
  if (head.size() != 2 || !parse_number(head[0], n) || !parse_number(head[1], m) || n < 0 || m < 0)
    throw Error(ErrorKind::MalformedHeader, line_error(ln + 1, "expected 'n m'"));
  ++ln;
  Graph g;
  g.n = static_cast<Index>(n);
  g.edges.reserve(static_cast<std::size_t>(m));
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(static_cast<std::size_t>(m) * 2);
  for (long long e = 0; e < m; ++e) {
    if (next_content() < 0) throw Error(ErrorKind::MalformedLine, "expected " + std::to_string(m) + " edges, found " + std::to_string(e));
    const auto tok = tokens(lines[ln]);
    long long u = 0, v = 0;
    double w = 1.0;
    if (tok.size() < 2 || tok.size() > 3 || !parse_number(tok[0], u) || !parse_number(tok[1], v) ||
        (tok.size() == 3 && !parse_number(tok[2], w)) || !std::isfinite(w))
      throw Error(ErrorKind::MalformedLine, line_error(ln + 1, "expected 'u v [w]'"));
    if (u < 1 || v < 1 || u > n || v > n)
      throw Error(ErrorKind::VertexOutOfRange, line_error(ln + 1, "vertex outside 1.." + std::to_string(n)));
    if (u == v) throw Error(ErrorKind::MalformedLine, line_error(ln + 1, "self-loop"));
    if (u > v) std::swap(u, v);
    if (!seen.insert(pair_key(static_cast<Index>(u - 1), static_cast<Index>(v - 1))).second)
      throw Error(ErrorKind::DuplicateEdge, line_error(ln + 1, "duplicate edge"));
    g.edges.push_back({static_cast<Index>(u - 1), static_cast<Index>(v - 1), w});
    ++ln;
  }
  if (next_content() >= 0) throw Error(ErrorKind::MalformedLine, line_error(ln + 1, "trailing content after last edge"));
  return g;
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os.precision(17);
  os << g.n << ' ' << g.edges.size() << '\n';
  for (const WeightedEdge& e : g.edges) os << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
  return os.str();
}

CnfFormula parse_dimacs_cnf(std::string_view text) {
  const auto lines = split_lines(text);
  CnfFormula f;
  long long declared = -1;
  Clause cur;
  bool open = false;
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    const auto tok = tokens(lines[ln]);
    if (tok.empty() || tok[0][0] == 'c') continue;
    if (tok[0] == "%") break;  // SATLIB end marker
    if (tok[0] == "p") {
      long long nv = 0;
      if (declared >= 0 || tok.size() != 4 || tok[1] != "cnf" || !parse_number(tok[2], nv) ||
          !parse_number(tok[3], declared) || nv < 0 || declared < 0)
        throw Error(ErrorKind::MalformedHeader, line_error(ln + 1, "expected 'p cnf <vars> <clauses>'"));
      f.n_vars = static_cast<int>(nv);
      continue;
    }
    if (declared < 0) throw Error(ErrorKind::MalformedHeader, line_error(ln + 1, "clause before 'p cnf' header"));
    for (std::string_view t : tok) {
      int lit = 0;
      if (!parse_number(t, lit)) throw Error(ErrorKind::MalformedLine, line_error(ln + 1, "bad literal '" + std::string(t) + "'"));
      if (lit == 0) {
        if (cur.size == 0) throw Error(ErrorKind::MalformedLine, line_error(ln + 1, "empty clause"));
        f.clauses.push_back(cur);
        cur = Clause{};
        open = false;
        continue;
      }
      if (std::abs(lit) > f.n_vars) throw Error(ErrorKind::MalformedLine, line_error(ln + 1, "literal exceeds declared variables"));
      if (cur.size == 2) throw Error(ErrorKind::ClauseTooLong, line_error(ln + 1, "clause has more than two literals"));
      if (cur.size == 1 && cur.lits[0] == lit) throw Error(ErrorKind::MalformedLine, line_error(ln + 1, "repeated literal"));
      cur.lits[static_cast<std::size_t>(cur.size++)] = lit;
      open = true;
    }
  }
  if (declared < 0) throw Error(ErrorKind::MalformedHeader, "missing 'p cnf' header");
  if (open) throw Error(ErrorKind::MalformedLine, "last clause is not terminated by 0");
  if (static_cast<long long>(f.clauses.size()) != declared)
    throw Error(ErrorKind::MalformedHeader, "header declares " + std::to_string(declared) + " clauses, found " +
                                                std::to_string(f.clauses.size()));
  return f;
}

std::string write_dimacs_cnf(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.n_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (int t = 0; t < c.size; ++t) os << c.lits[static_cast<std::size_t>(t)] << ' ';
    os << "0\n";
  }
  return os.str();
}

Graph gen_gnp(Index n, double p, std::uint64_t seed, EdgeWeights weights) {
  if (n < 1) throw Error(ErrorKind::InvalidParameters, "gnp needs n >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidParameters, "gnp needs 0 <= p <= 1");
  const CounterRng rng(seed, kGnpStream);
  Graph g;
  g.n = n;
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) {
      const auto a = static_cast<std::uint64_t>(u), b = static_cast<std::uint64_t>(v);
      if (rng.uniform(a, b, 0) >= p) continue;
      const double w = weights == EdgeWeights::Unit ? 1.0 : ((rng.bits(a, b, 1) >> 63) ? 1.0 : -1.0);
      g.edges.push_back({u, v, w});
    }
  return g;
}

Graph generalized_petersen(Index v, Index k) {
  if (v < 3 || k < 1 || 2 * k >= v) throw Error(ErrorKind::InvalidParameters, "petersen needs v >= 3 and 1 <= k < v/2");
  Graph g;
  g.n = 2 * v;
  for (Index i = 0; i < v; ++i) {
    g.edges.push_back({i, (i + 1) % v, 1.0});
    g.edges.push_back({i, v + i, 1.0});
    g.edges.push_back({v + i, v + (i + k) % v, 1.0});
  }
  g.canonicalize();
  g.name = "petersen-" + std::to_string(v) + "-" + std::to_string(k);
  return g;
}

Graph helm(Index v) {
  if (v < 3) throw Error(ErrorKind::InvalidParameters, "helm needs v >= 3");
  // Hub 0, rim 1..v, pendants v+1..2v.
  Graph g;
  g.n = 2 * v + 1;
  for (Index i = 1; i <= v; ++i) {
    g.edges.push_back({0, i, 1.0});
    g.edges.push_back({i, i % v + 1, 1.0});
    g.edges.push_back({i, v + i, 1.0});
  }
  g.canonicalize();
  g.name = "helm-" + std::to_string(v);
  return g;
}

Graph jahangir(Index v, Index k) {
  if (v < 2 || k < 2) throw Error(ErrorKind::InvalidParameters, "jahangir needs v >= 2 and k >= 2");
  const Index len = v * k;
  Graph g;
  g.n = len + 1;
  for (Index i = 0; i < len; ++i) g.edges.push_back({i, (i + 1) % len, 1.0});
  for (Index i = 0; i < v; ++i) g.edges.push_back({i * k, len, 1.0});
  g.canonicalize();
  g.name = "jahangir-" + std::to_string(v) + "-" + std::to_string(k);
  return g;
}

Graph complement(const Graph& g) {
  if (g.weighted()) throw Error(ErrorKind::WeightedInput, "complement is defined for unweighted graphs");
  std::vector<char> adj(static_cast<std::size_t>(g.n * g.n), 0);
  for (const WeightedEdge& e : g.edges) adj[static_cast<std::size_t>(e.u * g.n + e.v)] = 1;
  Graph c;
  c.n = g.n;
  for (Index u = 0; u < g.n; ++u)
    for (Index v = u + 1; v < g.n; ++v)
      if (!adj[static_cast<std::size_t>(u * g.n + v)]) c.edges.push_back({u, v, 1.0});
  c.name = g.name.empty() ? std::string() : "c-" + g.name;
  return c;
}

Graph gen_named_complement(const NamedGraphSpec& spec) {
  switch (spec.family) {
    case NamedFamily::GeneralizedPetersen: return complement(generalized_petersen(spec.v, spec.k));
    case NamedFamily::Helm: return complement(helm(spec.v));
    case NamedFamily::Jahangir: return complement(jahangir(spec.v, spec.k));
  }
  throw Error(ErrorKind::InvalidParameters, "unknown graph family");
}

namespace {

Clause random_clause(const CounterRng& rng, int n_vars, std::uint64_t draw) {
  const auto n = static_cast<std::uint64_t>(n_vars);
  const int a = static_cast<int>(rng.below(n, draw, 0)) + 1;
  int b = static_cast<int>(rng.below(n - 1, draw, 1)) + 1;
  if (b >= a) ++b;
  Clause c;
  c.size = 2;
  c.lits[0] = (rng.bits(draw, 2) >> 63) ? a : -a;
  c.lits[1] = (rng.bits(draw, 3) >> 63) ? b : -b;
  return c;
}

int clause_count(int n_vars, double ratio) {
  if (n_vars < 2) throw Error(ErrorKind::InvalidParameters, "random 2-SAT needs at least two variables");
  if (!(ratio >= 0.0)) throw Error(ErrorKind::InvalidParameters, "clause ratio must be nonnegative");
  return static_cast<int>(std::llround(ratio * n_vars));
}

}  // namespace

CnfFormula gen_urand(int n_vars, double ratio, std::uint64_t seed) {
  const int m = clause_count(n_vars, ratio);
  const CounterRng rng(seed, kSatStream);
  CnfFormula f;
  f.n_vars = n_vars;
  for (int i = 0; i < m; ++i) f.clauses.push_back(random_clause(rng, n_vars, static_cast<std::uint64_t>(i)));
  return f;
}

CnfFormula gen_planted_2sat(int n_vars, double ratio, std::uint64_t seed, std::vector<bool>* planted) {
  const int m = clause_count(n_vars, ratio);
  const CounterRng rng(seed, kSatStream + 1);
  std::vector<bool> plant(static_cast<std::size_t>(n_vars));
  for (int v = 0; v < n_vars; ++v) plant[static_cast<std::size_t>(v)] = rng.bits(0xffffffffULL, static_cast<std::uint64_t>(v)) >> 63;
  CnfFormula f;
  f.n_vars = n_vars;
  for (std::uint64_t draw = 0; static_cast<int>(f.clauses.size()) < m; ++draw) {
    const Clause c = random_clause(rng, n_vars, draw);
    bool sat = false;
    for (int t = 0; t < 2; ++t) {
      const int lit = c.lits[static_cast<std::size_t>(t)];
      sat = sat || plant[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0);
    }
    if (sat) f.clauses.push_back(c);
  }
  if (planted) *planted = std::move(plant);
  return f;
}

Index stability_number(const Graph& g) {
  if (g.n > 64) throw Error(ErrorKind::InvalidParameters, "brute-force stability number limited to n <= 64");
  std::vector<std::uint64_t> nbr(static_cast<std::size_t>(g.n), 0);
  for (const WeightedEdge& e : g.edges) {
    nbr[static_cast<std::size_t>(e.u)] |= std::uint64_t{1} << e.v;
    nbr[static_cast<std::size_t>(e.v)] |= std::uint64_t{1} << e.u;
  }
  // Branch on the lowest remaining vertex; prune when the candidates cannot beat the incumbent.
  Index incumbent = 0;
  auto search = [&](auto&& self, std::uint64_t cand, Index size) -> void {
    if (cand == 0) {
      incumbent = std::max(incumbent, size);
      return;
    }
    if (size + static_cast<Index>(__builtin_popcountll(cand)) <= incumbent) return;
    const int v = __builtin_ctzll(cand);
    const std::uint64_t rest = cand & ~(std::uint64_t{1} << v);
    self(self, rest & ~nbr[static_cast<std::size_t>(v)], size + 1);
    self(self, rest, size);
  };
  const std::uint64_t all = g.n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << g.n) - 1);
  search(search, all, 0);
  return incumbent;
}

double cut_weight(const Graph& g, const std::vector<bool>& side) {
  double w = 0.0;
  for (const WeightedEdge& e : g.edges)
    if (side[static_cast<std::size_t>(e.u)] != side[static_cast<std::size_t>(e.v)]) w += e.w;
  return w;
}

}  // namespace rpsdp
