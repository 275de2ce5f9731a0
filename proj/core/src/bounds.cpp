#include "rpsdp/bounds.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/lemma_lab.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>

namespace rpsdp {

namespace {

constexpr std::pair<LemmaId, std::string_view> kLemmaNames[] = {
    {LemmaId::Spectral, "spectral"},
    {LemmaId::JLL, "jll"},
    {LemmaId::SquaredNorm, "squared-norm"},
    {LemmaId::InnerProduct, "inner-product"},
    {LemmaId::QuadraticForm, "quadratic-form"},
    {LemmaId::MatrixInner, "matrix-inner"},
    {LemmaId::Feasibility, "feasibility"},
    {LemmaId::FeasibilityProof, "feasibility-proof"},
    {LemmaId::Optimality, "optimality"},
};

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s, const std::string& key) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::Io, "bad number for " + key + ": " + s);
  return v;
}

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw Error(ErrorKind::NonpositiveInput, std::string(what) + " must be >= 0");
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorKind::NonpositiveInput, std::string(what) + " must be > 0");
}

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double sum_ra(const BoundParams& p) {
  if (p.ranks.r_a.empty()) return static_cast<double>(p.m);
  double s = 0.0;
  for (double r : p.ranks.r_a) s += r;
  return s;
}

}  // namespace

std::string_view to_string(LemmaId id) noexcept {
  for (const auto& [lemma, name] : kLemmaNames)
    if (lemma == id) return name;
  return "unknown";
}

LemmaId parse_lemma(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) {
    return c == '_' ? '-' : static_cast<char>(std::tolower(c));
  });
  for (const auto& [lemma, n] : kLemmaNames)
    if (n == lower) return lemma;
  if (lower == "squarednorm") return LemmaId::SquaredNorm;
  if (lower == "innerproduct") return LemmaId::InnerProduct;
  if (lower == "quadraticform") return LemmaId::QuadraticForm;
  if (lower == "matrixinner") return LemmaId::MatrixInner;
  if (lower == "feasibilityproof") return LemmaId::FeasibilityProof;
  throw Error(ErrorKind::UnknownLemma, "unknown lemma '" + std::string(name) + "'");
}

double Ranks::weighted_sum() const {
  double s = r_c * r_x;
  for (double r : r_a) s += r * r_x;
  return s;
}

void BoundParams::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error(ErrorKind::InvalidParameters, "epsilon must lie in (0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(ErrorKind::InvalidParameters, "delta must lie in (0, 1]");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorKind::InvalidDensity, "gamma must lie in (0, 1]");
  if (k < 1 || n < 1 || m < 0) throw Error(ErrorKind::InvalidDimension, "need k, n >= 1 and m >= 0");
  require_positive(w, "w");
  require_positive(c_univ, "universal constant");
  require_positive(ranks.r_c, "r_C");
  require_positive(ranks.r_x, "r_X");
  for (double r : ranks.r_a) require_positive(r, "r_A");
  require_positive(rank_a, "rank_a");
  require_positive(rank_b, "rank_b");
}

double feasibility_epsilon(double delta, Index m, double w, double max_frobenius_a) {
  require_nonnegative(delta, "delta");
  require_nonnegative(w, "w");
  require_nonnegative(max_frobenius_a, "max ||A_i||_F");
  if (m < 0) throw Error(ErrorKind::NonpositiveInput, "m must be >= 0");
  return 3.0 * static_cast<double>(m + 1) * delta * w * w * max_frobenius_a;
}

double optimality_gap(double epsilon, double frobenius_c, double nuclear_x, const std::vector<GapTerm>& terms,
                      bool printed) {
  require_nonnegative(epsilon, "epsilon");
  require_nonnegative(frobenius_c, "||C||_F");
  require_nonnegative(nuclear_x, "||X*||_*");
  double e = 3.0 * epsilon * frobenius_c * nuclear_x;
  for (const GapTerm& t : terms) {
    require_nonnegative(t.frobenius_a, "||A_i||_F");
    const double base = 3.0 * t.z * t.frobenius_a * nuclear_x;
    e += std::max(epsilon * base, printed ? -base : -epsilon * base);
  }
  return e;
}

Index min_projection_dim(double delta, double epsilon, double gamma, const Ranks& ranks, double c_univ,
                         GammaExponent exponent) {
  require_positive(delta, "delta");
  require_positive(epsilon, "epsilon");
  require_positive(gamma, "gamma");
  require_positive(c_univ, "universal constant");
  require_positive(ranks.r_c, "r_C");
  require_positive(ranks.r_x, "r_X");
  for (double r : ranks.r_a) require_positive(r, "r_A");
  const double num = std::log(8.0 * ranks.weighted_sum() / delta);
  if (num <= 0.0) return 1;
  const double e = exponent == GammaExponent::Printed ? 2.0 : 4.0;
  const double k = std::pow(num / (c_univ * epsilon * epsilon * std::pow(gamma, e)), 0.2);
  // Guard against pow round-off landing just above an integer.
  const double rounded = std::round(k);
  const double kk = std::abs(k - rounded) < 1e-12 * std::max(1.0, k) ? rounded : std::ceil(k);
  return std::max<Index>(1, static_cast<Index>(kk));
}

double success_probability(LemmaId id, const BoundParams& p) {
  p.validate();
  const double k = static_cast<double>(p.k);
  const double c = p.c_univ;
  const double g2 = p.gamma * p.gamma;
  auto tail = [&](double acc) { return c * acc * acc * std::pow(k, 5.0) * g2 * g2; };
  switch (id) {
    case LemmaId::Spectral: {
      const double base = std::sqrt(p.epsilon) * p.gamma * k / c - std::sqrt(k);
      if (base <= 0.0) return 0.0;
      return clamp01(1.0 - 2.0 * std::exp(-base * base));
    }
    case LemmaId::JLL: {
      const double logm = p.m > 1 ? std::log(static_cast<double>(p.m)) : 0.0;
      const double base = c * p.epsilon * std::pow(k, 2.5) * g2 - std::sqrt(logm);
      if (base <= 0.0) return 0.0;
      return clamp01(1.0 - 2.0 * std::exp(-base * base));
    }
    case LemmaId::SquaredNorm: return clamp01(1.0 - 2.0 * std::exp(-tail(p.epsilon)));
    case LemmaId::InnerProduct: return clamp01(1.0 - 4.0 * std::exp(-tail(p.epsilon)));
    case LemmaId::QuadraticForm: return clamp01(1.0 - 8.0 * p.rank_a * std::exp(-tail(p.epsilon)));
    case LemmaId::MatrixInner: return clamp01(1.0 - 8.0 * p.rank_a * p.rank_b * std::exp(-tail(p.epsilon)));
    case LemmaId::Feasibility: return clamp01(1.0 - 16.0 * sum_ra(p) * std::exp(-tail(p.delta)));
    case LemmaId::FeasibilityProof:
      return clamp01(1.0 - 8.0 * static_cast<double>(p.m + 1) * sum_ra(p) * std::exp(-tail(p.delta)));
    case LemmaId::Optimality: return clamp01(1.0 - 8.0 * p.ranks.weighted_sum() * std::exp(-tail(p.epsilon)));
  }
  throw Error(ErrorKind::UnknownLemma, "unknown lemma id");
}

double failure_probability(LemmaId id, const BoundParams& params) {
  return 1.0 - success_probability(id, params);
}

bool failure_increases_with_constant(LemmaId id) noexcept { return id == LemmaId::Spectral; }

BoundParams params_for_point(LemmaId id, const CalibrationPoint& pt, const CalibrationOptions& opts, double c_univ) {
  BoundParams p;
  p.epsilon = pt.epsilon;
  p.delta = pt.epsilon;
  p.gamma = pt.gamma;
  p.k = pt.k;
  p.n = pt.n;
  p.m = id == LemmaId::JLL ? opts.points : 1;
  p.rank_a = static_cast<double>(opts.rank_a);
  p.rank_b = static_cast<double>(opts.rank_b);
  p.c_univ = c_univ;
  return p;
}

namespace {

// Boundary of the valid set {C : predicted failure >= rate} on a log scale.
double boundary(LemmaId id, const ObservedRate& obs, const CalibrationOptions& opts) {
  auto valid = [&](double c) {
    return failure_probability(id, params_for_point(id, obs.point, opts, c)) >= obs.failure_rate;
  };
  const bool up = failure_increases_with_constant(id);
  if (!up && valid(opts.ceiling)) return opts.ceiling;
  if (up && valid(opts.floor)) return opts.floor;
  double lo = std::log(opts.floor), hi = std::log(opts.ceiling);
  // Invariant: valid side is `lo` for decreasing lemmas, `hi` for Spectral.
  for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (valid(std::exp(mid)) != up) lo = mid;
    else hi = mid;
  }
  return std::exp(up ? hi : lo);
}

std::optional<double> least_squares(LemmaId id, const std::vector<ObservedRate>& observed,
                                    const CalibrationOptions& opts) {
  std::vector<const ObservedRate*> pts;
  for (const auto& o : observed)
    if (o.failure_rate > 0.0 && o.failure_rate < 1.0) pts.push_back(&o);
  if (pts.empty()) return std::nullopt;
  auto loss = [&](double logc) {
    double s = 0.0;
    for (const ObservedRate* o : pts) {
      const double f = std::max(failure_probability(id, params_for_point(id, o->point, opts, std::exp(logc))), 1e-300);
      const double d = std::log(f) - std::log(o->failure_rate);
      s += d * d;
    }
    return s;
  };
  const double a = std::log(opts.floor), b = std::log(opts.ceiling);
  const int grid = 400;
  double best = a, best_loss = loss(a);
  for (int i = 1; i <= grid; ++i) {
    const double x = a + (b - a) * i / grid;
    const double l = loss(x);
    if (l < best_loss) best = x, best_loss = l;
  }
  double lo = std::max(a, best - (b - a) / grid), hi = std::min(b, best + (b - a) / grid);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 100; ++it) {
    const double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
    if (loss(x1) <= loss(x2)) hi = x2;
    else lo = x1;
  }
  return std::exp(0.5 * (lo + hi));
}

void check_grid(const std::vector<CalibrationPoint>& grid) {
  if (grid.empty()) throw Error(ErrorKind::DegenerateGrid, "calibration grid is empty");
  for (const CalibrationPoint& p : grid) {
    if (p.k < 1 || p.k > p.n) throw Error(ErrorKind::DegenerateGrid, "grid point needs 1 <= k <= n");
    if (!(p.gamma > 0.0 && p.gamma <= 1.0)) throw Error(ErrorKind::DegenerateGrid, "grid gamma outside (0, 1]");
    if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw Error(ErrorKind::DegenerateGrid, "grid epsilon outside (0, 1)");
  }
}

}  // namespace

CalibrationResult fit_constant(LemmaId id, const std::vector<ObservedRate>& observed, const CalibrationOptions& opts) {
  if (observed.empty()) throw Error(ErrorKind::DegenerateGrid, "no observations to fit");
  if (!(opts.floor > 0.0 && opts.ceiling > opts.floor))
    throw Error(ErrorKind::InvalidParameters, "search interval must satisfy 0 < floor < ceiling");
  const bool up = failure_increases_with_constant(id);
  double c = up ? opts.floor : opts.ceiling;
  for (const ObservedRate& o : observed) {
    const double b = boundary(id, o, opts);
    c = up ? std::max(c, b) : std::min(c, b);
  }
  CalibrationResult r;
  r.lemma = id;
  r.c_univ = c;
  r.bound_hit = up ? c <= opts.floor : c >= opts.ceiling;
  r.c_least_squares = least_squares(id, observed, opts);
  r.trials = opts.trials;
  r.seed = opts.seed;
  r.observed = observed;
  std::vector<CalibrationPoint> grid;
  for (const auto& o : observed) grid.push_back(o.point);
  r.grid = grid_description(grid);
  r.grid_hash = grid_hash(id, grid, opts);
  return r;
}

CalibrationResult calibrate_constant(LemmaId id, const std::vector<CalibrationPoint>& grid,
                                     const CalibrationOptions& opts) {
  if (opts.trials < 1000)
    throw Error(ErrorKind::InsufficientTrials, "calibration needs at least 1000 trials, got " + std::to_string(opts.trials));
  check_grid(grid);
  std::vector<TrialConfig> cfgs;
  cfgs.reserve(grid.size());
  for (const CalibrationPoint& p : grid) {
    TrialConfig t;
    t.lemma = id;
    t.n = p.n;
    t.k = p.k;
    t.gamma = p.gamma;
    t.epsilon = p.epsilon;
    t.trials = opts.trials;
    t.seed = opts.seed;
    t.points = opts.points;
    t.matrix.rank_a = opts.rank_a;
    t.matrix.rank_b = opts.rank_b;
    cfgs.push_back(t);
  }
  const auto reports = sweep(cfgs);
  std::vector<ObservedRate> observed;
  observed.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) observed.push_back({grid[i], reports[i].failure_rate});
  return fit_constant(id, observed, opts);
}

std::string grid_description(const std::vector<CalibrationPoint>& grid) {
  std::string s;
  for (const CalibrationPoint& p : grid) {
    if (!s.empty()) s += ';';
    s += std::to_string(p.n) + ':' + std::to_string(p.k) + ':' + fmt(p.gamma) + ':' + fmt(p.epsilon);
  }
  return s;
}

std::string grid_hash(LemmaId id, const std::vector<CalibrationPoint>& grid, const CalibrationOptions& opts) {
  const std::string text = std::string(to_string(id)) + '|' + std::to_string(opts.trials) + '|' +
                           std::to_string(opts.seed) + '|' + std::to_string(opts.points) + '|' +
                           std::to_string(opts.rank_a) + '|' + std::to_string(opts.rank_b) + '|' +
                           grid_description(grid);
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string calibration_artifact_text(const CalibrationResult& r) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
  std::ostringstream os;
  os << "# rpsdp calibration artifact\n";
  os << "version=1\n";
  os << "lemma_id=" << to_string(r.lemma) << '\n';
  os << "c_univ=" << fmt(r.c_univ) << '\n';
  os << "bound_hit=" << (r.bound_hit ? 1 : 0) << '\n';
  if (r.c_least_squares) os << "c_least_squares=" << fmt(*r.c_least_squares) << '\n';
  os << "trials=" << r.trials << '\n';
  os << "seed=" << r.seed << '\n';
  os << "grid_hash=" << r.grid_hash << '\n';
  os << "grid=" << r.grid << '\n';
  os << "timestamp=" << stamp << '\n';
  return os.str();
}

void write_calibration_artifact(const std::string& path, const CalibrationResult& result) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << calibration_artifact_text(result);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

CalibrationResult read_calibration_artifact(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::Io, "malformed artifact line: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (kv["version"] != "1") throw Error(ErrorKind::Io, "unsupported calibration artifact version");
  for (const char* key : {"lemma_id", "c_univ"})
    if (!kv.count(key)) throw Error(ErrorKind::Io, std::string("artifact lacks ") + key);
  CalibrationResult r;
  r.lemma = parse_lemma(kv["lemma_id"]);
  r.c_univ = parse_double(kv["c_univ"], "c_univ");
  r.bound_hit = kv["bound_hit"] == "1";
  if (kv.count("c_least_squares")) r.c_least_squares = parse_double(kv["c_least_squares"], "c_least_squares");
  if (kv.count("trials")) r.trials = static_cast<Index>(parse_double(kv["trials"], "trials"));
  if (kv.count("seed")) r.seed = std::stoull(kv["seed"]);
  r.grid_hash = kv["grid_hash"];
  r.grid = kv["grid"];
  return r;
}

}  // namespace rpsdp
