#include "rpsdp/experiment.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/relaxations.hpp"
#include "rpsdp/rng.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <thread>

namespace rpsdp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool graph_task(Task t) { return t == Task::Maxcut || t == Task::StableSet2; }
bool formula_task(Task t) { return t == Task::Max2Sat || t == Task::Gap2Sat; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Index as_index(const GeneratorSpec& g, const std::string& key) {
  const double v = g.number(key);
  if (v != std::floor(v) || v < 0) throw Error(ErrorKind::InvalidConfig, key + " must be a nonnegative integer");
  return static_cast<Index>(v);
}

std::uint64_t as_seed(const GeneratorSpec& g) {
  const auto it = g.params.find("seed");
  if (it == g.params.end()) return 1;
  std::uint64_t v = 0;
  const auto res = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (res.ec != std::errc() || res.ptr != it->second.data() + it->second.size())
    throw Error(ErrorKind::InvalidConfig, "seed must be an unsigned integer");
  return v;
}

std::string_view status_name(SolveStatus s) { return to_string(s); }

}  // namespace

std::string_view to_string(Task t) noexcept {
  switch (t) {
    case Task::Maxcut: return "maxcut";
    case Task::Max2Sat: return "max2sat";
    case Task::Gap2Sat: return "gap2sat";
    case Task::StableSet2: return "stableset";
    case Task::Lemmas: return "lemmas";
    case Task::Calibrate: return "calibrate";
  }
  return "unknown";
}

Task parse_task(std::string_view name) {
  for (Task t : {Task::Maxcut, Task::Max2Sat, Task::Gap2Sat, Task::StableSet2, Task::Lemmas, Task::Calibrate})
    if (to_string(t) == name) return t;
  throw Error(ErrorKind::InvalidConfig, "unknown task '" + std::string(name) + "'");
}

double GeneratorSpec::number(const std::string& key) const {
  const auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorKind::InvalidConfig, "generator '" + family + "' needs " + key);
  double v = 0.0;
  const auto res = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
  if (res.ec != std::errc() || res.ptr != it->second.data() + it->second.size() || !std::isfinite(v))
    throw Error(ErrorKind::InvalidConfig, "generator parameter " + key + " is not a number: " + it->second);
  return v;
}

double GeneratorSpec::number_or(const std::string& key, double fallback) const {
  return params.count(key) ? number(key) : fallback;
}

std::string GeneratorSpec::string_or(const std::string& key, const std::string& fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

GeneratorSpec parse_generator_spec(std::string_view text) {
  GeneratorSpec g;
  g.text = trim(text);
  const auto colon = g.text.find(':');
  g.family = trim(std::string_view(g.text).substr(0, colon));
  if (g.family.empty()) throw Error(ErrorKind::InvalidConfig, "generator spec lacks a family: '" + g.text + "'");
  static const char* families[] = {"gnp", "petersen", "helm", "jahangir", "urand", "planted"};
  if (std::find(std::begin(families), std::end(families), g.family) == std::end(families))
    throw Error(ErrorKind::InvalidConfig, "unknown generator family '" + g.family + "'");
  if (colon == std::string::npos) return g;
  std::string_view rest = std::string_view(g.text).substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      if (item != "complement") throw Error(ErrorKind::InvalidConfig, "unknown generator flag '" + item + "'");
      g.complement = true;
      continue;
    }
    const std::string key = trim(std::string_view(item).substr(0, eq));
    if (key.empty() || g.params.count(key)) throw Error(ErrorKind::InvalidConfig, "bad or repeated key in '" + item + "'");
    g.params[key] = trim(std::string_view(item).substr(eq + 1));
  }
  return g;
}

Instance load_instance(Task task, const InstanceSource& source) {
  if (source.path.has_value() == source.generator.has_value())
    throw Error(ErrorKind::InvalidConfig, "give exactly one of an input path and a generator spec");
  if (!graph_task(task) && !formula_task(task))
    throw Error(ErrorKind::InvalidConfig, "task '" + std::string(to_string(task)) + "' takes no instances");
  Instance inst;
  if (source.path) {
    const std::string text = read_file(*source.path);
    inst.id = std::filesystem::path(*source.path).filename().string();
    if (graph_task(task)) {
      inst.graph = parse_edge_list(text);
      inst.graph->name = inst.id;
    } else {
      inst.formula = parse_dimacs_cnf(text);
      inst.formula->name = inst.id;
    }
    return inst;
  }
  const GeneratorSpec g = parse_generator_spec(*source.generator);
  inst.id = g.text;
  const bool is_graph = g.family == "gnp" || g.family == "petersen" || g.family == "helm" || g.family == "jahangir";
  if (is_graph != graph_task(task))
    throw Error(ErrorKind::InvalidConfig, "generator '" + g.family + "' does not fit task '" + std::string(to_string(task)) + "'");
  if (is_graph) {
    Graph graph;
    if (g.family == "gnp") {
      const std::string w = g.string_or("w", "unit");
      if (w != "unit" && w != "pm1") throw Error(ErrorKind::InvalidConfig, "w must be unit or pm1");
      graph = gen_gnp(as_index(g, "n"), g.number("p"), as_seed(g), w == "pm1" ? EdgeWeights::PlusMinusOne : EdgeWeights::Unit);
    } else if (g.family == "petersen") {
      graph = generalized_petersen(as_index(g, "v"), as_index(g, "k"));
    } else if (g.family == "helm") {
      graph = helm(as_index(g, "v"));
    } else {
      graph = jahangir(as_index(g, "v"), as_index(g, "k"));
    }
    if (g.complement) graph = complement(graph);
    graph.name = g.text;
    inst.graph = std::move(graph);
  } else {
    if (g.complement) throw Error(ErrorKind::InvalidConfig, "complement applies to graphs only");
    const auto n = static_cast<int>(as_index(g, "n"));
    const double c = g.number("c");
    inst.formula = g.family == "urand" ? gen_urand(n, c, as_seed(g)) : gen_planted_2sat(n, c, as_seed(g));
    inst.formula->name = g.text;
  }
  return inst;
}

SdpProblem build_problem(Task task, const Instance& inst) {
  switch (task) {
    case Task::Maxcut:
    case Task::StableSet2:
      if (!inst.graph) throw Error(ErrorKind::InvalidConfig, "task needs a graph");
      return task == Task::Maxcut ? maxcut_sdp(*inst.graph) : stable_set_lasserre2(*inst.graph);
    case Task::Max2Sat:
    case Task::Gap2Sat:
      if (!inst.formula) throw Error(ErrorKind::InvalidConfig, "task needs a CNF formula");
      return task == Task::Max2Sat ? max2sat_sdp(*inst.formula) : gap2sat_sdp(*inst.formula);
    default: break;
  }
  throw Error(ErrorKind::InvalidConfig, "task '" + std::string(to_string(task)) + "' has no SDP");
}

void ExperimentConfig::validate() const {
  if (!(projection_ratio > 0.0 && projection_ratio <= 1.0))
    throw Error(ErrorKind::InvalidConfig, "projection ratio must lie in (0, 1]");
  if (seeds.empty()) throw Error(ErrorKind::InvalidConfig, "need at least one seed");
  if (kind != ProjectorKind::Identity && !(gamma > 0.0 && gamma <= 1.0))
    throw Error(ErrorKind::InvalidConfig, "gamma must lie in (0, 1]");
  if (threads < 1) throw Error(ErrorKind::InvalidConfig, "threads must be >= 1");
  solver.validate();
}

Index projected_dimension(double ratio, Index n) {
  return std::clamp<Index>(static_cast<Index>(std::llround(ratio * static_cast<double>(n))), 1, n);
}

bool solver_failed(const ProjectionReport& r) {
  auto bad = [](const std::string& s) {
    return s == "max-iterations" || s == "numerical-trouble" || s == "indeterminate" || s == "error";
  };
  return !r.error.empty() || bad(r.status_orig) || bad(r.status_proj);
}

OriginalRun solve_original(Task task, const Instance& inst, const SolverOptions& opts) {
  OriginalRun run;
  run.problem = build_problem(task, inst);
  const auto t0 = Clock::now();
  if (task == Task::Gap2Sat) {
    FeasibilityResult fr = solve_feasibility(run.problem, opts);
    run.solution = std::move(fr.solution);
    if (fr.status == FeasibilityStatus::Feasible) run.solution.x = fr.x;
    run.status = std::string(to_string(fr.status));
    run.optimal = fr.status == FeasibilityStatus::Feasible;
  } else {
    run.solution = solve(run.problem, opts);
    run.status = std::string(status_name(run.solution.status));
    run.optimal = run.solution.status == SolveStatus::Optimal;
  }
  run.time_s = seconds_since(t0);
  return run;
}

namespace {

ProjectionReport base_row(const ExperimentConfig& cfg, const Instance& inst, const OriginalRun& orig,
                          std::uint64_t seed) {
  ProjectionReport r;
  r.instance_id = inst.id;
  r.task = std::string(to_string(cfg.task));
  r.n = orig.problem.dim();
  r.m = orig.problem.m();
  r.items = inst.graph ? static_cast<Index>(inst.graph->edges.size())
                       : static_cast<Index>(inst.formula ? inst.formula->clauses.size() : 0);
  r.projector = std::string(to_string(cfg.kind));
  r.gamma = cfg.kind == ProjectorKind::Identity ? 1.0 : cfg.gamma;
  r.seed = seed;
  r.time_orig_s = orig.time_s;
  r.status_orig = orig.status;
  r.iterations_orig = orig.solution.iterations;
  if (orig.optimal && cfg.task != Task::Gap2Sat) r.obj_orig = orig.problem.report.apply(orig.solution.primal_obj);
  return r;
}

double ratio_pct(double proj, double orig, Sense sense) {
  return sense == Sense::Maximize ? 100.0 * proj / orig : 100.0 * orig / proj;
}

}  // namespace

ProjectionReport project_and_report(const ExperimentConfig& cfg, const Instance& inst, const OriginalRun& orig,
                                    std::uint64_t seed) {
  ProjectionReport r = base_row(cfg, inst, orig, seed);
  try {
    const SdpProblem& p = orig.problem;
    const Index n = p.dim();
    r.k = cfg.kind == ProjectorKind::Identity ? n : projected_dimension(cfg.projection_ratio, n);

    auto t0 = Clock::now();
    auto projector = std::make_shared<const Projector>(sample_projector(cfg.kind, n, r.k, cfg.gamma, seed));
    r.time_sample_s = seconds_since(t0);

    t0 = Clock::now();
    const SdpProblem projected = project_problem(p, projector);
    r.time_project_s = seconds_since(t0);

    t0 = Clock::now();
    Solution ps;
    bool usable = false;
    if (cfg.task == Task::Gap2Sat) {
      FeasibilityResult fr = solve_feasibility(projected, cfg.solver);
      ps = std::move(fr.solution);
      if (fr.status == FeasibilityStatus::Feasible) ps.x = fr.x;
      r.status_proj = std::string(to_string(fr.status));
      usable = fr.status == FeasibilityStatus::Feasible;
    } else {
      ps = solve(projected, cfg.solver);
      r.status_proj = std::string(status_name(ps.status));
      usable = ps.status == SolveStatus::Optimal;
    }
    r.time_proj_solve_s = seconds_since(t0);
    r.iterations_proj = ps.iterations;

    const double spent = cfg.solve_only_timing ? r.time_proj_solve_s
                                               : r.time_sample_s + r.time_project_s + r.time_proj_solve_s;
    if (orig.time_s > 0.0) r.rel_time_pct = 100.0 * spent / orig.time_s;

    if (usable) {
      const Solution lifted = lift_solution(*projector, ps, p);
      const FeasibilityResiduals res = feasibility_residuals(p, lifted.x, lifted.x_lin);
      r.lift_residual = res.max_equality_violation;
      r.lift_min_eigenvalue = res.min_eigenvalue;
      if (cfg.task != Task::Gap2Sat) {
        r.obj_proj_lifted = p.report.apply(lifted.primal_obj);
        if (orig.optimal) {
          r.rel_quality_pct = ratio_pct(*r.obj_proj_lifted, *r.obj_orig, p.sense);
          r.rel_quality_raw_pct = ratio_pct(lifted.primal_obj, orig.solution.primal_obj, p.sense);
        }
      }
    }
  } catch (const std::exception& e) {
    r.status_proj = "error";
    r.error = e.what();
  }
  return r;
}

namespace {

struct Loaded {
  Instance inst;
  OriginalRun orig;
  std::string error;
};

Loaded load_and_solve(const ExperimentConfig& cfg, const InstanceSource& src) {
  Loaded l;
  try {
    l.inst = load_instance(cfg.task, src);
    l.orig = solve_original(cfg.task, l.inst, cfg.solver);
  } catch (const std::exception& e) {
    l.error = e.what();
    if (l.inst.id.empty()) l.inst.id = src.path ? *src.path : src.generator.value_or("?");
  }
  return l;
}

std::vector<ProjectionReport> rows_for(const ExperimentConfig& cfg, const Loaded& l) {
  std::vector<ProjectionReport> rows(cfg.seeds.size());
  if (!l.error.empty()) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      rows[i].instance_id = l.inst.id;
      rows[i].task = std::string(to_string(cfg.task));
      rows[i].seed = cfg.seeds[i];
      rows[i].projector = std::string(to_string(cfg.kind));
      rows[i].gamma = cfg.gamma;
      rows[i].status_orig = "error";
      rows[i].status_proj = "skipped";
      rows[i].error = l.error;
    }
    return rows;
  }
  const unsigned workers = std::min<unsigned>(cfg.threads, static_cast<unsigned>(rows.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = project_and_report(cfg, l.inst, l.orig, cfg.seeds[i]);
    return rows;
  }
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < rows.size(); i += workers) rows[i] = project_and_report(cfg, l.inst, l.orig, cfg.seeds[i]);
    });
  return rows;
}

}  // namespace

std::vector<ProjectionReport> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ProjectionReport> out;
  for (const InstanceSource& src : cfg.sources) {
    const Loaded l = load_and_solve(cfg, src);
    auto rows = rows_for(cfg, l);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

ProjectionReport regenerate_row(const ExperimentConfig& cfg, std::size_t source_index, std::uint64_t seed) {
  cfg.validate();
  if (source_index >= cfg.sources.size()) throw Error(ErrorKind::InvalidConfig, "source index out of range");
  ExperimentConfig one = cfg;
  one.seeds = {seed};
  const Loaded l = load_and_solve(one, cfg.sources[source_index]);
  return rows_for(one, l).front();
}

std::vector<FeasibilityCell> feasibility_experiment(const ExperimentConfig& cfg, const FeasibilityPlan& plan) {
  if (cfg.task != Task::Gap2Sat) throw Error(ErrorKind::InvalidConfig, "feasibility experiment needs task gap2sat");
  cfg.solver.validate();
  if (plan.instances < 1) throw Error(ErrorKind::InvalidConfig, "need at least one instance per cell");
  std::vector<FeasibilityCell> cells;
  for (Index n : plan.sizes)
    for (double ratio : plan.ratios) {
      std::vector<SdpProblem> problems;
      for (Index i = 0; i < plan.instances; ++i) {
        const std::uint64_t s = mix64(plan.instance_seed ^ mix64(static_cast<std::uint64_t>(n) * 1000003ULL +
                                                                 static_cast<std::uint64_t>(std::llround(ratio * 1000)) * 7919ULL +
                                                                 static_cast<std::uint64_t>(i)));
        problems.push_back(gap2sat_sdp(gen_planted_2sat(static_cast<int>(n), ratio, s)));
      }
      for (double pr : plan.projection_ratios) {
        FeasibilityCell cell;
        cell.n = n;
        cell.ratio = ratio;
        cell.projection_ratio = pr;
        cell.instances = plan.instances;
        const auto t0 = Clock::now();
        for (Index i = 0; i < plan.instances; ++i) {
          const SdpProblem& p = problems[static_cast<std::size_t>(i)];
          const Index k = projected_dimension(pr, p.dim());
          const std::uint64_t seed = mix64(cfg.seeds.front() + static_cast<std::uint64_t>(i));
          auto proj = std::make_shared<const Projector>(sample_projector(cfg.kind, p.dim(), k, cfg.gamma, seed));
          const FeasibilityResult fr = solve_feasibility(project_problem(p, proj), cfg.solver);
          switch (fr.status) {
            case FeasibilityStatus::Feasible: ++cell.feasible; break;
            case FeasibilityStatus::Infeasible: ++cell.infeasible; break;
            case FeasibilityStatus::Indeterminate: ++cell.indeterminate; break;
          }
        }
        cell.time_s = seconds_since(t0);
        cell.proportion_pct = 100.0 * static_cast<double>(cell.feasible) / static_cast<double>(cell.instances);
        cells.push_back(cell);
      }
    }
  return cells;
}

std::vector<ProjectionReport> sparsity_sweep(const ExperimentConfig& cfg, const std::vector<double>& gammas) {
  cfg.validate();
  std::vector<Loaded> loaded;
  for (const InstanceSource& src : cfg.sources) loaded.push_back(load_and_solve(cfg, src));
  std::vector<ProjectionReport> out;
  for (double g : gammas) {
    ExperimentConfig c = cfg;
    c.kind = ProjectorKind::SparseSubgaussian;
    c.gamma = g;
    c.validate();
    for (const Loaded& l : loaded) {
      auto rows = rows_for(c, l);
      out.insert(out.end(), rows.begin(), rows.end());
    }
  }
  return out;
}

QualityPoint summarize_quality(double x, const std::vector<ProjectionReport>& rows) {
  QualityPoint q;
  q.x = x;
  q.runs = static_cast<Index>(rows.size());
  std::vector<double> vals;
  for (const auto& r : rows)
    if (r.status_proj == "optimal" && r.rel_quality_pct) vals.push_back(*r.rel_quality_pct);
  q.optimal = static_cast<Index>(vals.size());
  if (vals.empty()) return q;
  double logsum = 0.0, sum = 0.0;
  Index positive = 0;
  for (double v : vals) {
    sum += v;
    if (v > 0.0) logsum += std::log(v), ++positive;
  }
  q.mean = sum / static_cast<double>(vals.size());
  q.geometric_mean = positive == static_cast<Index>(vals.size()) ? std::exp(logsum / static_cast<double>(positive)) : 0.0;
  if (vals.size() > 1) {
    double ss = 0.0;
    for (double v : vals) ss += (v - q.mean) * (v - q.mean);
    q.std_error = std::sqrt(ss / static_cast<double>(vals.size() - 1) / static_cast<double>(vals.size()));
  }
  return q;
}

namespace {

std::string fmt_num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<QualityPoint> gnp_series(const ExperimentConfig& cfg, const std::vector<std::pair<Index, double>>& points,
                                     bool x_is_size, std::uint64_t instance_seed, std::vector<ProjectionReport>* rows) {
  if (cfg.task != Task::Maxcut) throw Error(ErrorKind::InvalidConfig, "quality series need task maxcut");
  std::vector<QualityPoint> out;
  for (const auto& [n, p] : points) {
    ExperimentConfig c = cfg;
    c.sources = {InstanceSource{std::nullopt, "gnp:n=" + std::to_string(n) + ",p=" + fmt_num(p) +
                                                  ",w=unit,seed=" + std::to_string(instance_seed)}};
    const auto r = run_experiment(c);
    out.push_back(summarize_quality(x_is_size ? static_cast<double>(n) : p, r));
    if (rows) rows->insert(rows->end(), r.begin(), r.end());
  }
  return out;
}

}  // namespace

std::vector<QualityPoint> size_sweep(const ExperimentConfig& cfg, const std::vector<Index>& sizes, double density,
                                     std::uint64_t instance_seed, std::vector<ProjectionReport>* rows) {
  std::vector<std::pair<Index, double>> pts;
  for (Index n : sizes) pts.emplace_back(n, density);
  return gnp_series(cfg, pts, true, instance_seed, rows);
}

std::vector<QualityPoint> density_sweep(const ExperimentConfig& cfg, Index n, const std::vector<double>& densities,
                                        std::uint64_t instance_seed, std::vector<ProjectionReport>* rows) {
  std::vector<std::pair<Index, double>> pts;
  for (double d : densities) pts.emplace_back(n, d);
  return gnp_series(cfg, pts, false, instance_seed, rows);
}

}  // namespace rpsdp
