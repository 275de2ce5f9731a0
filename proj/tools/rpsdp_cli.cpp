// rpsdp: batch driver for projected SDP experiments, lemma trials and calibration.

#include "rpsdp/bounds.hpp"
#include "rpsdp/error.hpp"
#include "rpsdp/experiment.hpp"
#include "rpsdp/lemma_lab.hpp"
#include "rpsdp/report_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

using rpsdp::Index;

struct Shared {
  std::string input;
  std::string gen;
  double proj_ratio = 0.1;
  std::string projector = "subgaussian";
  double gamma = 0.3;
  int seeds = 0;
  std::vector<std::uint64_t> seed_list;
  double tol = 0.0;
  int max_iterations = 0;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
};

struct SdpFlags {
  bool solve_only_timing = false;
  std::vector<double> gamma_sweep;
  std::vector<Index> sizes;
  std::vector<double> densities;
  double density = 0.3;
  Index n = 0;
  std::uint64_t instance_seed = 1;
  std::string rows_out;
  // gap2sat proportion table
  bool feasibility = false;
  std::vector<double> ratios{0.5, 1.0, 2.0};
  std::vector<double> proj_ratios{0.2, 0.5};
  Index instances = 10;
};

struct LemmaFlags {
  std::string lemma = "squared-norm";
  Index n = 200;
  Index k = 0;
  std::vector<double> epsilons{0.5};
  Index trials = 1000;
  std::uint64_t seed = 1;
  Index points = 10;
  Index rank_a = 2;
  Index rank_b = 2;
  double c_univ = 1.0;
  std::string calibration;
  bool dense_control = false;
};

struct CalibrateFlags {
  std::string lemma = "squared-norm";
  std::vector<Index> ns{250, 600};
  std::vector<double> k_ratios{0.1, 0.3};
  std::vector<double> gammas{0.1, 0.5, 1.0};
  std::vector<double> epsilons{0.1, 0.15, 0.2, 0.3, 0.4, 0.5};
  Index trials = 10000;
  std::uint64_t seed = 99;
  Index points = 10;
  Index rank_a = 2;
  Index rank_b = 2;
};

void add_shared(CLI::App* app, Shared& s, bool with_input) {
  if (with_input) {
    auto* in = app->add_option("--input", s.input, "Instance file (edge list or DIMACS CNF)");
    auto* gen = app->add_option("--gen", s.gen, "Generator spec, e.g. gnp:n=800,p=0.06,w=unit");
    in->excludes(gen);
  }
  app->add_option("--proj-ratio", s.proj_ratio, "Projection ratio k/n in (0, 1]");
  app->add_option("--projector", s.projector, "Projector family")
      ->check(CLI::IsMember({"subgaussian", "achlioptas", "identity"}));
  app->add_option("--gamma", s.gamma, "Projector density (q for achlioptas)");
  auto* seeds = app->add_option("--seeds", s.seeds, "Use seeds 1..N")->check(CLI::PositiveNumber);
  app->add_option("--seed-list", s.seed_list, "Explicit seeds")->delimiter(',')->excludes(seeds);
  app->add_option("--tol", s.tol, "Gap and residual tolerance")->check(CLI::PositiveNumber);
  app->add_option("--max-iter", s.max_iterations, "Solver iteration cap")->check(CLI::PositiveNumber);
  app->add_option("--out", s.out, "Output path (stdout when omitted)");
  app->add_option("--format", s.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--threads", s.threads, "Worker threads")->check(CLI::PositiveNumber);
}

std::vector<std::uint64_t> seed_values(const Shared& s) {
  if (!s.seed_list.empty()) return s.seed_list;
  std::vector<std::uint64_t> out;
  for (int i = 1; i <= std::max(1, s.seeds); ++i) out.push_back(static_cast<std::uint64_t>(i));
  return out;
}

rpsdp::ProjectorKind projector_kind(const std::string& name) {
  if (name == "achlioptas") return rpsdp::ProjectorKind::Achlioptas;
  if (name == "identity") return rpsdp::ProjectorKind::Identity;
  return rpsdp::ProjectorKind::SparseSubgaussian;
}

rpsdp::ExperimentConfig experiment_config(rpsdp::Task task, const Shared& s, const SdpFlags& f, bool needs_source) {
  rpsdp::ExperimentConfig cfg;
  cfg.task = task;
  if (needs_source) {
    if (s.input.empty() == s.gen.empty())
      throw rpsdp::Error(rpsdp::ErrorKind::InvalidConfig, "give exactly one of --input and --gen");
    rpsdp::InstanceSource src;
    if (!s.input.empty()) {
      if (!std::filesystem::exists(s.input)) throw rpsdp::Error(rpsdp::ErrorKind::InvalidConfig, "no such file: " + s.input);
      src.path = s.input;
    } else {
      rpsdp::parse_generator_spec(s.gen);  // reject malformed specs before any solve
      src.generator = s.gen;
    }
    cfg.sources.push_back(src);
  }
  cfg.projection_ratio = s.proj_ratio;
  cfg.kind = projector_kind(s.projector);
  cfg.gamma = s.gamma;
  cfg.seeds = seed_values(s);
  if (s.tol > 0.0) cfg.solver.tol_gap = cfg.solver.tol_primal = cfg.solver.tol_dual = s.tol;
  if (s.max_iterations > 0) cfg.solver.max_iterations = s.max_iterations;
  cfg.solve_only_timing = f.solve_only_timing;
  cfg.threads = s.threads;
  if (!s.out.empty()) cfg.out_path = s.out;
  cfg.format = s.format == "json" ? rpsdp::OutputFormat::Json : rpsdp::OutputFormat::Csv;
  cfg.validate();
  return cfg;
}

std::string render_rows(const std::vector<rpsdp::ProjectionReport>& rows, bool json) {
  std::ostringstream os;
  json ? rpsdp::write_reports_json(os, rows) : rpsdp::write_reports_csv(os, rows);
  return os.str();
}

int rows_exit(const std::vector<rpsdp::ProjectionReport>& rows) {
  for (const auto& r : rows)
    if (rpsdp::solver_failed(r)) return kExitSolver;
  return kExitOk;
}

int run_sdp(rpsdp::Task task, const Shared& s, const SdpFlags& f) {
  const bool json = s.format == "json";
  const bool series = !f.sizes.empty() || !f.densities.empty();

  if (task == rpsdp::Task::Gap2Sat && f.feasibility) {
    const auto cfg = experiment_config(task, s, f, false);
    rpsdp::FeasibilityPlan plan;
    if (!f.sizes.empty()) plan.sizes = f.sizes;
    plan.ratios = f.ratios;
    plan.projection_ratios = f.proj_ratios;
    plan.instances = f.instances;
    plan.instance_seed = f.instance_seed;
    const auto cells = rpsdp::feasibility_experiment(cfg, plan);
    std::ostringstream os;
    json ? rpsdp::write_feasibility_json(os, cells) : rpsdp::write_feasibility_csv(os, cells);
    rpsdp::write_output(s.out, std::cout, os.str());
    for (const auto& c : cells)
      if (c.indeterminate > 0) return kExitSolver;
    return kExitOk;
  }

  if (series) {
    if (task != rpsdp::Task::Maxcut)
      throw rpsdp::Error(rpsdp::ErrorKind::InvalidConfig, "--sizes/--densities need the maxcut task");
    const auto cfg = experiment_config(task, s, f, false);
    std::vector<rpsdp::ProjectionReport> rows;
    std::vector<rpsdp::QualityPoint> pts;
    std::string x_name;
    if (!f.sizes.empty()) {
      pts = rpsdp::size_sweep(cfg, f.sizes, f.density, f.instance_seed, &rows);
      x_name = "n";
    } else {
      if (f.n < 2) throw rpsdp::Error(rpsdp::ErrorKind::InvalidConfig, "--densities needs --n");
      pts = rpsdp::density_sweep(cfg, f.n, f.densities, f.instance_seed, &rows);
      x_name = "density";
    }
    std::ostringstream os;
    json ? rpsdp::write_quality_json(os, pts, x_name) : rpsdp::write_quality_csv(os, pts, x_name);
    rpsdp::write_output(s.out, std::cout, os.str());
    if (!f.rows_out.empty()) rpsdp::write_output(f.rows_out, std::cout, render_rows(rows, json));
    return rows_exit(rows);
  }

  const auto cfg = experiment_config(task, s, f, true);
  const auto rows = f.gamma_sweep.empty() ? rpsdp::run_experiment(cfg) : rpsdp::sparsity_sweep(cfg, f.gamma_sweep);
  rpsdp::write_output(s.out, std::cout, render_rows(rows, json));
  return rows_exit(rows);
}

void add_sdp_flags(CLI::App* app, SdpFlags& f, rpsdp::Task task) {
  app->add_flag("--solve-only-timing", f.solve_only_timing, "Relative time counts only the projected solve");
  app->add_option("--gamma-sweep", f.gamma_sweep, "Run once per density with the sub-gaussian projector")
      ->delimiter(',');
  app->add_option("--instance-seed", f.instance_seed, "Generator seed for sweeps and proportion tables");
  if (task == rpsdp::Task::Maxcut) {
    app->add_option("--sizes", f.sizes, "Size series on G(n, density)")->delimiter(',');
    app->add_option("--densities", f.densities, "Density series on G(n, p) at --n")->delimiter(',');
    app->add_option("--density", f.density, "Edge density for --sizes");
    app->add_option("--n", f.n, "Vertex count for --densities");
    app->add_option("--rows-out", f.rows_out, "Also write the per-run rows of a series");
  }
  if (task == rpsdp::Task::Gap2Sat) {
    app->add_flag("--feasibility", f.feasibility, "Proportion of planted instances still feasible after projection");
    app->add_option("--sizes", f.sizes, "Variable counts for --feasibility")->delimiter(',');
    app->add_option("--ratios", f.ratios, "Clause ratios for --feasibility")->delimiter(',');
    app->add_option("--proj-ratios", f.proj_ratios, "Projection ratios for --feasibility")->delimiter(',');
    app->add_option("--instances", f.instances, "Instances per cell")->check(CLI::PositiveNumber);
  }
}

rpsdp::CalibrationOptions calibration_options(Index trials, std::uint64_t seed, Index points, Index ra, Index rb) {
  rpsdp::CalibrationOptions o;
  o.trials = trials;
  o.seed = seed;
  o.points = points;
  o.rank_a = ra;
  o.rank_b = rb;
  return o;
}

int run_lemmas(const Shared& s, const LemmaFlags& f) {
  std::vector<rpsdp::TrialConfig> cfgs;
  double c = f.c_univ;
  const auto lemma = rpsdp::parse_lemma(f.lemma);
  if (!f.calibration.empty()) {
    const auto cal = rpsdp::read_calibration_artifact(f.calibration);
    if (cal.lemma != lemma)
      throw rpsdp::Error(rpsdp::ErrorKind::InvalidConfig, "calibration artifact is for another lemma");
    c = cal.c_univ;
  }
  const Index k = f.k > 0 ? f.k : rpsdp::projected_dimension(s.proj_ratio, f.n);
  for (double eps : f.epsilons) {
    rpsdp::TrialConfig t;
    t.lemma = lemma;
    t.n = f.n;
    t.k = k;
    t.gamma = s.gamma;
    t.epsilon = eps;
    t.trials = f.trials;
    t.seed = f.seed;
    t.points = f.points;
    t.matrix.rank_a = f.rank_a;
    t.matrix.rank_b = f.rank_b;
    t.kind = projector_kind(s.projector);
    t.sampler = f.dense_control ? rpsdp::Sampler::DenseGaussian : rpsdp::Sampler::Projector;
    t.c_univ = c;
    t.validate();
    cfgs.push_back(t);
  }
  const auto reports = rpsdp::sweep(cfgs, s.threads);
  std::ostringstream os;
  rpsdp::write_json_lines(os, reports);
  rpsdp::write_output(s.out, std::cout, os.str());
  return kExitOk;
}

int run_calibrate(const Shared& s, const CalibrateFlags& f) {
  const auto lemma = rpsdp::parse_lemma(f.lemma);
  std::vector<rpsdp::CalibrationPoint> grid;
  for (Index n : f.ns)
    for (double r : f.k_ratios)
      for (double g : f.gammas)
        for (double e : f.epsilons) grid.push_back({n, rpsdp::projected_dimension(r, n), g, e});
  const auto opts = calibration_options(f.trials, f.seed, f.points, f.rank_a, f.rank_b);
  const auto res = rpsdp::calibrate_constant(lemma, grid, opts);
  if (s.out.empty()) std::cout << rpsdp::calibration_artifact_text(res);
  else rpsdp::write_calibration_artifact(s.out, res);
  std::cerr << "C = " << res.c_univ << (res.bound_hit ? " (search bound hit)" : "") << '\n';
  return kExitOk;
}

bool config_kind(rpsdp::ErrorKind k) {
  switch (k) {
    case rpsdp::ErrorKind::InvalidConfig:
    case rpsdp::ErrorKind::InvalidParameters:
    case rpsdp::ErrorKind::InvalidDensity:
    case rpsdp::ErrorKind::InvalidDimension:
    case rpsdp::ErrorKind::UnknownLemma:
    case rpsdp::ErrorKind::InsufficientTrials:
    case rpsdp::ErrorKind::DegenerateGrid:
    case rpsdp::ErrorKind::NonpositiveInput:
    case rpsdp::ErrorKind::MalformedLine:
    case rpsdp::ErrorKind::MalformedHeader:
    case rpsdp::ErrorKind::VertexOutOfRange:
    case rpsdp::ErrorKind::DuplicateEdge:
    case rpsdp::ErrorKind::ClauseTooLong:
    case rpsdp::ErrorKind::WeightedInput:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random projections for semidefinite programs"};
  app.require_subcommand(1);

  struct TaskCmd {
    rpsdp::Task task;
    const char* help;
    Shared shared;
    SdpFlags flags;
    CLI::App* cmd = nullptr;
  };
  std::vector<TaskCmd> tasks;
  tasks.push_back({rpsdp::Task::Maxcut, "MAXCUT relaxation", {}, {}});
  tasks.push_back({rpsdp::Task::Max2Sat, "MAX-2-SAT relaxation", {}, {}});
  tasks.push_back({rpsdp::Task::Gap2Sat, "Gap relaxation of 2-SAT (feasibility)", {}, {}});
  tasks.push_back({rpsdp::Task::StableSet2, "Level-2 Lasserre bound for stable set", {}, {}});
  for (auto& t : tasks) {
    t.cmd = app.add_subcommand(std::string(rpsdp::to_string(t.task)), t.help);
    add_shared(t.cmd, t.shared, true);
    add_sdp_flags(t.cmd, t.flags, t.task);
  }

  Shared lemma_shared;
  LemmaFlags lemma_flags;
  lemma_shared.gamma = 1.0;
  auto* lemmas = app.add_subcommand("lemmas", "Monte Carlo trials of a concentration lemma (JSON lines)");
  add_shared(lemmas, lemma_shared, false);
  lemmas->add_option("--lemma", lemma_flags.lemma, "spectral, jll, squared-norm, inner-product, quadratic-form, matrix-inner");
  lemmas->add_option("--n", lemma_flags.n, "Ambient dimension");
  lemmas->add_option("--k", lemma_flags.k, "Projected dimension (overrides --proj-ratio)");
  lemmas->add_option("--eps", lemma_flags.epsilons, "Deviation thresholds")->delimiter(',');
  lemmas->add_option("--trials", lemma_flags.trials, "Trials per configuration");
  lemmas->add_option("--seed", lemma_flags.seed, "Base seed");
  lemmas->add_option("--points", lemma_flags.points, "JLL point count");
  lemmas->add_option("--rank-a", lemma_flags.rank_a, "Rank of Q or A");
  lemmas->add_option("--rank-b", lemma_flags.rank_b, "Rank of B");
  lemmas->add_option("--c-univ", lemma_flags.c_univ, "Universal constant for the predicted probability");
  lemmas->add_option("--calibration", lemma_flags.calibration, "Read the constant from a calibration artifact");
  lemmas->add_flag("--dense-control", lemma_flags.dense_control, "Sample a dense N(0, 1/k) control instead");

  Shared cal_shared;
  CalibrateFlags cal_flags;
  auto* calibrate = app.add_subcommand("calibrate", "Fit the universal constant of a lemma on a trial grid");
  calibrate->add_option("--lemma", cal_flags.lemma, "Lemma name");
  calibrate->add_option("--n", cal_flags.ns, "Ambient dimensions")->delimiter(',');
  calibrate->add_option("--k-ratios", cal_flags.k_ratios, "Ratios k/n")->delimiter(',');
  calibrate->add_option("--gammas", cal_flags.gammas, "Projector densities")->delimiter(',');
  calibrate->add_option("--eps", cal_flags.epsilons, "Deviation thresholds")->delimiter(',');
  calibrate->add_option("--trials", cal_flags.trials, "Trials per grid point");
  calibrate->add_option("--seed", cal_flags.seed, "Base seed");
  calibrate->add_option("--points", cal_flags.points, "JLL point count");
  calibrate->add_option("--rank-a", cal_flags.rank_a, "Rank of Q or A");
  calibrate->add_option("--rank-b", cal_flags.rank_b, "Rank of B");
  calibrate->add_option("--out", cal_shared.out, "Artifact path (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (auto& t : tasks)
      if (t.cmd->parsed()) return run_sdp(t.task, t.shared, t.flags);
    if (lemmas->parsed()) return run_lemmas(lemma_shared, lemma_flags);
    if (calibrate->parsed()) return run_calibrate(cal_shared, cal_flags);
  } catch (const rpsdp::Error& e) {
    std::cerr << "rpsdp: " << e.what() << '\n';
    return config_kind(e.kind()) ? kExitConfig : 1;
  } catch (const std::exception& e) {
    std::cerr << "rpsdp: " << e.what() << '\n';
    return 1;
  }
  return kExitConfig;
}
