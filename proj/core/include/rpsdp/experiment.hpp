#pragma once

#include "rpsdp/graph.hpp"
#include "rpsdp/ipm_solver.hpp"
#include "rpsdp/projector.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rpsdp {

enum class Task { Maxcut, Max2Sat, Gap2Sat, StableSet2, Lemmas, Calibrate };

std::string_view to_string(Task t) noexcept;
Task parse_task(std::string_view name);

/// `family:key=value,...,flag`. Families: gnp(n,p,w=unit|pm1,seed), petersen(v,k),
/// helm(v), jahangir(v,k), urand(n,c,seed), planted(n,c,seed). Graph families accept
/// the `complement` flag.
struct GeneratorSpec {
  std::string family;
  std::map<std::string, std::string> params;
  bool complement = false;
  std::string text;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
};

GeneratorSpec parse_generator_spec(std::string_view text);

/// Exactly one of `path` and `generator` is set.
struct InstanceSource {
  std::optional<std::string> path;
  std::optional<std::string> generator;
};

struct Instance {
  std::string id;
  std::optional<Graph> graph;
  std::optional<CnfFormula> formula;
};

/// Reads or generates the input appropriate for `task`.
Instance load_instance(Task task, const InstanceSource& source);
/// Builds the SDP for an instance. Gap2Sat yields the feasibility problem.
SdpProblem build_problem(Task task, const Instance& inst);

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
  Task task = Task::Maxcut;
  std::vector<InstanceSource> sources;
  /// k = max(1, round(ratio * n)).
  double projection_ratio = 0.1;
  ProjectorKind kind = ProjectorKind::SparseSubgaussian;
  /// Density gamma (q for Achlioptas).
  double gamma = 0.3;
  std::vector<std::uint64_t> seeds{1};
  SolverOptions solver;
  /// Relative time counts only the projected solve.
  bool solve_only_timing = false;
  /// Workers for the per-seed projected solves; rows keep seed order.
  unsigned threads = 1;
  std::optional<std::string> out_path;
  OutputFormat format = OutputFormat::Csv;

  void validate() const;
};

Index projected_dimension(double ratio, Index n);

struct ProjectionReport {
  std::string instance_id;
  std::string task;
  Index n = 0;
  Index m = 0;
  /// Edges for graph tasks, clauses for formula tasks.
  Index items = 0;
  Index k = 0;
  std::string projector;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  double time_orig_s = 0.0;
  double time_sample_s = 0.0;
  double time_project_s = 0.0;
  double time_proj_solve_s = 0.0;
  std::optional<double> obj_orig;
  std::optional<double> obj_proj_lifted;
  std::optional<double> rel_time_pct;
  std::optional<double> rel_quality_pct;
  /// Quality on the raw SDP objectives, without the report offset.
  std::optional<double> rel_quality_raw_pct;
  std::string status_orig;
  std::string status_proj;
  std::optional<double> lift_residual;
  std::optional<double> lift_min_eigenvalue;
  int iterations_orig = 0;
  int iterations_proj = 0;
  std::string error;
};

/// True when the row records a solver failure (not an infeasible projection).
bool solver_failed(const ProjectionReport& r);

/// Solved original problem, reused across seeds.
struct OriginalRun {
  SdpProblem problem;
  Solution solution;
  /// SolveStatus, or FeasibilityStatus for Gap2Sat.
  std::string status;
  bool optimal = false;
  double time_s = 0.0;
};

OriginalRun solve_original(Task task, const Instance& inst, const SolverOptions& opts);

/// One projected run for a solved original.
ProjectionReport project_and_report(const ExperimentConfig& cfg, const Instance& inst, const OriginalRun& orig,
                                    std::uint64_t seed);

/// Every (source, seed) pair, source-major. Errors become rows.
std::vector<ProjectionReport> run_experiment(const ExperimentConfig& cfg);

/// Re-solves one row from scratch.
ProjectionReport regenerate_row(const ExperimentConfig& cfg, std::size_t source_index, std::uint64_t seed);

struct FeasibilityCell {
  Index n = 0;
  double ratio = 0.0;
  double projection_ratio = 0.0;
  Index instances = 0;
  Index feasible = 0;
  Index infeasible = 0;
  Index indeterminate = 0;
  double proportion_pct = 0.0;
  double time_s = 0.0;
};

struct FeasibilityPlan {
  std::vector<Index> sizes{500};
  std::vector<double> ratios{0.5, 1.0, 2.0};
  std::vector<double> projection_ratios{0.2, 0.5};
  Index instances = 10;
  std::uint64_t instance_seed = 1;
};

/// Planted-satisfiable 2-SAT instances; per cell, how many projected gap relaxations stay feasible.
std::vector<FeasibilityCell> feasibility_experiment(const ExperimentConfig& cfg, const FeasibilityPlan& plan);

/// run_experiment once per gamma with the sparse sub-gaussian projector.
std::vector<ProjectionReport> sparsity_sweep(const ExperimentConfig& cfg, const std::vector<double>& gammas);

struct QualityPoint {
  double x = 0.0;
  Index runs = 0;
  Index optimal = 0;
  double geometric_mean = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
};

/// Geometric mean (and plain mean with its standard error) of rel_quality over Optimal rows.
QualityPoint summarize_quality(double x, const std::vector<ProjectionReport>& rows);

/// G(n, density) per size, one instance each (generator seed `instance_seed`), cfg.seeds projections.
std::vector<QualityPoint> size_sweep(const ExperimentConfig& cfg, const std::vector<Index>& sizes, double density,
                                     std::uint64_t instance_seed = 1, std::vector<ProjectionReport>* rows = nullptr);
std::vector<QualityPoint> density_sweep(const ExperimentConfig& cfg, Index n, const std::vector<double>& densities,
                                        std::uint64_t instance_seed = 1,
                                        std::vector<ProjectionReport>* rows = nullptr);

}  // namespace rpsdp
