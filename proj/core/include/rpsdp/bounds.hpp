#pragma once

#include "rpsdp/sym_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rpsdp {

enum class LemmaId {
  Spectral,
  JLL,
  SquaredNorm,
  InnerProduct,
  QuadraticForm,
  MatrixInner,
  Feasibility,       // prefactor 16 * sum r_Ai, exponent in delta
  FeasibilityProof,  // prefactor 8 (m+1) * sum r_Ai, exponent in delta
  Optimality,
};

std::string_view to_string(LemmaId id) noexcept;
/// Accepts the names produced by to_string (case-insensitive). Throws unknown-lemma.
LemmaId parse_lemma(std::string_view name);

/// Exponent applied to gamma inside the minimal projection dimension.
enum class GammaExponent { Printed, Proof };

struct Ranks {
  double r_c = 1.0;
  double r_x = 1.0;
  std::vector<double> r_a;

  /// r_C r_X + sum_i r_Ai r_X.
  double weighted_sum() const;
};

struct BoundParams {
  double epsilon = 0.5;
  double delta = 0.1;
  double gamma = 1.0;
  Index k = 1;
  Index n = 1;
  /// Constraint count; for JLL, the number of points.
  Index m = 1;
  double w = 1.0;
  Ranks ranks;
  /// Rank of Q (QuadraticForm) or of A (MatrixInner).
  double rank_a = 1.0;
  /// Rank of B (MatrixInner).
  double rank_b = 1.0;
  double c_univ = 1.0;

  void validate() const;
};

/// 3 (m+1) delta w^2 max ||A_i||_F.
double feasibility_epsilon(double delta, Index m, double w, double max_frobenius_a);

struct GapTerm {
  double z = 0.0;
  double frobenius_a = 0.0;
};

/// 3 eps ||X*||_* (||C||_F + sum |z_i| ||A_i||_F). With `printed` the second
/// argument of each max drops its eps factor.
double optimality_gap(double epsilon, double frobenius_c, double nuclear_x, const std::vector<GapTerm>& terms,
                      bool printed = false);

/// Smallest k with k^5 >= ln(8 W / delta) / (C eps^2 gamma^e), W = ranks.weighted_sum(), at least 1.
Index min_projection_dim(double delta, double epsilon, double gamma, const Ranks& ranks, double c_univ,
                         GammaExponent exponent = GammaExponent::Printed);

/// Closed-form success probability, clamped to [0, 1].
double success_probability(LemmaId id, const BoundParams& params);
/// 1 - success_probability.
double failure_probability(LemmaId id, const BoundParams& params);

/// Failure probability grows with C for Spectral and shrinks for every other lemma.
bool failure_increases_with_constant(LemmaId id) noexcept;

struct CalibrationPoint {
  Index n = 0;
  Index k = 0;
  double gamma = 1.0;
  double epsilon = 0.5;
};

struct CalibrationOptions {
  Index trials = 10000;
  std::uint64_t seed = 1;
  /// JLL point count.
  Index points = 10;
  Index rank_a = 2;
  Index rank_b = 2;
  double ceiling = 1e6;
  double floor = 1e-30;
};

struct ObservedRate {
  CalibrationPoint point;
  double failure_rate = 0.0;
};

struct CalibrationResult {
  LemmaId lemma = LemmaId::SquaredNorm;
  double c_univ = 1.0;
  /// Every grid point left C unconstrained up to the search ceiling (floor for Spectral).
  bool bound_hit = false;
  /// Least-squares fit of log failure over points with a rate strictly in (0, 1); diagnostic only.
  std::optional<double> c_least_squares;
  Index trials = 0;
  std::uint64_t seed = 0;
  std::string grid_hash;
  std::string grid;
  std::vector<ObservedRate> observed;
};

/// Largest C (smallest for Spectral) whose predicted failure covers every observed rate.
CalibrationResult fit_constant(LemmaId id, const std::vector<ObservedRate>& observed, const CalibrationOptions& opts);

/// Runs the Monte Carlo trials on `grid`, then fits. Throws insufficient-trials
/// below 1000 trials and degenerate-grid on an empty or invalid grid.
CalibrationResult calibrate_constant(LemmaId id, const std::vector<CalibrationPoint>& grid,
                                     const CalibrationOptions& opts);

/// BoundParams matching a lemma-lab grid point under the given options.
BoundParams params_for_point(LemmaId id, const CalibrationPoint& pt, const CalibrationOptions& opts, double c_univ);

std::string grid_description(const std::vector<CalibrationPoint>& grid);
std::string grid_hash(LemmaId id, const std::vector<CalibrationPoint>& grid, const CalibrationOptions& opts);

/// Versioned key=value artifact.
void write_calibration_artifact(const std::string& path, const CalibrationResult& result);
std::string calibration_artifact_text(const CalibrationResult& result);
/// Reads lemma_id, c_univ, grid hash, trials and bound flag back.
CalibrationResult read_calibration_artifact(const std::string& path);

}  // namespace rpsdp
