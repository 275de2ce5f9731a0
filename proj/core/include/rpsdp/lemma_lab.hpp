#pragma once

#include "rpsdp/bounds.hpp"
#include "rpsdp/projector.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace rpsdp {

/// Test objects for the matrix lemmas.
struct MatrixSpec {
  /// Rank of Q (QuadraticForm) or A (MatrixInner).
  Index rank_a = 2;
  /// Rank of B (MatrixInner).
  Index rank_b = 2;
  /// Use A = B = e_i e_i^T with i = diagonal_index instead of random low-rank matrices.
  bool unit_diagonal = false;
  Index diagonal_index = 0;
};

enum class PointSet { Sphere, Identical };

enum class Sampler {
  Projector,     // the library sampler selected by `kind`
  DenseGaussian  // independent N(0, 1/k) control
};

struct TrialConfig {
  LemmaId lemma = LemmaId::SquaredNorm;
  Index n = 100;
  Index k = 10;
  double gamma = 1.0;
  double epsilon = 0.5;
  Index trials = 1000;
  std::uint64_t seed = 1;
  /// JLL point count.
  Index points = 10;
  PointSet point_set = PointSet::Sphere;
  MatrixSpec matrix;
  ProjectorKind kind = ProjectorKind::SparseSubgaussian;
  Sampler sampler = Sampler::Projector;
  /// Constant used for bound_probability.
  double c_univ = 1.0;

  void validate() const;
};

struct TrialReport {
  TrialConfig config;
  Index failures = 0;
  double failure_rate = 0.0;
  double q50 = 0.0;
  double q90 = 0.0;
  double q99 = 0.0;
  double max_deviation = 0.0;
  /// Closed-form success probability at config.c_univ.
  double bound_probability = 0.0;
  /// Scale s in ||(1/s) P P^T - I||; 1 outside Spectral. The unnormalized form uses s = k.
  double spectral_scale = 1.0;

  double predicted_failure() const { return 1.0 - bound_probability; }
  /// Binomial standard error of the empirical rate.
  double std_error() const;
};

/// One normalized deviation per trial; the lemma fails on a trial when it exceeds epsilon.
/// Spectral: ||(k/n) P P^T - I||_2. JLL: max over pairs of | ||P(x-y)|| / ||x-y|| - 1 |.
/// SquaredNorm: | ||Px||^2 - 1 |. InnerProduct: |<Px,Py> - <x,y>|.
/// QuadraticForm: |x^T P^T P Q P^T P y - x^T Q y| / (3 ||Q||_F).
/// MatrixInner: |<A,B> - <PAP^T, PBP^T>| / (3 ||A||_F ||B||_*).
std::vector<double> lemma_deviations(const TrialConfig& cfg);

/// Aggregates precomputed deviations under cfg.epsilon.
TrialReport summarize_trials(const TrialConfig& cfg, const std::vector<double>& deviations);

TrialReport run_lemma_trials(const TrialConfig& cfg);

/// Configs differing only in epsilon share one set of samples. Output order follows input.
std::vector<TrialReport> sweep(const std::vector<TrialConfig>& cfgs, unsigned threads = 0);

/// Seed of trial t; depends only on (seed, t).
std::uint64_t trial_seed(std::uint64_t seed, Index trial) noexcept;

/// One JSON object per line.
std::string to_json_line(const TrialReport& r);
void write_json_lines(std::ostream& os, const std::vector<TrialReport>& reports);

}  // namespace rpsdp
