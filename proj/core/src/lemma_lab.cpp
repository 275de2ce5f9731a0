#include "rpsdp/lemma_lab.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/linalg.hpp"
#include "rpsdp/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

namespace rpsdp {

namespace {

bool lab_lemma(LemmaId id) {
  switch (id) {
    case LemmaId::Spectral:
    case LemmaId::JLL:
    case LemmaId::SquaredNorm:
    case LemmaId::InnerProduct:
    case LemmaId::QuadraticForm:
    case LemmaId::MatrixInner: return true;
    default: return false;
  }
}

// Either a library projector or a dense Gaussian control, seen through the products the lemmas need.
class TrialProjector {
 public:
  TrialProjector(const TrialConfig& cfg, std::uint64_t seed) {
    if (cfg.sampler == Sampler::DenseGaussian) {
      const CounterRng rng(seed, 0x5eed);
      const double scale = 1.0 / std::sqrt(static_cast<double>(cfg.k));
      dense_.resize(cfg.k, cfg.n);
      for (Index j = 0; j < cfg.n; ++j)
        for (Index i = 0; i < cfg.k; ++i)
          dense_(i, j) = scale * rng.normal(static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(i));
    } else {
      sparse_ = sample_projector(cfg.kind, cfg.n, cfg.k, cfg.gamma, seed).matrix();
      use_sparse_ = true;
    }
  }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& m) const {
    if (use_sparse_) return sparse_ * m;
    return dense_ * m;
  }
  Eigen::MatrixXd apply_transpose(const Eigen::MatrixXd& m) const {
    if (use_sparse_) return sparse_.transpose() * m;
    return dense_.transpose() * m;
  }
  Eigen::MatrixXd gram() const {
    if (use_sparse_) return Eigen::MatrixXd(sparse_ * sparse_.transpose());
    return dense_ * dense_.transpose();
  }
  Eigen::VectorXd column(Index j) const {
    if (use_sparse_) return Eigen::VectorXd(sparse_.col(j));
    return dense_.col(j);
  }

 private:
  bool use_sparse_ = false;
  Projector::SparseMatrix sparse_;
  Eigen::MatrixXd dense_;
};

Eigen::VectorXd unit_vector(const CounterRng& rng, Index n, std::uint64_t tag) {
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = rng.normal(tag, static_cast<std::uint64_t>(i));
  const double norm = v.norm();
  return norm > 0.0 ? Eigen::VectorXd(v / norm) : Eigen::VectorXd(Eigen::VectorXd::Unit(n, 0));
}

// U Sigma U^T with orthonormal U (n x r) and ||Sigma||_F = 1.
struct LowRank {
  Eigen::MatrixXd u;
  Eigen::VectorXd sigma;
};

LowRank low_rank(const CounterRng& rng, Index n, Index r, std::uint64_t tag) {
  Eigen::MatrixXd g(n, r);
  for (Index j = 0; j < r; ++j)
    for (Index i = 0; i < n; ++i) g(i, j) = rng.normal(tag, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  // Modified Gram-Schmidt; r is small.
  for (Index j = 0; j < r; ++j) {
    for (Index i = 0; i < j; ++i) g.col(j) -= g.col(i).dot(g.col(j)) * g.col(i);
    g.col(j).normalize();
  }
  LowRank out;
  out.u = std::move(g);
  out.sigma.resize(r);
  for (Index j = 0; j < r; ++j) out.sigma[j] = rng.normal(tag + 1, static_cast<std::uint64_t>(j));
  const double norm = out.sigma.norm();
  out.sigma /= norm > 0.0 ? norm : 1.0;
  return out;
}

// <U_A S_A U_A^T, U_B S_B U_B^T> from the cross Gram U_A^T U_B.
double low_rank_inner(const Eigen::MatrixXd& cross, const Eigen::VectorXd& sa, const Eigen::VectorXd& sb) {
  double s = 0.0;
  for (Index a = 0; a < cross.rows(); ++a)
    for (Index b = 0; b < cross.cols(); ++b) s += sa[a] * sb[b] * cross(a, b) * cross(a, b);
  return s;
}

double one_trial(const TrialConfig& cfg, Index t) {
  const std::uint64_t seed = trial_seed(cfg.seed, t);
  const TrialProjector p(cfg, seed);
  const CounterRng rng(seed, 0x0b1ec7);
  switch (cfg.lemma) {
    case LemmaId::Spectral: {
      Eigen::MatrixXd g = p.gram() * (static_cast<double>(cfg.k) / static_cast<double>(cfg.n));
      g.diagonal().array() -= 1.0;
      return spectral_norm(g);
    }
    case LemmaId::JLL: {
      Eigen::MatrixXd x(cfg.n, cfg.points);
      for (Index i = 0; i < cfg.points; ++i)
        x.col(i) = unit_vector(rng, cfg.n, cfg.point_set == PointSet::Identical ? 0 : static_cast<std::uint64_t>(i));
      const Eigen::MatrixXd y = p.apply(x);
      double worst = 0.0;
      for (Index i = 0; i < cfg.points; ++i)
        for (Index j = i + 1; j < cfg.points; ++j) {
          const double d = (x.col(i) - x.col(j)).norm();
          if (d == 0.0) continue;
          worst = std::max(worst, std::abs((y.col(i) - y.col(j)).norm() / d - 1.0));
        }
      return worst;
    }
    case LemmaId::SquaredNorm: {
      const Eigen::VectorXd x = unit_vector(rng, cfg.n, 0);
      return std::abs(p.apply(x).squaredNorm() - 1.0);
    }
    case LemmaId::InnerProduct: {
      Eigen::MatrixXd xy(cfg.n, 2);
      xy.col(0) = unit_vector(rng, cfg.n, 0);
      xy.col(1) = unit_vector(rng, cfg.n, 1);
      const Eigen::MatrixXd pxy = p.apply(xy);
      return std::abs(pxy.col(0).dot(pxy.col(1)) - xy.col(0).dot(xy.col(1)));
    }
    case LemmaId::QuadraticForm: {
      Eigen::MatrixXd xy(cfg.n, 2);
      xy.col(0) = unit_vector(rng, cfg.n, 0);
      xy.col(1) = unit_vector(rng, cfg.n, 1);
      const LowRank q = low_rank(rng, cfg.n, cfg.matrix.rank_a, 10);
      const Eigen::MatrixXd ptp = p.apply_transpose(p.apply(xy));  // P^T P [x y]
      const Eigen::MatrixXd a = q.u.transpose() * xy;
      const Eigen::MatrixXd b = q.u.transpose() * ptp;
      const double exact = a.col(0).dot(q.sigma.cwiseProduct(a.col(1)));
      const double sketched = b.col(0).dot(q.sigma.cwiseProduct(b.col(1)));
      return std::abs(sketched - exact) / 3.0;
    }
    case LemmaId::MatrixInner: {
      if (cfg.matrix.unit_diagonal) {
        const double c = p.column(cfg.matrix.diagonal_index).squaredNorm();
        return std::abs(1.0 - c * c) / 3.0;
      }
      const LowRank a = low_rank(rng, cfg.n, cfg.matrix.rank_a, 10);
      const LowRank b = low_rank(rng, cfg.n, cfg.matrix.rank_b, 20);
      const double exact = low_rank_inner(a.u.transpose() * b.u, a.sigma, b.sigma);
      const Eigen::MatrixXd pa = p.apply(a.u), pb = p.apply(b.u);
      const double sketched = low_rank_inner(pa.transpose() * pb, a.sigma, b.sigma);
      return std::abs(exact - sketched) / (3.0 * b.sigma.lpNorm<1>());
    }
    default: break;
  }
  throw Error(ErrorKind::InvalidConfig, "lemma has no Monte Carlo statistic");
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned t = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(1, work)));
}

}  // namespace

void TrialConfig::validate() const {
  if (!lab_lemma(lemma)) throw Error(ErrorKind::InvalidConfig, "lemma '" + std::string(to_string(lemma)) + "' has no trial statistic");
  if (n < 1 || k < 1 || k > n) throw Error(ErrorKind::InvalidConfig, "need 1 <= k <= n");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw Error(ErrorKind::InvalidConfig, "gamma must lie in (0, 1]");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorKind::InvalidConfig, "epsilon must lie in (0, 1)");
  if (trials < 1) throw Error(ErrorKind::InvalidConfig, "trials must be >= 1");
  if (!(c_univ > 0.0)) throw Error(ErrorKind::InvalidConfig, "universal constant must be positive");
  if (lemma == LemmaId::JLL && points < 2) throw Error(ErrorKind::InvalidConfig, "JLL needs at least two points");
  if (lemma == LemmaId::QuadraticForm || lemma == LemmaId::MatrixInner) {
    if (matrix.rank_a < 1 || matrix.rank_a > n || matrix.rank_b < 1 || matrix.rank_b > n)
      throw Error(ErrorKind::InvalidConfig, "matrix ranks must lie in [1, n]");
    if (matrix.unit_diagonal && (matrix.diagonal_index < 0 || matrix.diagonal_index >= n))
      throw Error(ErrorKind::InvalidConfig, "diagonal index out of range");
  }
  if (kind == ProjectorKind::Identity && k != n) throw Error(ErrorKind::InvalidConfig, "identity projector needs k = n");
}

double TrialReport::std_error() const {
  const double t = static_cast<double>(config.trials);
  return t > 0 ? std::sqrt(failure_rate * (1.0 - failure_rate) / t) : 0.0;
}

std::uint64_t trial_seed(std::uint64_t seed, Index trial) noexcept {
  return mix64(mix64(seed) ^ mix64(static_cast<std::uint64_t>(trial) + 0x7f4a7c159e3779b9ULL));
}

namespace {

std::vector<double> deviations_parallel(const TrialConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<double> dev(static_cast<std::size_t>(cfg.trials));
  const unsigned workers = worker_count(threads, dev.size());
  if (workers <= 1) {
    for (Index t = 0; t < cfg.trials; ++t) dev[static_cast<std::size_t>(t)] = one_trial(cfg, t);
    return dev;
  }
  // Static striding: each slot depends only on its trial index.
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (Index t = w; t < cfg.trials; t += workers) dev[static_cast<std::size_t>(t)] = one_trial(cfg, t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return dev;
}

}  // namespace

std::vector<double> lemma_deviations(const TrialConfig& cfg) { return deviations_parallel(cfg, 0); }

TrialReport summarize_trials(const TrialConfig& cfg, const std::vector<double>& deviations) {
  cfg.validate();
  if (static_cast<Index>(deviations.size()) != cfg.trials)
    throw Error(ErrorKind::InvalidConfig, "deviation count differs from trials");
  TrialReport r;
  r.config = cfg;
  for (double d : deviations)
    if (d > cfg.epsilon) ++r.failures;
  r.failure_rate = static_cast<double>(r.failures) / static_cast<double>(cfg.trials);
  std::vector<double> sorted = deviations;
  std::sort(sorted.begin(), sorted.end());
  r.q50 = quantile(sorted, 0.50);
  r.q90 = quantile(sorted, 0.90);
  r.q99 = quantile(sorted, 0.99);
  r.max_deviation = sorted.empty() ? 0.0 : sorted.back();
  CalibrationOptions opts;
  opts.points = cfg.points;
  opts.rank_a = cfg.matrix.unit_diagonal ? 1 : cfg.matrix.rank_a;
  opts.rank_b = cfg.matrix.unit_diagonal ? 1 : cfg.matrix.rank_b;
  r.bound_probability =
      success_probability(cfg.lemma, params_for_point(cfg.lemma, {cfg.n, cfg.k, cfg.gamma, cfg.epsilon}, opts, cfg.c_univ));
  r.spectral_scale = cfg.lemma == LemmaId::Spectral ? static_cast<double>(cfg.n) / static_cast<double>(cfg.k) : 1.0;
  return r;
}

TrialReport run_lemma_trials(const TrialConfig& cfg) { return summarize_trials(cfg, lemma_deviations(cfg)); }

std::vector<TrialReport> sweep(const std::vector<TrialConfig>& cfgs, unsigned threads) {
  for (const auto& c : cfgs) c.validate();
  // Group by everything that determines the samples, i.e. all fields but epsilon and c_univ.
  using Key = std::tuple<int, Index, Index, double, Index, std::uint64_t, Index, int, Index, Index, bool, Index, int, int>;
  auto key_of = [](const TrialConfig& c) {
    return Key{static_cast<int>(c.lemma), c.n, c.k, c.gamma, c.trials, c.seed, c.points,
               static_cast<int>(c.point_set), c.matrix.rank_a, c.matrix.rank_b, c.matrix.unit_diagonal,
               c.matrix.diagonal_index, static_cast<int>(c.kind), static_cast<int>(c.sampler)};
  };
  std::map<Key, std::vector<double>> cache;
  std::vector<TrialReport> out;
  out.reserve(cfgs.size());
  for (const auto& c : cfgs) {
    auto [it, fresh] = cache.try_emplace(key_of(c));
    if (fresh) it->second = deviations_parallel(c, threads);
    out.push_back(summarize_trials(c, it->second));
  }
  return out;
}

std::string to_json_line(const TrialReport& r) {
  const TrialConfig& c = r.config;
  nlohmann::ordered_json j;
  j["schema"] = "rpsdp-trial-report/1";
  j["lemma"] = std::string(to_string(c.lemma));
  j["n"] = c.n;
  j["k"] = c.k;
  j["gamma"] = c.gamma;
  j["epsilon"] = c.epsilon;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["points"] = c.points;
  j["rank_a"] = c.matrix.rank_a;
  j["rank_b"] = c.matrix.rank_b;
  j["unit_diagonal"] = c.matrix.unit_diagonal;
  j["projector"] = std::string(to_string(c.kind));
  j["sampler"] = c.sampler == Sampler::DenseGaussian ? "dense-gaussian" : "projector";
  j["c_univ"] = c.c_univ;
  j["failures"] = r.failures;
  j["failure_rate"] = r.failure_rate;
  j["std_error"] = r.std_error();
  j["q50"] = r.q50;
  j["q90"] = r.q90;
  j["q99"] = r.q99;
  j["max_deviation"] = r.max_deviation;
  j["bound_probability"] = r.bound_probability;
  j["predicted_failure"] = r.predicted_failure();
  j["spectral_scale"] = r.spectral_scale;
  return j.dump();
}

void write_json_lines(std::ostream& os, const std::vector<TrialReport>& reports) {
  for (const auto& r : reports) os << to_json_line(r) << '\n';
}

}  // namespace rpsdp
