#pragma once

#include "rpsdp/linalg.hpp"
#include "rpsdp/rng.hpp"
#include "rpsdp/sdp_problem.hpp"

#include <Eigen/Dense>

#include <fstream>
#include <sstream>
#include <string>

namespace rpsdp::testing {

inline std::string data_path(const std::string& name) { return std::string(RPSDP_TEST_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Eigen::MatrixXd gaussian_matrix(const CounterRng& rng, Index rows, Index cols, std::uint64_t stream) {
  Eigen::MatrixXd g(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      g(i, j) = rng.normal(stream, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
  return g;
}

inline Eigen::MatrixXd random_symmetric(const CounterRng& rng, Index n, std::uint64_t stream) {
  const Eigen::MatrixXd g = gaussian_matrix(rng, n, n, stream);
  return 0.5 * (g + g.transpose());
}

/// G G^T / cols + shift I: positive definite for shift > 0.
inline Eigen::MatrixXd random_psd(const CounterRng& rng, Index n, Index cols, double shift, std::uint64_t stream) {
  const Eigen::MatrixXd g = gaussian_matrix(rng, n, cols, stream);
  return g * g.transpose() / static_cast<double>(cols) + shift * Eigen::MatrixXd::Identity(n, n);
}

/// Primal and dual strictly feasible instance: b = A(X0) with X0 > 0 and
/// C = A*(y0) + S0 with S0 > 0, so an optimum exists and is attained.
struct ConstructedSdp {
  SdpProblem problem;
  Eigen::MatrixXd x0;
  Eigen::VectorXd y0;
  Eigen::MatrixXd s0;
};

inline ConstructedSdp strictly_feasible_sdp(std::uint64_t seed, Index n, Index m) {
  const CounterRng rng(seed);
  ConstructedSdp out;
  out.x0 = random_psd(rng, n, n, 0.5, 1);
  out.s0 = random_psd(rng, n, n, 0.5, 2);
  out.y0.resize(m);
  Eigen::MatrixXd c = out.s0;
  SdpProblem& p = out.problem;
  for (Index i = 0; i < m; ++i) {
    const Eigen::MatrixXd a = random_symmetric(rng, n, 10 + static_cast<std::uint64_t>(i));
    out.y0[i] = rng.normal(3, static_cast<std::uint64_t>(i));
    c += out.y0[i] * a;
    p.constraints.push_back({SymMatrix::from_dense(a), frobenius_dot(a, out.x0)});
  }
  p.c = SymMatrix::from_dense(c);
  p.sense = Sense::Minimize;
  return out;
}

inline Eigen::MatrixXd dense_of(const SymMatrix& a) { return a.to_dense(); }

}  // namespace rpsdp::testing
