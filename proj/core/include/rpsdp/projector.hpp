#pragma once

#include "rpsdp/sym_matrix.hpp"

#include <Eigen/Sparse>

#include <cstdint>
#include <memory>
#include <string_view>

namespace rpsdp {

enum class ProjectorKind { SparseSubgaussian, Achlioptas, Identity };

std::string_view to_string(ProjectorKind kind) noexcept;

/// k x n random matrix, immutable once sampled. Columns are stored
/// compressed because both congruence directions walk columns of P.
class Projector {
 public:
  using SparseMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, Index>;

  Projector(ProjectorKind kind, double gamma, std::uint64_t seed, SparseMatrix matrix);

  Index k() const noexcept { return matrix_.rows(); }
  Index n() const noexcept { return matrix_.cols(); }
  ProjectorKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  Index nnz() const noexcept { return matrix_.nonZeros(); }

  Eigen::VectorXd column(Index j) const;
  Eigen::MatrixXd to_dense() const;

  /// P x for x in R^n.
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  /// P^T y for y in R^k.
  Eigen::VectorXd apply_transpose(const Eigen::VectorXd& y) const;
  /// P M for a dense n x c block.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& m) const;

  /// P A P^T, symmetrized. DiagonalUnit and Rank1 inputs use outer products.
  Eigen::MatrixXd congruence_dense(const SymMatrix& a) const;
  Eigen::MatrixXd congruence_dense(const Eigen::MatrixXd& a) const;
  /// P^T Y P, symmetrized.
  Eigen::MatrixXd lift_dense(const Eigen::MatrixXd& y) const;

  /// p_a^T M p_b for a dense k x k M.
  double column_form(const Eigen::MatrixXd& m, Index a, Index b) const;

 private:
  ProjectorKind kind_;
  double gamma_;
  std::uint64_t seed_;
  SparseMatrix matrix_;
};

/// Entries are zero with probability 1 - gamma and N(0, 1/(k gamma)) otherwise.
Projector sample_sparse_subgaussian(Index n, Index k, double gamma, std::uint64_t seed);

/// Entries are zero with probability 1 - q and +-1/sqrt(k q) otherwise.
Projector sample_achlioptas(Index n, Index k, double q, std::uint64_t seed);

/// n x n identity, useful as a control that must reproduce the original problem.
Projector identity_projector(Index n);

/// Dispatches on kind; `gamma` is q for Achlioptas and ignored for Identity.
Projector sample_projector(ProjectorKind kind, Index n, Index k, double gamma, std::uint64_t seed);

/// Returns P A P^T as a SymMatrix (dense storage, structure hint dropped).
SymMatrix congruence(const Projector& p, const SymMatrix& a);
/// Returns P^T Y P.
SymMatrix lift(const Projector& p, const SymMatrix& y);

}  // namespace rpsdp
