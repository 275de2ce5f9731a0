#pragma once

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

namespace rpsdp {

using Index = Eigen::Index;

class Projector;

/// One stored entry of a symmetric matrix, always with row <= col.
struct Entry {
  Index row = 0;
  Index col = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Real symmetric matrix. Three storage forms share one interface:
///  - Dense: full Eigen matrix, symmetric by construction.
///  - Sparse: upper-triangle triplets, sorted and merged.
///  - Congruence: the k x k matrix P B P^T kept as (P, B), materialized on demand.
/// A structure hint (DiagonalUnit, Rank1) lets the projector and the solver
/// take fast paths without inspecting entries.
class SymMatrix {
 public:
  enum class Storage { Dense, Sparse, Congruence };
  enum class Structure { General, DiagonalUnit, Rank1 };

  SymMatrix() = default;

  static SymMatrix from_dense(Eigen::MatrixXd values, double symmetry_tol = 1e-10);
  static SymMatrix from_entries(Index dim, std::vector<Entry> entries);
  static SymMatrix identity(Index dim);
  static SymMatrix zero(Index dim);
  static SymMatrix unit_diagonal(Index dim, Index i);
  static SymMatrix rank_one(const Eigen::VectorXd& v);
  static SymMatrix congruence_view(std::shared_ptr<const Projector> projector, SymMatrix base);

  Index dim() const noexcept { return dim_; }
  bool empty() const noexcept { return dim_ == 0; }
  Storage storage() const noexcept { return storage_; }
  Structure structure() const noexcept { return structure_; }

  /// Index i of a DiagonalUnit matrix e_i e_i^T.
  Index diagonal_index() const noexcept { return unit_index_; }
  /// Factor v of a Rank1 matrix v v^T.
  const Eigen::VectorXd& rank_one_factor() const noexcept { return factor_; }

  const Eigen::MatrixXd& dense_values() const;
  std::span<const Entry> entries() const;
  const Projector& projector() const;
  const std::shared_ptr<const Projector>& projector_ptr() const noexcept { return projector_; }
  const SymMatrix& base() const;

  Eigen::MatrixXd to_dense() const;
  /// Upper-triangle entries with |value| > drop_tol.
  std::vector<Entry> to_entries(double drop_tol = 0.0) const;

  double operator()(Index i, Index j) const;

  /// Frobenius inner product <A, X> against a dense symmetric X.
  double dot(const Eigen::MatrixXd& x) const;
  double dot(const SymMatrix& other) const;
  /// out += alpha * A.
  void add_to(Eigen::MatrixXd& out, double alpha = 1.0) const;

  double frobenius_norm() const;
  double trace() const;
  /// Stored nonzeros counted on the upper triangle (dense: dim*(dim+1)/2).
  Index nnz() const;

  SymMatrix scaled(double alpha) const;
  /// Converts a congruence view into explicit storage; other forms unchanged.
  SymMatrix materialized() const;

 private:
  Index dim_ = 0;
  Storage storage_ = Storage::Sparse;
  Structure structure_ = Structure::General;
  Index unit_index_ = -1;
  Eigen::VectorXd factor_;
  Eigen::MatrixXd dense_;
  std::vector<Entry> entries_;
  std::shared_ptr<const Projector> projector_;
  std::shared_ptr<const SymMatrix> base_;
};

/// Frobenius inner product of two dense matrices.
inline double frobenius_dot(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.cwiseProduct(b).sum();
}

}  // namespace rpsdp
