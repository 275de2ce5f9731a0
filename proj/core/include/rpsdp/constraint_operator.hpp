#pragma once

#include "rpsdp/projector.hpp"
#include "rpsdp/sym_matrix.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <memory>
#include <vector>

namespace rpsdp {

enum class SchurPath { Auto, Structured, Dense };

/// The linear map X -> (<A_1,X>, ..., <A_m,X>) with its adjoint and the HKM
/// Schur complement M_ij = tr(A_i X A_j S^-1).
///
/// Every A_i is expanded into terms w e_a e_b^T (both orientations off the
/// diagonal), so tr(A_i X A_j T) = sum_{t in i, s in j} w_t w_s X[b_t,a_s] T[b_s,a_t].
/// When all A_i are congruence views P B_i P^T with one shared P ("basis mode")
/// the terms index columns of P and X, T are replaced by P_U^T X P_U, P_U^T T P_U
/// over the touched columns U. Diagonal-unit constraints give M = X o S^-1,
/// projected ones give (p_i^T X p_j)(p_i^T S^-1 p_j).
class ConstraintOperator {
 public:
  /// `keep` (direct mode only) lists retained indices of an n x n space; the
  /// operator then acts on the |keep| x |keep| principal block.
  static ConstraintOperator build(const std::vector<const SymMatrix*>& mats, Index dim, SchurPath path = SchurPath::Auto,
                                  const std::vector<Index>* keep = nullptr);

  Index m() const noexcept { return m_; }
  /// Dimension of the matrices the operator acts on.
  Index dim() const noexcept { return dim_; }
  bool basis_mode() const noexcept { return basis_; }
  SchurPath path() const noexcept { return path_; }
  Index term_count() const noexcept { return static_cast<Index>(w_.size()); }

  Eigen::VectorXd apply(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd adjoint(const Eigen::VectorXd& y) const;
  Eigen::MatrixXd schur(const Eigen::MatrixXd& x, const Eigen::MatrixXd& sinv) const;
  /// Gram matrix <A_i, A_j>.
  Eigen::MatrixXd gram() const;
  /// A_i <- d_i A_i.
  void scale_rows(const Eigen::VectorXd& d);
  /// Keeps only the listed constraints, in the given order.
  ConstraintOperator subset(const std::vector<Index>& rows) const;
  /// Forces a Schur path (materializing dense matrices when needed).
  void set_path(SchurPath path);

  /// Estimated flop counts used by SchurPath::Auto.
  double structured_cost() const;
  double dense_cost() const;

 private:
  Eigen::MatrixXd local_form(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd schur_structured(const Eigen::MatrixXd& gx, const Eigen::MatrixXd& gs) const;
  Eigen::MatrixXd schur_dense(const Eigen::MatrixXd& x, const Eigen::MatrixXd& sinv) const;
  void materialize();

  Index m_ = 0;
  Index dim_ = 0;
  Index local_dim_ = 0;
  bool basis_ = false;
  SchurPath path_ = SchurPath::Structured;
  std::vector<Index> start_;
  std::vector<Index> a_;
  std::vector<Index> b_;
  std::vector<double> w_;
  Projector::SparseMatrix pu_;  // k x |U| in basis mode
  std::vector<Eigen::MatrixXd> dense_;
};

}  // namespace rpsdp
