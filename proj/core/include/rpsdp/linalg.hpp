#pragma once

#include "rpsdp/sym_matrix.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

namespace rpsdp {

struct MatrixNorms {
  double frobenius = 0.0;
  double nuclear = 0.0;
  double trace = 0.0;
};

/// Eigenvalues of a symmetric matrix, ascending.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a);
double min_eigenvalue(const Eigen::MatrixXd& a);
/// Sum of |eigenvalues|.
double nuclear_norm(const Eigen::MatrixXd& a);
/// Spectral norm of a symmetric matrix (max |eigenvalue|).
double spectral_norm(const Eigen::MatrixXd& a);

MatrixNorms matrix_norms(const SymMatrix& a);
MatrixNorms matrix_norms(const Eigen::MatrixXd& a);

/// Lower bound on the smallest eigenvalue of the symmetric operator `apply`
/// from a fully reorthogonalized Lanczos run: min Ritz value minus its residual.
/// Exact (up to round-off) once `steps` reaches `dim`.
double lanczos_min_eigenvalue_bound(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                                    Index dim, int steps, std::uint64_t seed = 7);

}  // namespace rpsdp
