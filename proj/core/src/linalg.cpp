#include "rpsdp/linalg.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/rng.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace rpsdp {

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::InvalidMatrix, "matrix is not square");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::InvalidMatrix, "eigendecomposition failed");
  return es.eigenvalues();
}

double min_eigenvalue(const Eigen::MatrixXd& a) { return symmetric_eigenvalues(a).minCoeff(); }

double nuclear_norm(const Eigen::MatrixXd& a) { return symmetric_eigenvalues(a).cwiseAbs().sum(); }

double spectral_norm(const Eigen::MatrixXd& a) { return symmetric_eigenvalues(a).cwiseAbs().maxCoeff(); }

MatrixNorms matrix_norms(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw Error(ErrorKind::InvalidMatrix, "non-finite matrix entry");
  return {a.norm(), nuclear_norm(a), a.trace()};
}

MatrixNorms matrix_norms(const SymMatrix& a) {
  MatrixNorms out;
  out.frobenius = a.frobenius_norm();
  out.trace = a.trace();
  if (a.structure() == SymMatrix::Structure::DiagonalUnit) {
    out.nuclear = 1.0;
  } else if (a.structure() == SymMatrix::Structure::Rank1) {
    out.nuclear = a.rank_one_factor().squaredNorm();
  } else {
    out.nuclear = nuclear_norm(a.to_dense());
  }
  return out;
}

double lanczos_min_eigenvalue_bound(const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& apply,
                                    Index dim, int steps, std::uint64_t seed) {
  steps = static_cast<int>(std::min<Index>(steps, dim));
  Eigen::MatrixXd q(dim, steps + 1);
  Eigen::VectorXd alpha(steps), beta(steps);
  const CounterRng rng(seed);
  Eigen::VectorXd v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = rng.normal(static_cast<std::uint64_t>(i));
  q.col(0) = v / v.norm();
  Eigen::VectorXd w(dim);
  int m = 0;
  for (int j = 0; j < steps; ++j) {
    apply(q.col(j), w);
    alpha[j] = q.col(j).dot(w);
    // Two passes of classical Gram-Schmidt against the whole basis.
    for (int pass = 0; pass < 2; ++pass) w.noalias() -= q.leftCols(j + 1) * (q.leftCols(j + 1).transpose() * w);
    beta[j] = w.norm();
    m = j + 1;
    if (beta[j] < 1e-12 * std::max(1.0, std::abs(alpha[j]))) {
      beta[j] = 0.0;
      break;
    }
    q.col(j + 1) = w / beta[j];
  }
  // Rayleigh-Ritz on the projected operator T = Q^T A Q computed from the tridiagonal recurrence.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    t(j, j) = alpha[j];
    if (j + 1 < m) t(j, j + 1) = t(j + 1, j) = beta[j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  const double theta = es.eigenvalues()[0];
  const double resid = std::abs(beta[m - 1] * es.eigenvectors()(m - 1, 0));
  return theta - resid;
}

}  // namespace rpsdp
