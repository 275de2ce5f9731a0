#include "rpsdp/projector.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/rng.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace rpsdp {

std::string_view to_string(ProjectorKind kind) noexcept {
  switch (kind) {
    case ProjectorKind::SparseSubgaussian: return "subgaussian";
    case ProjectorKind::Achlioptas: return "achlioptas";
    case ProjectorKind::Identity: return "identity";
  }
  return "unknown";
}

Projector::Projector(ProjectorKind kind, double gamma, std::uint64_t seed, SparseMatrix matrix)
    : kind_(kind), gamma_(gamma), seed_(seed), matrix_(std::move(matrix)) {
  matrix_.makeCompressed();
}

Eigen::VectorXd Projector::column(Index j) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(k());
  for (SparseMatrix::InnerIterator it(matrix_, j); it; ++it) v[it.row()] = it.value();
  return v;
}

Eigen::MatrixXd Projector::to_dense() const { return Eigen::MatrixXd(matrix_); }

Eigen::VectorXd Projector::apply(const Eigen::VectorXd& x) const {
  if (x.size() != n()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from n");
  return matrix_ * x;
}

Eigen::VectorXd Projector::apply_transpose(const Eigen::VectorXd& y) const {
  if (y.size() != k()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from k");
  return matrix_.transpose() * y;
}

Eigen::MatrixXd Projector::apply(const Eigen::MatrixXd& m) const {
  if (m.rows() != n()) throw Error(ErrorKind::DimensionMismatch, "block rows differ from n");
  return matrix_ * m;
}

namespace {

void symmetrize(Eigen::MatrixXd& m) {
  m = 0.5 * (m + m.transpose()).eval();
}

}  // namespace

Eigen::MatrixXd Projector::congruence_dense(const Eigen::MatrixXd& a) const {
  if (a.rows() != n() || a.cols() != n())
    throw Error(ErrorKind::DimensionMismatch, "matrix dimension differs from projector n");
  // B = P A is k x n; result B P^T.
  Eigen::MatrixXd b = matrix_ * a;
  Eigen::MatrixXd out = b * matrix_.transpose();
  symmetrize(out);
  return out;
}

Eigen::MatrixXd Projector::congruence_dense(const SymMatrix& a) const {
  if (a.dim() != n()) throw Error(ErrorKind::DimensionMismatch, "matrix dimension differs from projector n");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(k(), k());
  switch (a.structure()) {
    case SymMatrix::Structure::DiagonalUnit: {
      const Index i = a.diagonal_index();
      for (SparseMatrix::InnerIterator r(matrix_, i); r; ++r)
        for (SparseMatrix::InnerIterator c(matrix_, i); c; ++c) out(r.row(), c.row()) = r.value() * c.value();
      return out;
    }
    case SymMatrix::Structure::Rank1: {
      const Eigen::VectorXd pv = matrix_ * a.rank_one_factor();
      out.noalias() = pv * pv.transpose();
      return out;
    }
    case SymMatrix::Structure::General: break;
  }
  if (a.storage() == SymMatrix::Storage::Dense) return congruence_dense(a.dense_values());
  if (a.storage() == SymMatrix::Storage::Congruence) return congruence_dense(a.to_dense());
  // Sparse: accumulate p_r p_c^T (both orientations off the diagonal).
  std::vector<Eigen::Triplet<double, Index>> trips;
  const auto entries = a.entries();
  trips.reserve(entries.size() * 2);
  for (const Entry& e : entries) {
    trips.emplace_back(e.row, e.col, e.value);
    if (e.row != e.col) trips.emplace_back(e.col, e.row, e.value);
  }
  SparseMatrix as(n(), n());
  as.setFromTriplets(trips.begin(), trips.end());
  const SparseMatrix pa = matrix_ * as;
  out = Eigen::MatrixXd(pa * matrix_.transpose());
  symmetrize(out);
  return out;
}

Eigen::MatrixXd Projector::lift_dense(const Eigen::MatrixXd& y) const {
  if (y.rows() != k() || y.cols() != k())
    throw Error(ErrorKind::DimensionMismatch, "matrix dimension differs from projector k");
  const Eigen::MatrixXd yp = y * matrix_;  // k x n
  Eigen::MatrixXd out = matrix_.transpose() * yp;
  symmetrize(out);
  return out;
}

double Projector::column_form(const Eigen::MatrixXd& m, Index a, Index b) const {
  double total = 0.0;
  for (SparseMatrix::InnerIterator r(matrix_, a); r; ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator c(matrix_, b); c; ++c) row += m(r.row(), c.row()) * c.value();
    total += r.value() * row;
  }
  return total;
}

namespace {

void check_shape(Index n, Index k, double gamma) {
  if (k < 1 || k > n)
    throw Error(ErrorKind::InvalidDimension, "need 1 <= k <= n, got k=" + std::to_string(k) + " n=" + std::to_string(n));
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw Error(ErrorKind::InvalidDensity, "density must lie in (0, 1], got " + std::to_string(gamma));
}

// An entry is present when its keyed uniform falls below gamma.
bool present(const CounterRng::Cell& cell, double gamma) { return gamma >= 1.0 || cell.uniform(0) < gamma; }

template <class Value>
Projector::SparseMatrix sample_columns(Index n, Index k, double gamma, std::uint64_t seed, Value value) {
  const CounterRng rng(seed);
  std::vector<Index> outer(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> inner;
  std::vector<double> values;
  const auto expect = static_cast<std::size_t>(static_cast<double>(n) * static_cast<double>(k) * gamma * 1.05) + 16;
  inner.reserve(expect);
  values.reserve(expect);
  for (Index j = 0; j < n; ++j) {
    const std::uint64_t lane = rng.lane(static_cast<std::uint64_t>(j));
    for (Index i = 0; i < k; ++i) {
      const CounterRng::Cell cell = rng.cell_in_lane(lane, static_cast<std::uint64_t>(i));
      if (!present(cell, gamma)) continue;
      inner.push_back(i);
      values.push_back(value(cell));
    }
    outer[static_cast<std::size_t>(j) + 1] = static_cast<Index>(inner.size());
  }
  return Eigen::Map<const Projector::SparseMatrix>(k, n, static_cast<Index>(values.size()), outer.data(), inner.data(),
                                                   values.data());
}

}  // namespace

Projector sample_sparse_subgaussian(Index n, Index k, double gamma, std::uint64_t seed) {
  check_shape(n, k, gamma);
  const double sd = 1.0 / std::sqrt(static_cast<double>(k) * gamma);
  auto m = sample_columns(n, k, gamma, seed, [sd](const CounterRng::Cell& cell) {
    const double z = cell.normal(1);
    // A zero draw has probability ~2^-53; nudge it so stored entries stay nonzero.
    return (z == 0.0 ? 0x1.0p-40 : z) * sd;
  });
  return Projector(ProjectorKind::SparseSubgaussian, gamma, seed, std::move(m));
}

Projector sample_achlioptas(Index n, Index k, double q, std::uint64_t seed) {
  check_shape(n, k, q);
  const double mag = 1.0 / std::sqrt(static_cast<double>(k) * q);
  auto m = sample_columns(n, k, q, seed, [mag](const CounterRng::Cell& cell) {
    return (cell.bits(3) >> 63) ? mag : -mag;
  });
  return Projector(ProjectorKind::Achlioptas, q, seed, std::move(m));
}

Projector identity_projector(Index n) {
  if (n < 1) throw Error(ErrorKind::InvalidDimension, "identity projector needs n >= 1");
  Projector::SparseMatrix m(n, n);
  m.setIdentity();
  return Projector(ProjectorKind::Identity, 1.0, 0, std::move(m));
}

Projector sample_projector(ProjectorKind kind, Index n, Index k, double gamma, std::uint64_t seed) {
  switch (kind) {
    case ProjectorKind::SparseSubgaussian: return sample_sparse_subgaussian(n, k, gamma, seed);
    case ProjectorKind::Achlioptas: return sample_achlioptas(n, k, gamma, seed);
    case ProjectorKind::Identity:
      if (k != n) throw Error(ErrorKind::InvalidDimension, "identity projector requires k = n");
      return identity_projector(n);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown projector kind");
}

SymMatrix congruence(const Projector& p, const SymMatrix& a) {
  if (p.kind() == ProjectorKind::Identity) {
    if (a.dim() != p.n()) throw Error(ErrorKind::DimensionMismatch, "matrix dimension differs from projector n");
    return a.materialized();
  }
  return SymMatrix::from_dense(p.congruence_dense(a), 0.0);
}

SymMatrix lift(const Projector& p, const SymMatrix& y) {
  if (y.dim() != p.k()) throw Error(ErrorKind::DimensionMismatch, "matrix dimension differs from projector k");
  if (p.kind() == ProjectorKind::Identity) return y.materialized();
  return SymMatrix::from_dense(p.lift_dense(y.to_dense()), 0.0);
}

}  // namespace rpsdp
