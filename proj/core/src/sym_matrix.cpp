#include "rpsdp/sym_matrix.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/projector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rpsdp {

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidMatrix, "non-finite matrix entry");
}

}  // namespace

SymMatrix SymMatrix::from_dense(Eigen::MatrixXd values, double symmetry_tol) {
  if (values.rows() != values.cols()) throw Error(ErrorKind::InvalidMatrix, "matrix is not square");
  if (values.rows() < 1) throw Error(ErrorKind::InvalidDimension, "matrix dimension must be >= 1");
  if (!values.allFinite()) throw Error(ErrorKind::InvalidMatrix, "non-finite matrix entry");
  const double asym = (values - values.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  if (symmetry_tol > 0.0 && asym > symmetry_tol * scale)
    throw Error(ErrorKind::InvalidMatrix, "matrix is not symmetric");
  SymMatrix m;
  m.dim_ = values.rows();
  m.storage_ = Storage::Dense;
  m.dense_ = 0.5 * (values + values.transpose());
  return m;
}

SymMatrix SymMatrix::from_entries(Index dim, std::vector<Entry> entries) {
  if (dim < 1) throw Error(ErrorKind::InvalidDimension, "matrix dimension must be >= 1");
  for (Entry& e : entries) {
    if (e.row < 0 || e.col < 0 || e.row >= dim || e.col >= dim)
      throw Error(ErrorKind::InvalidMatrix, "entry index out of range");
    require_finite(e.value);
    if (e.row > e.col) std::swap(e.row, e.col);
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.col != b.col ? a.col < b.col : a.row < b.row; });
  std::vector<Entry> merged;
  merged.reserve(entries.size());
  for (const Entry& e : entries) {
    if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
      merged.back().value += e.value;
    else
      merged.push_back(e);
  }
  std::erase_if(merged, [](const Entry& e) { return e.value == 0.0; });
  SymMatrix m;
  m.dim_ = dim;
  m.storage_ = Storage::Sparse;
  m.entries_ = std::move(merged);
  return m;
}

SymMatrix SymMatrix::identity(Index dim) {
  std::vector<Entry> e;
  e.reserve(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) e.push_back({i, i, 1.0});
  return from_entries(dim, std::move(e));
}

SymMatrix SymMatrix::zero(Index dim) { return from_entries(dim, {}); }

SymMatrix SymMatrix::unit_diagonal(Index dim, Index i) {
  if (i < 0 || i >= dim) throw Error(ErrorKind::InvalidMatrix, "diagonal index out of range");
  SymMatrix m = from_entries(dim, {{i, i, 1.0}});
  m.structure_ = Structure::DiagonalUnit;
  m.unit_index_ = i;
  return m;
}

SymMatrix SymMatrix::rank_one(const Eigen::VectorXd& v) {
  if (v.size() < 1) throw Error(ErrorKind::InvalidDimension, "factor must be nonempty");
  if (!v.allFinite()) throw Error(ErrorKind::InvalidMatrix, "non-finite factor");
  SymMatrix m;
  m.dim_ = v.size();
  m.storage_ = Storage::Dense;
  m.structure_ = Structure::Rank1;
  m.factor_ = v;
  m.dense_ = v * v.transpose();
  return m;
}

SymMatrix SymMatrix::congruence_view(std::shared_ptr<const Projector> projector, SymMatrix base) {
  if (!projector) throw Error(ErrorKind::InvalidConfig, "null projector");
  if (base.dim() != projector->n()) throw Error(ErrorKind::DimensionMismatch, "base dimension differs from projector n");
  SymMatrix m;
  m.dim_ = projector->k();
  m.storage_ = Storage::Congruence;
  m.projector_ = std::move(projector);
  if (base.storage_ == Storage::Congruence) base = base.materialized();
  m.base_ = std::make_shared<const SymMatrix>(std::move(base));
  return m;
}

const Eigen::MatrixXd& SymMatrix::dense_values() const {
  if (storage_ != Storage::Dense) throw Error(ErrorKind::InvalidMatrix, "matrix is not stored densely");
  return dense_;
}

std::span<const Entry> SymMatrix::entries() const {
  if (storage_ != Storage::Sparse) throw Error(ErrorKind::InvalidMatrix, "matrix is not stored sparsely");
  return entries_;
}

const Projector& SymMatrix::projector() const {
  if (storage_ != Storage::Congruence) throw Error(ErrorKind::InvalidMatrix, "matrix is not a congruence view");
  return *projector_;
}

const SymMatrix& SymMatrix::base() const {
  if (storage_ != Storage::Congruence) throw Error(ErrorKind::InvalidMatrix, "matrix is not a congruence view");
  return *base_;
}

Eigen::MatrixXd SymMatrix::to_dense() const {
  switch (storage_) {
    case Storage::Dense: return dense_;
    case Storage::Sparse: {
      Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
      for (const Entry& e : entries_) {
        out(e.row, e.col) = e.value;
        out(e.col, e.row) = e.value;
      }
      return out;
    }
    case Storage::Congruence: return projector_->congruence_dense(*base_);
  }
  return {};
}

std::vector<Entry> SymMatrix::to_entries(double drop_tol) const {
  if (storage_ == Storage::Sparse && drop_tol <= 0.0) return entries_;
  std::vector<Entry> out;
  if (storage_ == Storage::Sparse) {
    for (const Entry& e : entries_)
      if (std::abs(e.value) > drop_tol) out.push_back(e);
    return out;
  }
  const Eigen::MatrixXd d = to_dense();
  for (Index j = 0; j < dim_; ++j)
    for (Index i = 0; i <= j; ++i)
      if (std::abs(d(i, j)) > drop_tol) out.push_back({i, j, d(i, j)});
  return out;
}

double SymMatrix::operator()(Index i, Index j) const {
  if (i > j) std::swap(i, j);
  switch (storage_) {
    case Storage::Dense: return dense_(i, j);
    case Storage::Sparse: {
      auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{i, j, 0.0}, [](const Entry& a, const Entry& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
      });
      return (it != entries_.end() && it->row == i && it->col == j) ? it->value : 0.0;
    }
    case Storage::Congruence: return to_dense()(i, j);
  }
  return 0.0;
}

double SymMatrix::dot(const Eigen::MatrixXd& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw Error(ErrorKind::DimensionMismatch, "inner product dimension mismatch");
  if (structure_ == Structure::DiagonalUnit) return x(unit_index_, unit_index_);
  if (structure_ == Structure::Rank1) return factor_.dot(x * factor_);
  switch (storage_) {
    case Storage::Dense: return frobenius_dot(dense_, x);
    case Storage::Sparse: {
      double s = 0.0;
      for (const Entry& e : entries_) s += (e.row == e.col ? 1.0 : 2.0) * e.value * 0.5 * (x(e.row, e.col) + x(e.col, e.row));
      return s;
    }
    case Storage::Congruence: {
      const SymMatrix& b = *base_;
      if (b.structure_ == Structure::DiagonalUnit) return projector_->column_form(x, b.unit_index_, b.unit_index_);
      if (b.storage_ == Storage::Sparse) {
        double s = 0.0;
        for (const Entry& e : b.entries_) {
          const double v = projector_->column_form(x, e.row, e.col);
          s += (e.row == e.col ? 1.0 : 2.0) * e.value * v;
        }
        return s;
      }
      return b.dot(projector_->lift_dense(x));
    }
  }
  return 0.0;
}

double SymMatrix::dot(const SymMatrix& other) const {
  if (other.dim_ != dim_) throw Error(ErrorKind::DimensionMismatch, "inner product dimension mismatch");
  if (storage_ == Storage::Sparse && other.storage_ == Storage::Sparse) {
    // Both sorted by (col,row): merge.
    double s = 0.0;
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    auto less = [](const Entry& l, const Entry& r) { return l.col != r.col ? l.col < r.col : l.row < r.row; };
    while (a != entries_.end() && b != other.entries_.end()) {
      if (less(*a, *b)) ++a;
      else if (less(*b, *a)) ++b;
      else {
        s += (a->row == a->col ? 1.0 : 2.0) * a->value * b->value;
        ++a;
        ++b;
      }
    }
    return s;
  }
  if (storage_ == Storage::Sparse) return dot(other.to_dense());
  return other.dot(to_dense());
}

void SymMatrix::add_to(Eigen::MatrixXd& out, double alpha) const {
  if (out.rows() != dim_ || out.cols() != dim_) throw Error(ErrorKind::DimensionMismatch, "accumulator dimension mismatch");
  switch (storage_) {
    case Storage::Dense: out.noalias() += alpha * dense_; return;
    case Storage::Sparse:
      for (const Entry& e : entries_) {
        out(e.row, e.col) += alpha * e.value;
        if (e.row != e.col) out(e.col, e.row) += alpha * e.value;
      }
      return;
    case Storage::Congruence: out.noalias() += alpha * to_dense(); return;
  }
}

double SymMatrix::frobenius_norm() const {
  switch (storage_) {
    case Storage::Dense: return dense_.norm();
    case Storage::Sparse: {
      double s = 0.0;
      for (const Entry& e : entries_) s += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      return std::sqrt(s);
    }
    case Storage::Congruence: return to_dense().norm();
  }
  return 0.0;
}

double SymMatrix::trace() const {
  switch (storage_) {
    case Storage::Dense: return dense_.trace();
    case Storage::Sparse: {
      double s = 0.0;
      for (const Entry& e : entries_)
        if (e.row == e.col) s += e.value;
      return s;
    }
    case Storage::Congruence: return to_dense().trace();
  }
  return 0.0;
}

Index SymMatrix::nnz() const {
  switch (storage_) {
    case Storage::Dense: return dim_ * (dim_ + 1) / 2;
    case Storage::Sparse: return static_cast<Index>(entries_.size());
    case Storage::Congruence: return dim_ * (dim_ + 1) / 2;
  }
  return 0;
}

SymMatrix SymMatrix::scaled(double alpha) const {
  require_finite(alpha);
  SymMatrix m = materialized();
  m.dense_ *= alpha;
  for (Entry& e : m.entries_) e.value *= alpha;
  if (alpha == 0.0) std::erase_if(m.entries_, [](const Entry& e) { return e.value == 0.0; });
  if (m.structure_ == Structure::DiagonalUnit && alpha != 1.0) m.structure_ = Structure::General;
  if (m.structure_ == Structure::Rank1) {
    if (alpha > 0.0) m.factor_ *= std::sqrt(alpha);
    else if (alpha != 1.0) {
      m.structure_ = Structure::General;
      m.factor_.resize(0);
    }
  }
  return m;
}

SymMatrix SymMatrix::materialized() const {
  if (storage_ != Storage::Congruence) return *this;
  return from_dense(to_dense(), 0.0);
}

}  // namespace rpsdp
