#include "rpsdp/constraint_operator.hpp"

#include "rpsdp/error.hpp"

#include <algorithm>
#include <numeric>

namespace rpsdp {

namespace {

using Triplet = Eigen::Triplet<double, Index>;

// Appends the full-orientation terms of `a` using `local` to renumber indices.
void append_terms(const SymMatrix& a, const std::vector<Index>& local, std::vector<Index>& ta, std::vector<Index>& tb,
                  std::vector<double>& tw) {
  auto push = [&](Index r, Index c, double v) {
    if (v == 0.0) return;
    const Index lr = local[static_cast<std::size_t>(r)];
    const Index lc = local[static_cast<std::size_t>(c)];
    if (lr < 0 || lc < 0) throw Error(ErrorKind::InvalidMatrix, "constraint touches a removed index");
    ta.push_back(lr);
    tb.push_back(lc);
    tw.push_back(v);
    if (lr != lc) {
      ta.push_back(lc);
      tb.push_back(lr);
      tw.push_back(v);
    }
  };
  if (a.structure() == SymMatrix::Structure::DiagonalUnit) {
    push(a.diagonal_index(), a.diagonal_index(), 1.0);
    return;
  }
  if (a.storage() == SymMatrix::Storage::Sparse) {
    for (const Entry& e : a.entries()) push(e.row, e.col, e.value);
    return;
  }
  const Eigen::MatrixXd d = a.to_dense();
  for (Index j = 0; j < d.cols(); ++j)
    for (Index i = 0; i <= j; ++i) push(i, j, d(i, j));
}

// Indices with a nonzero entry somewhere in `a`.
void mark_touched(const SymMatrix& a, std::vector<char>& touched) {
  if (a.structure() == SymMatrix::Structure::DiagonalUnit) {
    touched[static_cast<std::size_t>(a.diagonal_index())] = 1;
    return;
  }
  if (a.storage() == SymMatrix::Storage::Sparse) {
    for (const Entry& e : a.entries()) {
      touched[static_cast<std::size_t>(e.row)] = 1;
      touched[static_cast<std::size_t>(e.col)] = 1;
    }
    return;
  }
  const Eigen::MatrixXd d = a.to_dense();
  for (Index j = 0; j < d.cols(); ++j)
    for (Index i = 0; i < d.rows(); ++i)
      if (d(i, j) != 0.0) touched[static_cast<std::size_t>(i)] = 1;
}

}  // namespace

ConstraintOperator ConstraintOperator::build(const std::vector<const SymMatrix*>& mats, Index dim, SchurPath path,
                                             const std::vector<Index>* keep) {
  ConstraintOperator op;
  op.m_ = static_cast<Index>(mats.size());
  op.start_.reserve(mats.size() + 1);
  op.start_.push_back(0);

  bool basis = !mats.empty();
  const Projector* shared = nullptr;
  for (const SymMatrix* a : mats) {
    if (a->dim() != dim) throw Error(ErrorKind::DimensionMismatch, "constraint dimension differs from problem");
    if (a->storage() != SymMatrix::Storage::Congruence) {
      basis = false;
      break;
    }
    if (!shared) shared = &a->projector();
    if (&a->projector() != shared) {
      basis = false;
      break;
    }
  }

  if (basis && keep) throw Error(ErrorKind::InvalidParameters, "index restriction applies to direct mode only");
  op.basis_ = basis;

  if (basis) {
    const Index n = shared->n();
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    for (const SymMatrix* a : mats) mark_touched(a->base(), touched);
    std::vector<Index> local(static_cast<std::size_t>(n), -1);
    std::vector<Index> cols;
    for (Index j = 0; j < n; ++j)
      if (touched[static_cast<std::size_t>(j)]) {
        local[static_cast<std::size_t>(j)] = static_cast<Index>(cols.size());
        cols.push_back(j);
      }
    for (const SymMatrix* a : mats) {
      append_terms(a->base(), local, op.a_, op.b_, op.w_);
      op.start_.push_back(static_cast<Index>(op.w_.size()));
    }
    const auto& pm = shared->matrix();
    std::vector<Triplet> trips;
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (Projector::SparseMatrix::InnerIterator it(pm, cols[c]); it; ++it)
        trips.emplace_back(it.row(), static_cast<Index>(c), it.value());
    op.pu_.resize(shared->k(), static_cast<Index>(cols.size()));
    op.pu_.setFromTriplets(trips.begin(), trips.end());
    op.pu_.makeCompressed();
    op.dim_ = shared->k();
    op.local_dim_ = static_cast<Index>(cols.size());
  } else {
    std::vector<Index> local(static_cast<std::size_t>(dim));
    if (keep) {
      std::fill(local.begin(), local.end(), -1);
      for (std::size_t i = 0; i < keep->size(); ++i) local[static_cast<std::size_t>((*keep)[i])] = static_cast<Index>(i);
      op.dim_ = static_cast<Index>(keep->size());
    } else {
      std::iota(local.begin(), local.end(), Index{0});
      op.dim_ = dim;
    }
    for (const SymMatrix* a : mats) {
      if (a->storage() == SymMatrix::Storage::Congruence)
        append_terms(a->materialized(), local, op.a_, op.b_, op.w_);
      else
        append_terms(*a, local, op.a_, op.b_, op.w_);
      op.start_.push_back(static_cast<Index>(op.w_.size()));
    }
    op.local_dim_ = op.dim_;
  }
  op.set_path(path);
  return op;
}

double ConstraintOperator::structured_cost() const {
  double total = 0.0, sq = 0.0;
  for (Index i = 0; i < m_; ++i) {
    const double ni = static_cast<double>(start_[i + 1] - start_[i]);
    total += ni;
    sq += ni * ni;
  }
  // Scalar gather loops run several times slower per flop than blocked products.
  double cost = 4.0 * 0.5 * (total * total + sq);
  if (basis_) {
    const double nnz = static_cast<double>(pu_.nonZeros());
    cost += 2.0 * (static_cast<double>(dim_) * nnz + nnz * static_cast<double>(local_dim_));
  }
  return cost;
}

double ConstraintOperator::dense_cost() const {
  const double d = static_cast<double>(dim_);
  const double m = static_cast<double>(m_);
  return m * 4.0 * d * d * d + 0.5 * m * m * d * d;
}

void ConstraintOperator::set_path(SchurPath path) {
  if (path == SchurPath::Auto) path = dense_cost() < structured_cost() ? SchurPath::Dense : SchurPath::Structured;
  path_ = path;
  if (path_ == SchurPath::Dense && static_cast<Index>(dense_.size()) != m_) materialize();
  if (path_ == SchurPath::Structured) dense_.clear();
}

void ConstraintOperator::materialize() {
  dense_.assign(static_cast<std::size_t>(m_), Eigen::MatrixXd());
  for (Index i = 0; i < m_; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(m_);
    e[i] = 1.0;
    dense_[static_cast<std::size_t>(i)] = adjoint(e);
  }
}

Eigen::MatrixXd ConstraintOperator::local_form(const Eigen::MatrixXd& x) const {
  if (!basis_) return x;
  const Eigen::MatrixXd xp = x * pu_;
  return pu_.transpose() * xp;
}

Eigen::VectorXd ConstraintOperator::apply(const Eigen::MatrixXd& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) throw Error(ErrorKind::DimensionMismatch, "operator input has the wrong dimension");
  Eigen::VectorXd out(m_);
  if (!basis_) {
    for (Index i = 0; i < m_; ++i) {
      double s = 0.0;
      for (Index t = start_[i]; t < start_[i + 1]; ++t) s += w_[t] * x(a_[t], b_[t]);
      out[i] = s;
    }
    return out;
  }
  const Eigen::MatrixXd xp = x * pu_;  // k x |U|
  for (Index i = 0; i < m_; ++i) {
    double s = 0.0;
    for (Index t = start_[i]; t < start_[i + 1]; ++t) {
      double v = 0.0;
      for (Projector::SparseMatrix::InnerIterator it(pu_, a_[t]); it; ++it) v += it.value() * xp(it.row(), b_[t]);
      s += w_[t] * v;
    }
    out[i] = s;
  }
  return out;
}

Eigen::MatrixXd ConstraintOperator::adjoint(const Eigen::VectorXd& y) const {
  if (y.size() != m_) throw Error(ErrorKind::DimensionMismatch, "dual vector has the wrong length");
  if (!basis_) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim_, dim_);
    for (Index i = 0; i < m_; ++i) {
      if (y[i] == 0.0) continue;
      for (Index t = start_[i]; t < start_[i + 1]; ++t) out(a_[t], b_[t]) += y[i] * w_[t];
    }
    return out;
  }
  std::vector<Triplet> trips;
  trips.reserve(w_.size());
  for (Index i = 0; i < m_; ++i) {
    if (y[i] == 0.0) continue;
    for (Index t = start_[i]; t < start_[i + 1]; ++t) trips.emplace_back(a_[t], b_[t], y[i] * w_[t]);
  }
  Projector::SparseMatrix bmat(local_dim_, local_dim_);
  bmat.setFromTriplets(trips.begin(), trips.end());
  const Projector::SparseMatrix pb = pu_ * bmat;
  const Projector::SparseMatrix pbp = pb * pu_.transpose();
  Eigen::MatrixXd out(pbp);
  return 0.5 * (out + out.transpose());
}

Eigen::MatrixXd ConstraintOperator::schur_structured(const Eigen::MatrixXd& gx, const Eigen::MatrixXd& gs) const {
  Eigen::MatrixXd mm(m_, m_);
  const double* gxd = gx.data();
  const double* gsd = gs.data();
  const Index ld = gx.rows();
  for (Index i = 0; i < m_; ++i) {
    const Index ti0 = start_[i], ti1 = start_[i + 1];
    for (Index j = i; j < m_; ++j) {
      const Index tj0 = start_[j], tj1 = start_[j + 1];
      double s = 0.0;
      for (Index t = ti0; t < ti1; ++t) {
        // gx(a_u, b_t) and gs(b_u, a_t): columns b_t and a_t are contiguous.
        const double* xc = gxd + b_[t] * ld;
        const double* sc = gsd + a_[t] * ld;
        double inner = 0.0;
        for (Index u = tj0; u < tj1; ++u) inner += w_[u] * xc[a_[u]] * sc[b_[u]];
        s += w_[t] * inner;
      }
      mm(i, j) = s;
      mm(j, i) = s;
    }
  }
  return mm;
}

Eigen::MatrixXd ConstraintOperator::schur_dense(const Eigen::MatrixXd& x, const Eigen::MatrixXd& sinv) const {
  Eigen::MatrixXd mm(m_, m_);
  Eigen::MatrixXd g(dim_, dim_);
  for (Index j = 0; j < m_; ++j) {
    g.noalias() = x * dense_[static_cast<std::size_t>(j)];
    const Eigen::MatrixXd h = g * sinv;
    for (Index i = 0; i <= j; ++i) {
      const double v = frobenius_dot(dense_[static_cast<std::size_t>(i)], h);
      mm(i, j) = v;
      mm(j, i) = v;
    }
  }
  return mm;
}

Eigen::MatrixXd ConstraintOperator::schur(const Eigen::MatrixXd& x, const Eigen::MatrixXd& sinv) const {
  if (x.rows() != dim_ || sinv.rows() != dim_) throw Error(ErrorKind::DimensionMismatch, "schur inputs have the wrong dimension");
  if (path_ == SchurPath::Dense) return schur_dense(x, sinv);
  if (!basis_) return schur_structured(x, sinv);
  return schur_structured(local_form(x), local_form(sinv));
}

Eigen::MatrixXd ConstraintOperator::gram() const {
  if (path_ == SchurPath::Dense) {
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim_, dim_);
    return schur_dense(id, id);
  }
  if (basis_) {
    const Eigen::MatrixXd ptp = Eigen::MatrixXd(pu_.transpose() * pu_);
    return schur_structured(ptp, ptp);
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim_, dim_);
  return schur_structured(id, id);
}

void ConstraintOperator::scale_rows(const Eigen::VectorXd& d) {
  if (d.size() != m_) throw Error(ErrorKind::DimensionMismatch, "row scaling has the wrong length");
  for (Index i = 0; i < m_; ++i) {
    for (Index t = start_[i]; t < start_[i + 1]; ++t) w_[t] *= d[i];
    if (!dense_.empty()) dense_[static_cast<std::size_t>(i)] *= d[i];
  }
}

ConstraintOperator ConstraintOperator::subset(const std::vector<Index>& rows) const {
  ConstraintOperator op;
  op.m_ = static_cast<Index>(rows.size());
  op.dim_ = dim_;
  op.local_dim_ = local_dim_;
  op.basis_ = basis_;
  op.path_ = path_;
  op.pu_ = pu_;
  op.start_.push_back(0);
  for (Index r : rows) {
    for (Index t = start_[r]; t < start_[r + 1]; ++t) {
      op.a_.push_back(a_[t]);
      op.b_.push_back(b_[t]);
      op.w_.push_back(w_[t]);
    }
    op.start_.push_back(static_cast<Index>(op.w_.size()));
    if (!dense_.empty()) op.dense_.push_back(dense_[static_cast<std::size_t>(r)]);
  }
  return op;
}

}  // namespace rpsdp
