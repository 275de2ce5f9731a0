#include "rpsdp/ipm_solver.hpp"

#include "rpsdp/error.hpp"
#include "rpsdp/linalg.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace rpsdp {

std::string_view to_string(FeasibilityStatus s) noexcept {
  switch (s) {
    case FeasibilityStatus::Feasible: return "feasible";
    case FeasibilityStatus::Infeasible: return "infeasible";
    case FeasibilityStatus::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

void SolverOptions::validate() const {
  if (!(tol_gap > 0.0 && tol_primal > 0.0 && tol_dual > 0.0))
    throw Error(ErrorKind::InvalidConfig, "solver tolerances must be positive");
  if (!(step_fraction > 0.0 && step_fraction < 1.0))
    throw Error(ErrorKind::InvalidConfig, "step fraction must lie in (0, 1)");
  if (max_iterations < 1) throw Error(ErrorKind::InvalidConfig, "max_iterations must be >= 1");
  if (!(infeasibility_threshold > 0.0)) throw Error(ErrorKind::InvalidConfig, "infeasibility threshold must be positive");
  if (infeasibility_patience < 1) throw Error(ErrorKind::InvalidConfig, "infeasibility patience must be >= 1");
}

namespace {

using Clock = std::chrono::steady_clock;
using Llt = Eigen::LLT<Eigen::MatrixXd>;
using SparseM = Eigen::SparseMatrix<double, Eigen::ColMajor, Index>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr Index kDenseEigenLimit = 250;
constexpr double kDependencyTol = 1e-9;

struct Dependencies {
  std::vector<Index> rows;  // retained, ascending
  std::vector<Index> dropped;
  bool infeasible = false;
  Eigen::VectorXd certificate;
};

// Greedy in-order factorization of the Gram matrix: a row is dropped when its
// residual norm against the retained rows is negligible relative to its own norm.
Dependencies find_dependencies(const Eigen::MatrixXd& g, const Eigen::VectorXd& b) {
  const Index m = g.rows();
  Dependencies out;
  // Fast path: plain Cholesky with healthy pivots means full rank.
  if (m > 0) {
    Llt llt(g);
    if (llt.info() == Eigen::Success) {
      const Eigen::VectorXd piv = llt.matrixLLT().diagonal();
      bool healthy = true;
      for (Index i = 0; i < m && healthy; ++i) healthy = piv[i] * piv[i] > kDependencyTol * g(i, i) && g(i, i) > 0.0;
      if (healthy) {
        out.rows.resize(static_cast<std::size_t>(m));
        for (Index i = 0; i < m; ++i) out.rows[static_cast<std::size_t>(i)] = i;
        return out;
      }
    }
  }
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(m, m);
  Index kept = 0;
  for (Index i = 0; i < m; ++i) {
    Eigen::VectorXd v(kept);
    for (Index t = 0; t < kept; ++t) v[t] = g(out.rows[static_cast<std::size_t>(t)], i);
    Eigen::VectorXd li = v;
    if (kept > 0) l.topLeftCorner(kept, kept).triangularView<Eigen::Lower>().solveInPlace(li);
    const double dd = g(i, i) - li.squaredNorm();
    if (g(i, i) > 0.0 && dd > kDependencyTol * g(i, i)) {
      l.row(kept).head(kept) = li.transpose();
      l(kept, kept) = std::sqrt(dd);
      out.rows.push_back(i);
      ++kept;
      continue;
    }
    // A_i = sum_t c_t A_{rows[t]}.
    Eigen::VectorXd c = li;
    if (kept > 0) l.topLeftCorner(kept, kept).transpose().triangularView<Eigen::Upper>().solveInPlace(c);
    double comb = 0.0, scale = std::abs(b[i]);
    for (Index t = 0; t < kept; ++t) {
      comb += c[t] * b[out.rows[static_cast<std::size_t>(t)]];
      scale += std::abs(c[t] * b[out.rows[static_cast<std::size_t>(t)]]);
    }
    const double mismatch = b[i] - comb;
    if (std::abs(mismatch) > 1e-8 * (1.0 + scale)) {
      // y = s (e_i - sum c_t e_rows[t]) gives A*(y) = 0 and b^T y = |mismatch|.
      out.infeasible = true;
      out.certificate = Eigen::VectorXd::Zero(m);
      const double s = mismatch > 0.0 ? 1.0 : -1.0;
      out.certificate[i] = s;
      for (Index t = 0; t < kept; ++t) out.certificate[out.rows[static_cast<std::size_t>(t)]] -= s * c[t];
      out.certificate /= std::abs(mismatch);
      return out;
    }
    out.dropped.push_back(i);
  }
  return out;
}

bool factor_schur(Eigen::MatrixXd& mm, Llt& llt) {
  if (mm.rows() == 0) return true;
  llt.compute(mm);
  if (llt.info() == Eigen::Success) return true;
  double reg = 1e-12 * (1.0 + mm.diagonal().cwiseAbs().maxCoeff());
  for (int attempt = 0; attempt < 5; ++attempt) {
    mm.diagonal().array() += reg;
    llt.compute(mm);
    if (llt.info() == Eigen::Success) return true;
    reg *= 100.0;
  }
  return false;
}

Eigen::MatrixXd inverse_from_llt(const Llt& llt) {
  const Index n = llt.rows();
  Eigen::MatrixXd linv = Eigen::MatrixXd::Identity(n, n);
  llt.matrixL().solveInPlace(linv);
  Eigen::MatrixXd inv(n, n);
  inv.noalias() = linv.transpose() * linv;
  return inv;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& a) { return 0.5 * (a + a.transpose()); }

// Largest t with X + t dX psd, given the Cholesky factor of X (infinite if none).
double psd_step_limit(const Llt& llt, const Eigen::MatrixXd& dx) {
  const Index n = dx.rows();
  if (n == 0) return kInf;
  double lam;
  if (n <= kDenseEigenLimit) {
    Eigen::MatrixXd w = llt.matrixL().solve(dx);
    Eigen::MatrixXd wt = w.transpose();
    llt.matrixL().solveInPlace(wt);
    lam = symmetric_eigenvalues(sym(wt))[0];
  } else {
    const auto l = llt.matrixL();
    auto apply = [&](const Eigen::VectorXd& v, Eigen::VectorXd& out) {
      Eigen::VectorXd t = l.transpose().solve(v);
      out.noalias() = dx * t;
      l.solveInPlace(out);
    };
    lam = lanczos_min_eigenvalue_bound(apply, n, 60);
  }
  return lam >= 0.0 ? kInf : -1.0 / lam;
}

double lp_step_limit(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) {
  double a = kInf;
  for (Index j = 0; j < x.size(); ++j)
    if (dx[j] < 0.0) a = std::min(a, -x[j] / dx[j]);
  return a;
}

struct Working {
  Eigen::MatrixXd c;
  Eigen::VectorXd b;
  Eigen::VectorXd cl;
  SparseM al;  // m x p
};

struct Direction {
  Eigen::MatrixXd dx, ds;
  Eigen::VectorXd dy, dxl, dsl;
};

}  // namespace

Solution solve(const SdpProblem& p, const SolverOptions& opts) {
  const auto t0 = Clock::now();
  opts.validate();
  p.validate();
  const Index n = p.dim();
  const Index m_all = p.m();
  const double sgn = p.sense == Sense::Minimize ? 1.0 : -1.0;
  auto log = [&](const std::string& s) {
    if (opts.log) opts.log(s);
  };

  Solution sol;
  std::vector<const SymMatrix*> mats;
  mats.reserve(static_cast<std::size_t>(m_all));
  for (const Constraint& con : p.constraints) mats.push_back(&con.a);

  bool basis = m_all > 0;
  for (const SymMatrix* a : mats)
    if (a->storage() != SymMatrix::Storage::Congruence || &a->projector() != &mats.front()->projector()) {
      basis = false;
      break;
    }

  // Rows/columns untouched by C and every A_i decouple; drop them and pad with zeros.
  std::vector<Index> keep;
  bool reduced = false;
  if (!basis && opts.presolve) {
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    auto mark = [&](const SymMatrix& a) {
      if (a.structure() == SymMatrix::Structure::DiagonalUnit) {
        touched[static_cast<std::size_t>(a.diagonal_index())] = 1;
      } else if (a.storage() == SymMatrix::Storage::Sparse) {
        for (const Entry& e : a.entries()) touched[static_cast<std::size_t>(e.row)] = touched[static_cast<std::size_t>(e.col)] = 1;
      } else {
        const Eigen::MatrixXd d = a.to_dense();
        for (Index j = 0; j < n; ++j)
          if (d.col(j).cwiseAbs().maxCoeff() > 0.0) touched[static_cast<std::size_t>(j)] = 1;
      }
    };
    mark(p.c);
    for (const SymMatrix* a : mats) mark(*a);
    for (Index j = 0; j < n; ++j)
      if (touched[static_cast<std::size_t>(j)]) keep.push_back(j);
    if (keep.empty()) keep.push_back(0);
    reduced = static_cast<Index>(keep.size()) < n;
    if (reduced) log("presolve: " + std::to_string(n - static_cast<Index>(keep.size())) + " untouched indices removed");
  }

  ConstraintOperator op = ConstraintOperator::build(mats, n, opts.schur_path, reduced ? &keep : nullptr);
  const Index d = op.dim();

  Working w;
  {
    Eigen::MatrixXd cfull = p.c.to_dense();
    w.c = reduced ? Eigen::MatrixXd(cfull(keep, keep)) : cfull;
    w.c *= sgn;
  }
  w.b = p.rhs();
  const Index pl = p.linear ? p.linear->size() : 0;
  if (p.linear) {
    w.cl = sgn * p.linear->cost;
    w.al = p.linear->coeffs;
  } else {
    w.cl.resize(0);
    w.al.resize(m_all, 0);
  }

  Eigen::MatrixXd gram = op.gram();
  if (pl > 0) gram += Eigen::MatrixXd(w.al * w.al.transpose());

  std::vector<Index> rows(static_cast<std::size_t>(m_all));
  for (Index i = 0; i < m_all; ++i) rows[static_cast<std::size_t>(i)] = i;
  if (opts.presolve) {
    Dependencies dep = find_dependencies(gram, w.b);
    if (dep.infeasible) {
      sol.status = SolveStatus::PrimalInfeasible;
      sol.certificate = dep.certificate;
      sol.x = Eigen::MatrixXd::Zero(n, n);
      sol.s = Eigen::MatrixXd::Zero(n, n);
      sol.y = Eigen::VectorXd::Zero(m_all);
      sol.residuals.primal = kInf;
      sol.wall_time_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      log("presolve: inconsistent linear dependency among equality constraints");
      return sol;
    }
    if (!dep.dropped.empty()) {
      std::ostringstream os;
      os << "presolve: dropped " << dep.dropped.size() << " linearly dependent constraint(s)";
      log(os.str());
      sol.dropped_constraints = dep.dropped;
      rows = dep.rows;
      op = op.subset(rows);
      Eigen::VectorXd nb(static_cast<Index>(rows.size()));
      SparseM sel(static_cast<Index>(rows.size()), m_all);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        nb[static_cast<Index>(r)] = w.b[rows[r]];
        sel.insert(static_cast<Index>(r), rows[r]) = 1.0;
      }
      w.b = nb;
      w.al = sel * w.al;
      gram = Eigen::MatrixXd(gram(rows, rows));
    }
  }
  const Index m = op.m();

  // Row normalization then global scaling of b and C.
  Eigen::VectorXd dr(m);
  for (Index i = 0; i < m; ++i) dr[i] = gram(i, i) > 0.0 ? 1.0 / std::sqrt(gram(i, i)) : 1.0;
  op.scale_rows(dr);
  const Eigen::VectorXd b_orig = w.b;
  w.b = dr.cwiseProduct(w.b);
  if (pl > 0) w.al = dr.asDiagonal() * w.al;
  const double bs = std::max(1.0, m > 0 ? w.b.cwiseAbs().maxCoeff() : 0.0);
  const double cnorm_orig = std::sqrt(w.c.squaredNorm() + w.cl.squaredNorm());
  const double cs = std::max(1.0, std::max(w.c.norm(), pl > 0 ? w.cl.cwiseAbs().maxCoeff() : 0.0));
  w.b /= bs;
  w.c /= cs;
  w.cl /= cs;
  const double bnorm_orig = b_orig.norm();

  const double rho = std::max({1.0, m > 0 ? w.b.cwiseAbs().maxCoeff() : 0.0, w.c.norm()});
  Eigen::MatrixXd x = rho * Eigen::MatrixXd::Identity(d, d);
  Eigen::MatrixXd s = rho * Eigen::MatrixXd::Identity(d, d);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd xl = Eigen::VectorXd::Constant(pl, rho);
  Eigen::VectorXd sl = Eigen::VectorXd::Constant(pl, rho);
  Llt lx(x), ls(s);

  const double nvar = static_cast<double>(d + pl);
  const double tau = opts.step_fraction;
  int primal_inf_count = 0, dual_inf_count = 0, stall = 0;
  SolveStatus status = SolveStatus::MaxIterations;
  IterationInfo info;
  double prel = kInf, drel = kInf, gap = kInf, pobj = 0.0, dobj = 0.0;
  Llt schur_llt;
  int it = 0;

  for (;; ++it) {
    const Eigen::MatrixXd ay = op.adjoint(y);
    Eigen::VectorXd ax = op.apply(x);
    if (pl > 0) ax += w.al * xl;
    const Eigen::VectorXd rp = w.b - ax;
    const Eigen::MatrixXd rd_m = w.c - ay - s;
    Eigen::VectorXd rd_l(pl);
    if (pl > 0) rd_l = w.cl - w.al.transpose() * y - sl;
    const double pobj_s = frobenius_dot(w.c, x) + w.cl.dot(xl);
    const double dobj_s = w.b.dot(y);
    const double mu = (frobenius_dot(x, s) + xl.dot(sl)) / nvar;

    prel = bs * rp.cwiseQuotient(dr).norm() / (1.0 + bnorm_orig);
    drel = cs * std::sqrt(rd_m.squaredNorm() + rd_l.squaredNorm()) / (1.0 + cnorm_orig);
    pobj = sgn * cs * bs * pobj_s;
    dobj = sgn * cs * bs * dobj_s;
    gap = std::abs(pobj - dobj) / (1.0 + std::abs(pobj) + std::abs(dobj));

    info.iteration = it;
    info.primal_obj = pobj;
    info.dual_obj = dobj;
    info.primal_residual = prel;
    info.dual_residual = drel;
    info.gap = gap;
    info.mu = mu;
    if (opts.progress) opts.progress(info);

    if (!std::isfinite(pobj) || !std::isfinite(dobj) || !std::isfinite(mu)) {
      status = SolveStatus::NumericalTrouble;
      break;
    }
    if (prel <= opts.tol_primal && drel <= opts.tol_dual && gap <= opts.tol_gap) {
      status = SolveStatus::Optimal;
      break;
    }
    // Ray tests: (y, S) with b^T y > 0 and A*(y) + S ~ 0 certifies primal
    // infeasibility; X with <C,X> < 0 and A(X) ~ 0 certifies dual infeasibility.
    if (dobj_s > 0.0) {
      const double ray = std::sqrt((w.c - rd_m).squaredNorm() + (w.cl - rd_l).squaredNorm()) / dobj_s;
      primal_inf_count = ray < opts.infeasibility_threshold ? primal_inf_count + 1 : 0;
    } else {
      primal_inf_count = 0;
    }
    if (pobj_s < 0.0) {
      const double ray = (w.b - rp).norm() / (-pobj_s);
      dual_inf_count = ray < opts.infeasibility_threshold ? dual_inf_count + 1 : 0;
    } else {
      dual_inf_count = 0;
    }
    if (primal_inf_count >= opts.infeasibility_patience) {
      status = SolveStatus::PrimalInfeasible;
      break;
    }
    if (dual_inf_count >= opts.infeasibility_patience) {
      status = SolveStatus::DualInfeasible;
      break;
    }
    if (it >= opts.max_iterations) {
      status = SolveStatus::MaxIterations;
      break;
    }

    const Eigen::MatrixXd sinv = inverse_from_llt(ls);
    Eigen::MatrixXd mm = op.schur(x, sinv);
    const Eigen::VectorXd xs = pl > 0 ? Eigen::VectorXd(xl.cwiseQuotient(sl)) : Eigen::VectorXd();
    if (pl > 0) mm += Eigen::MatrixXd(w.al * xs.asDiagonal() * w.al.transpose());
    if (!factor_schur(mm, schur_llt)) {
      log("schur complement factorization failed after regularization");
      status = SolveStatus::NumericalTrouble;
      break;
    }

    const bool dual_feasible_m = rd_m.squaredNorm() == 0.0;
    Eigen::MatrixXd xrd_sinv;
    if (!dual_feasible_m) xrd_sinv = sym(x * rd_m * sinv);

    auto direction = [&](double sigma_mu, const Eigen::MatrixXd* corr, const Eigen::VectorXd* corr_l) {
      Direction dir;
      Eigen::MatrixXd z = sigma_mu * sinv;
      if (corr) z -= *corr;
      if (!dual_feasible_m) z -= xrd_sinv;
      Eigen::VectorXd r = w.b - op.apply(z);
      Eigen::VectorXd zl;
      if (pl > 0) {
        zl = Eigen::VectorXd::Constant(pl, sigma_mu);
        if (corr_l) zl -= *corr_l;
        zl = zl.cwiseQuotient(sl) - xs.cwiseProduct(rd_l);
        r -= w.al * zl;
      }
      dir.dy = m > 0 ? Eigen::VectorXd(schur_llt.solve(r)) : Eigen::VectorXd(0);
      dir.ds = rd_m - op.adjoint(dir.dy);
      dir.dx = sigma_mu * sinv - x;
      if (corr) dir.dx -= *corr;
      Eigen::MatrixXd t = x * dir.ds;
      dir.dx -= sym(t * sinv);
      if (pl > 0) {
        dir.dsl = rd_l - w.al.transpose() * dir.dy;
        Eigen::VectorXd num = Eigen::VectorXd::Constant(pl, sigma_mu);
        if (corr_l) num -= *corr_l;
        dir.dxl = num.cwiseQuotient(sl) - xl - xs.cwiseProduct(dir.dsl);
      }
      return dir;
    };

    const Direction pred = direction(0.0, nullptr, nullptr);
    double ap = std::min(1.0, tau * std::min(psd_step_limit(lx, pred.dx), pl > 0 ? lp_step_limit(xl, pred.dxl) : kInf));
    double ad = std::min(1.0, tau * std::min(psd_step_limit(ls, pred.ds), pl > 0 ? lp_step_limit(sl, pred.dsl) : kInf));
    double mu_aff = frobenius_dot(x + ap * pred.dx, s + ad * pred.ds);
    if (pl > 0) mu_aff += (xl + ap * pred.dxl).dot(sl + ad * pred.dsl);
    mu_aff /= nvar;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    const Eigen::MatrixXd corr = sym(pred.dx * pred.ds * sinv);
    Eigen::VectorXd corr_l;
    if (pl > 0) corr_l = pred.dxl.cwiseProduct(pred.dsl);
    const Direction dir = direction(sigma * mu, &corr, pl > 0 ? &corr_l : nullptr);

    ap = std::min(1.0, tau * std::min(psd_step_limit(lx, dir.dx), pl > 0 ? lp_step_limit(xl, dir.dxl) : kInf));
    ad = std::min(1.0, tau * std::min(psd_step_limit(ls, dir.ds), pl > 0 ? lp_step_limit(sl, dir.dsl) : kInf));

    // Accept only steps whose endpoint factors; the factor is reused next iteration.
    auto take = [&](Eigen::MatrixXd& v, const Eigen::MatrixXd& dv, Llt& llt, double& a) {
      for (int attempt = 0; attempt < 60; ++attempt) {
        Eigen::MatrixXd cand = v + a * dv;
        llt.compute(cand);
        if (llt.info() == Eigen::Success) {
          v = std::move(cand);
          return true;
        }
        a *= 0.8;
      }
      return false;
    };
    const Eigen::MatrixXd x_prev = x, s_prev = s;
    if (!take(x, dir.dx, lx, ap) || !take(s, dir.ds, ls, ad)) {
      log("step length collapsed while keeping iterates positive definite");
      x = x_prev;
      s = s_prev;
      lx.compute(x);
      ls.compute(s);
      status = SolveStatus::NumericalTrouble;
      break;
    }
    if (pl > 0) {
      xl += ap * dir.dxl;
      sl += ad * dir.dsl;
    }
    y += ad * dir.dy;
    info.alpha_primal = ap;
    info.alpha_dual = ad;
    stall = (ap < 1e-10 && ad < 1e-10) ? stall + 1 : 0;
    if (stall >= 3) {
      log("no progress: step lengths vanished");
      status = SolveStatus::NumericalTrouble;
      ++it;
      break;
    }
  }

  sol.status = status;
  sol.iterations = it;

  auto pad = [&](const Eigen::MatrixXd& a) {
    if (!reduced) return a;
    Eigen::MatrixXd full = Eigen::MatrixXd::Zero(n, n);
    full(keep, keep) = a;
    return full;
  };
  sol.x = pad(bs * x);
  sol.s = pad(cs * s);
  sol.y = Eigen::VectorXd::Zero(m_all);
  for (Index j = 0; j < m; ++j) sol.y[rows[static_cast<std::size_t>(j)]] = sgn * cs * dr[j] * y[j];
  if (pl > 0) {
    sol.x_lin = bs * xl;
    sol.s_lin = cs * sl;
  }
  sol.primal_obj = objective_value(p, sol.x, sol.x_lin);
  sol.dual_obj = p.rhs().dot(sol.y);
  {
    const Eigen::VectorXd ax = apply_constraints(p, sol.x, sol.x_lin);
    sol.residuals.primal = m_all > 0 ? (ax - p.rhs()).norm() / (1.0 + p.rhs().norm()) : 0.0;
  }
  sol.residuals.dual = drel;
  sol.residuals.gap = std::abs(sol.primal_obj - sol.dual_obj) / (1.0 + std::abs(sol.primal_obj) + std::abs(sol.dual_obj));

  if (status == SolveStatus::PrimalInfeasible) {
    Eigen::VectorXd cert = Eigen::VectorXd::Zero(m_all);
    for (Index j = 0; j < m; ++j) cert[rows[static_cast<std::size_t>(j)]] = dr[j] * y[j];
    const double by = p.rhs().dot(cert);
    sol.certificate = by > 0.0 ? Eigen::VectorXd(cert / by) : cert;
  } else if (status == SolveStatus::DualInfeasible) {
    const double tr = x.trace();
    sol.ray_x = pad(tr > 0.0 ? Eigen::MatrixXd(x / tr) : x);
  }
  sol.wall_time_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return sol;
}

FeasibilityResult solve_feasibility(const SdpProblem& p, const SolverOptions& opts) {
  SdpProblem q = p;
  q.c = SymMatrix::zero(p.dim());
  q.sense = Sense::Minimize;
  if (q.linear) q.linear->cost.setZero();
  FeasibilityResult r;
  r.solution = solve(q, opts);
  switch (r.solution.status) {
    case SolveStatus::Optimal:
      r.status = FeasibilityStatus::Feasible;
      r.x = r.solution.x;
      break;
    case SolveStatus::PrimalInfeasible:
      r.status = FeasibilityStatus::Infeasible;
      r.certificate = r.solution.certificate;
      break;
    default: {
      // Feasible sets without interior can stall the iteration just short of
      // tol_primal; the iterate still counts if it meets the residual contract.
      const FeasibilityResiduals res = r.solution.x.size() > 0
                                           ? feasibility_residuals(q, r.solution.x, r.solution.x_lin)
                                           : FeasibilityResiduals{1.0, -1.0};
      if (res.max_equality_violation <= kFeasibleEqualityTolerance && res.min_eigenvalue >= kFeasibleEigenTolerance) {
        r.status = FeasibilityStatus::Feasible;
        r.x = r.solution.x;
      } else {
        r.status = FeasibilityStatus::Indeterminate;
      }
      break;
    }
  }
  return r;
}

}  // namespace rpsdp
