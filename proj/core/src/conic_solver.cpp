#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>

#include "risnoma/conic/embed.hpp"
#include "risnoma/conic/program.hpp"

namespace risnoma::conic {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// standard form: min <c,x> s.t. A x = b, x in K = R_+^nl x prod S_+^{d_i}
// ---------------------------------------------------------------------------

struct ConeVec {
  VecR lin;
  std::vector<MatR> mats;

  static ConeVec zero(int n_lp, const std::vector<int>& dims) {
    ConeVec v;
    v.lin = VecR::Zero(n_lp);
    v.mats.reserve(dims.size());
    for (int d : dims) v.mats.push_back(MatR::Zero(d, d));
    return v;
  }
  static ConeVec identity(int n_lp, const std::vector<int>& dims) {
    ConeVec v;
    v.lin = VecR::Ones(n_lp);
    v.mats.reserve(dims.size());
    for (int d : dims) v.mats.push_back(MatR::Identity(d, d));
    return v;
  }
  double dot(const ConeVec& o) const {
    double s = lin.dot(o.lin);
    for (std::size_t i = 0; i < mats.size(); ++i)
      s += mats[i].cwiseProduct(o.mats[i]).sum();
    return s;
  }
  double norm() const { return std::sqrt(std::max(0.0, dot(*this))); }
  void axpy(double a, const ConeVec& o) {
    lin += a * o.lin;
    for (std::size_t i = 0; i < mats.size(); ++i) mats[i] += a * o.mats[i];
  }
  void scale(double a) {
    lin *= a;
    for (auto& m : mats) m *= a;
  }
  bool finite() const {
    if (!lin.allFinite()) return false;
    for (const auto& m : mats)
      if (!m.allFinite()) return false;
    return true;
  }
};

struct Row {
  std::vector<std::pair<int, double>> lin;  // (lp index, coeff)
  std::vector<std::pair<int, MatR>> mats;   // (block index, symmetric coeff)
  double b = 0.0;
  double frob() const {
    double s = b * b;
    for (const auto& [j, a] : lin) s += a * a;
    for (const auto& [i, m] : mats) s += m.squaredNorm();
    return std::sqrt(s);
  }
};

struct Standard {
  int n_lp = 0;
  std::vector<int> dims;
  std::vector<Row> rows;
  ConeVec c;

  int m() const { return static_cast<int>(rows.size()); }
  int nu() const {
    int v = n_lp;
    for (int d : dims) v += d;
    return v;
  }

  VecR apply_A(const ConeVec& x) const {
    VecR out = VecR::Zero(m());
    for (int r = 0; r < m(); ++r) {
      double s = 0.0;
      for (const auto& [j, a] : rows[r].lin) s += a * x.lin(j);
      for (const auto& [i, mcoef] : rows[r].mats)
        s += mcoef.cwiseProduct(x.mats[i]).sum();
      out(r) = s;
    }
    return out;
  }

  ConeVec apply_At(const VecR& y) const {
    ConeVec out = ConeVec::zero(n_lp, dims);
    for (int r = 0; r < m(); ++r) {
      const double yr = y(r);
      if (yr == 0.0) continue;
      for (const auto& [j, a] : rows[r].lin) out.lin(j) += a * yr;
      for (const auto& [i, mcoef] : rows[r].mats) out.mats[i] += yr * mcoef;
    }
    return out;
  }

  VecR b_vec() const {
    VecR b(m());
    for (int r = 0; r < m(); ++r) b(r) = rows[r].b;
    return b;
  }
};

// ---------------------------------------------------------------------------
// lowering ConicProgram -> Standard
// ---------------------------------------------------------------------------

struct VarMap {
  // user matrix var -> psd block index (complex ones are embedded)
  std::vector<int> mat_block;
  // user scalar var -> lp index
  std::vector<int> scalar_index;
};

struct Lowered {
  Standard std_form;
  VarMap map;
  bool trivially_infeasible = false;
  std::string note;
};

MatR lower_mat_coeff(const ConicProgram::MatVarDecl& decl, const MatC& coeff) {
  if (decl.complex_hermitian) {
    // Tr(embed(A)/2 * embed(X)) = Re Tr(A X)
    return 0.5 * embed_hermitian(coeff);
  }
  return 0.5 * (coeff.real() + coeff.real().transpose());
}

void add_expr_terms(const ConicProgram& p, const AffineExpr& e, Row& row,
                    const VarMap& map) {
  for (const auto& t : e.mat_terms()) {
    const auto& decl = p.mat_vars()[t.var];
    row.mats.emplace_back(map.mat_block[t.var], lower_mat_coeff(decl, t.coeff));
  }
  for (const auto& t : e.scalar_terms())
    row.lin.emplace_back(map.scalar_index[t.var], t.coeff);
}

Lowered lower(const ConicProgram& p) {
  Lowered lo;
  Standard& sf = lo.std_form;
  VarMap& map = lo.map;

  map.mat_block.resize(p.mat_vars().size());
  for (std::size_t i = 0; i < p.mat_vars().size(); ++i) {
    const auto& decl = p.mat_vars()[i];
    map.mat_block[i] = static_cast<int>(sf.dims.size());
    sf.dims.push_back(decl.complex_hermitian ? 2 * decl.dim : decl.dim);
  }
  map.scalar_index.resize(p.scalar_vars().size());
  for (std::size_t j = 0; j < p.scalar_vars().size(); ++j)
    map.scalar_index[j] = sf.n_lp++;

  auto new_slack = [&sf]() { return sf.n_lp++; };

  // user constraints
  for (const auto& con : p.constraints()) {
    Row row;
    add_expr_terms(p, con.lhs, row, map);
    row.b = con.rhs - con.lhs.constant();
    if (row.lin.empty() && row.mats.empty()) {
      const bool ok = con.cmp == Cmp::LE   ? 0.0 <= row.b + 1e-12
                      : con.cmp == Cmp::GE ? 0.0 >= row.b - 1e-12
                                           : std::abs(row.b) <= 1e-12;
      if (!ok) {
        lo.trivially_infeasible = true;
        lo.note = "constant constraint '" + con.label + "' is violated";
        return lo;
      }
      continue;
    }
    if (con.cmp == Cmp::LE) row.lin.emplace_back(new_slack(), 1.0);
    if (con.cmp == Cmp::GE) row.lin.emplace_back(new_slack(), -1.0);
    sf.rows.push_back(std::move(row));
  }

  // scalar bounds as margin rows
  for (std::size_t j = 0; j < p.scalar_vars().size(); ++j) {
    const auto& decl = p.scalar_vars()[j];
    if (decl.lo > 0.0) {
      Row row;
      row.lin.emplace_back(map.scalar_index[j], 1.0);
      row.lin.emplace_back(new_slack(), -1.0);
      row.b = decl.lo;
      sf.rows.push_back(std::move(row));
    }
    if (std::isfinite(decl.hi)) {
      Row row;
      row.lin.emplace_back(map.scalar_index[j], 1.0);
      row.lin.emplace_back(new_slack(), 1.0);
      row.b = decl.hi;
      sf.rows.push_back(std::move(row));
    }
  }

  // LMI blocks: slack PSD block + linking rows  S_ij = expr_ij
  for (const auto& lmi : p.lmis()) {
    const int d = lmi.dim;
    const int block = static_cast<int>(sf.dims.size());
    sf.dims.push_back(d);
    int entry = 0;
    for (int i = 0; i < d; ++i) {
      for (int j = i; j < d; ++j, ++entry) {
        const AffineExpr& e = lmi.upper[entry];
        Row row;
        add_expr_terms(p, e, row, map);
        MatR link = MatR::Zero(d, d);
        if (i == j) {
          link(i, i) = -1.0;
        } else {
          link(i, j) = -0.5;
          link(j, i) = -0.5;
        }
        row.mats.emplace_back(block, std::move(link));
        row.b = -e.constant();
        sf.rows.push_back(std::move(row));
      }
    }
  }

  // objective: min <c, x>
  sf.c = ConeVec::zero(sf.n_lp, sf.dims);
  const double sense = p.maximize() ? -1.0 : 1.0;
  for (const auto& t : p.objective().mat_terms())
    sf.c.mats[map.mat_block[t.var]] +=
        sense * lower_mat_coeff(p.mat_vars()[t.var], t.coeff);
  for (const auto& t : p.objective().scalar_terms())
    sf.c.lin(map.scalar_index[t.var]) += sense * t.coeff;

  // row equilibration
  for (auto& row : sf.rows) {
    double s = 0.0;
    for (const auto& [j, a] : row.lin) s = std::max(s, std::abs(a));
    for (const auto& [i, mcoef] : row.mats) s = std::max(s, mcoef.norm());
    s = std::max(s, 1e-10);
    const double inv = 1.0 / s;
    for (auto& [j, a] : row.lin) a *= inv;
    for (auto& [i, mcoef] : row.mats) mcoef *= inv;
    row.b *= inv;
  }
  // objective normalization (reported objective is recomputed in user space)
  double cnorm = sf.c.norm();
  if (cnorm > 1e-12) sf.c.scale(1.0 / cnorm);

  return lo;
}

// ---------------------------------------------------------------------------
// homogeneous self-dual interior-point method, HKM direction with Mehrotra
// predictor-corrector
// ---------------------------------------------------------------------------

struct BlockFactors {
  std::vector<MatR> zinv;
  std::vector<Eigen::LLT<MatR>> x_llt;
  std::vector<Eigen::LLT<MatR>> z_llt;
  bool ok = true;
};

BlockFactors factor_blocks(const ConeVec& x, const ConeVec& z) {
  BlockFactors f;
  const std::size_t nb = x.mats.size();
  f.zinv.resize(nb);
  f.x_llt.resize(nb);
  f.z_llt.resize(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    auto factor = [](Eigen::LLT<MatR>& llt, const MatR& m) {
      llt.compute(m);
      if (llt.info() != Eigen::Success) {
        // boundary iterates can lose definiteness to round-off
        const double jitter = 1e-14 * (1.0 + m.trace());
        MatR bumped = m;
        bumped.diagonal().array() += jitter;
        llt.compute(bumped);
      }
      return llt.info() == Eigen::Success;
    };
    if (!factor(f.x_llt[i], x.mats[i]) || !factor(f.z_llt[i], z.mats[i])) {
      f.ok = false;
      return f;
    }
    const int d = static_cast<int>(z.mats[i].rows());
    f.zinv[i] = f.z_llt[i].solve(MatR::Identity(d, d));
    f.zinv[i] = 0.5 * (f.zinv[i] + f.zinv[i].transpose());
  }
  return f;
}

/// P(u) = sym(X u Z^{-1}) blockwise; (x./z) .* u on the LP cone.
ConeVec apply_P(const Standard& sf, const ConeVec& x, const ConeVec& z,
                const BlockFactors& f, const ConeVec& u) {
  ConeVec out = ConeVec::zero(sf.n_lp, sf.dims);
  out.lin = x.lin.cwiseQuotient(z.lin).cwiseProduct(u.lin);
  for (std::size_t i = 0; i < x.mats.size(); ++i) {
    const MatR t = x.mats[i] * u.mats[i] * f.zinv[i];
    out.mats[i] = 0.5 * (t + t.transpose());
  }
  return out;
}

/// Largest alpha with v + alpha*dv staying in the cone (up to cap).
double max_step(const ConeVec& v, const ConeVec& dv,
                const std::vector<Eigen::LLT<MatR>>& llt, double cap) {
  double alpha = cap;
  for (int j = 0; j < v.lin.size(); ++j)
    if (dv.lin(j) < 0.0) alpha = std::min(alpha, -v.lin(j) / dv.lin(j));
  for (std::size_t i = 0; i < v.mats.size(); ++i) {
    const MatR l = llt[i].matrixL();
    const MatR half = l.triangularView<Eigen::Lower>().solve(dv.mats[i]);
    const MatR half_t = half.transpose();
    MatR s = l.triangularView<Eigen::Lower>().solve(half_t).transpose();
    s = 0.5 * (s + s.transpose()).eval();  // L^{-1} dV L^{-T}
    Eigen::SelfAdjointEigenSolver<MatR> es(s, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin < 0.0) alpha = std::min(alpha, -1.0 / lmin);
  }
  return alpha;
}

struct Direction {
  ConeVec dx, dz;
  VecR dy;
  double dtau = 0.0, dkappa = 0.0;
};

struct NormalSystem {
  Eigen::LDLT<MatR> ldlt;
  bool ok = false;
};

NormalSystem build_normal(const Standard& sf, const ConeVec& x, const ConeVec& z,
                          const BlockFactors& f,
                          const std::vector<std::vector<std::pair<int, const MatR*>>>&
                              block_rows) {
  const int m = sf.m();
  MatR big = MatR::Zero(m, m);

  // LP contribution: rows couple only through shared lp variables
  {
    const VecR d = x.lin.cwiseQuotient(z.lin);
    std::vector<std::vector<std::pair<int, double>>> var_rows(sf.n_lp);
    for (int r = 0; r < m; ++r)
      for (const auto& [j, a] : sf.rows[r].lin) var_rows[j].emplace_back(r, a);
    for (int j = 0; j < sf.n_lp; ++j) {
      for (const auto& [r, a] : var_rows[j])
        for (const auto& [s, a2] : var_rows[j])
          if (r <= s) big(r, s) += a * a2 * d(j);
    }
  }

  // PSD contributions, blockwise
  for (std::size_t bidx = 0; bidx < sf.dims.size(); ++bidx) {
    const auto& touching = block_rows[bidx];
    for (std::size_t sj = 0; sj < touching.size(); ++sj) {
      const auto [srow, scoef] = touching[sj];
      const MatR bmat = f.zinv[bidx] * (*scoef) * x.mats[bidx];
      for (std::size_t ri = 0; ri <= sj; ++ri) {
        const auto [rrow, rcoef] = touching[ri];
        const double val = rcoef->cwiseProduct(bmat).sum();
        if (rrow <= srow)
          big(rrow, srow) += val;
        else
          big(srow, rrow) += val;
      }
    }
  }

  big = MatR(big.selfadjointView<Eigen::Upper>());
  big.diagonal().array() += 1e-13 * (1.0 + big.diagonal().maxCoeff());

  NormalSystem ns;
  ns.ldlt.compute(big);
  ns.ok = ns.ldlt.info() == Eigen::Success;
  return ns;
}

struct HsdState {
  ConeVec x, z;
  VecR y;
  double tau = 1.0, kappa = 1.0;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::NumericalFailure;
  ConeVec x;
  double tau = 0.0;
  int iterations = 0;
  double pres = kInf, dres = kInf, relgap = kInf;
  std::string message;
};

SolveOutcome run_hsd(const Standard& sf, const SolverOptions& opt) {
  SolveOutcome out;
  const int m = sf.m();
  const double nu = sf.nu();
  const VecR b = sf.b_vec();
  const double bnorm = b.norm();
  const double cnorm = sf.c.norm();

  // rows touching each PSD block, for normal-matrix assembly
  std::vector<std::vector<std::pair<int, const MatR*>>> block_rows(sf.dims.size());
  for (int r = 0; r < m; ++r)
    for (const auto& [i, mcoef] : sf.rows[r].mats)
      block_rows[i].emplace_back(r, &mcoef);

  HsdState st;
  st.x = ConeVec::identity(sf.n_lp, sf.dims);
  st.z = ConeVec::identity(sf.n_lp, sf.dims);
  st.y = VecR::Zero(m);

  const double mu0 = (st.x.dot(st.z) + st.tau * st.kappa) / (nu + 1.0);

  for (int iter = 0; iter <= opt.max_iterations; ++iter) {
    out.iterations = iter;

    // residuals of the homogeneous model
    const VecR r1 = sf.apply_A(st.x) - b * st.tau;
    ConeVec r2 = sf.apply_At(st.y);
    r2.scale(-1.0);
    r2.axpy(st.tau, sf.c);
    r2.axpy(-1.0, st.z);
    const double cx = sf.c.dot(st.x);
    const double by = b.dot(st.y);
    const double r3 = by - cx - st.kappa;
    const double mu = (st.x.dot(st.z) + st.tau * st.kappa) / (nu + 1.0);

    // termination on the scaled candidate
    {
      const double inv_tau = 1.0 / st.tau;
      const double pres = (r1 * inv_tau).norm() / (1.0 + bnorm);
      ConeVec dres_vec = sf.apply_At(st.y);
      dres_vec.axpy(1.0, st.z);
      dres_vec.axpy(-st.tau, sf.c);
      const double dres = dres_vec.norm() * inv_tau / (1.0 + cnorm);
      const double pobj = cx * inv_tau;
      const double dobj = by * inv_tau;
      const double relgap =
          std::abs(pobj - dobj) / (1.0 + std::max(std::abs(pobj), std::abs(dobj)));
      out.pres = pres;
      out.dres = dres;
      out.relgap = relgap;
      if (opt.verbose)
        std::fprintf(stderr, "hsd %3d mu=%9.2e tau=%8.1e kap=%8.1e p=%8.1e d=%8.1e g=%8.1e\n",
                     iter, mu, st.tau, st.kappa, pres, dres, relgap);
      if (pres < opt.tolerance && dres < opt.tolerance && relgap < opt.tolerance) {
        out.status = SolveStatus::Optimal;
        out.x = st.x;
        out.tau = st.tau;
        return out;
      }
      // infeasibility certificates
      if (by > 0.0) {
        ConeVec cert = sf.apply_At(st.y);
        cert.axpy(1.0, st.z);
        if (cert.norm() <= opt.tolerance * 1e2 * by) {
          out.status = SolveStatus::Infeasible;
          out.message = "primal infeasibility certificate";
          return out;
        }
      }
      if (cx < 0.0) {
        if (sf.apply_A(st.x).norm() <= opt.tolerance * 1e2 * (-cx)) {
          out.status = SolveStatus::NumericalFailure;
          out.message = "dual infeasibility certificate (problem unbounded)";
          return out;
        }
      }
      // the homogeneous model converged to tau ~ 0: classify by the signs
      if (mu < 1e-14 * mu0 || (st.tau < 1e-10 && st.kappa > 1e-6)) {
        if (by > 0.0) {
          out.status = SolveStatus::Infeasible;
          out.message = "tau -> 0 with b'y > 0";
        } else {
          out.status = SolveStatus::NumericalFailure;
          out.message = "tau -> 0 without a clean certificate";
        }
        return out;
      }
    }
    if (iter == opt.max_iterations) break;

    const BlockFactors f = factor_blocks(st.x, st.z);
    if (!f.ok) {
      out.message = "cone factorization failed";
      break;
    }
    const NormalSystem ns = build_normal(sf, st.x, st.z, f, block_rows);
    if (!ns.ok) {
      out.message = "normal system factorization failed";
      break;
    }

    const ConeVec pc = apply_P(sf, st.x, st.z, f, sf.c);
    const VecR apc = sf.apply_A(pc);
    const VecR u = apc + b;
    const VecR g2 = ns.ldlt.solve(u);
    const double rho = sf.c.dot(pc);

    auto solve_direction = [&](double sigma, double eta, const Direction* aff,
                               Direction& dir) -> bool {
      // complementarity targets
      ConeVec rc = ConeVec::zero(sf.n_lp, sf.dims);
      rc.lin = (sigma * mu) * st.z.lin.cwiseInverse() - st.x.lin;
      for (std::size_t i = 0; i < sf.dims.size(); ++i)
        rc.mats[i] = (sigma * mu) * f.zinv[i] - st.x.mats[i];
      double rtk = sigma * mu - st.tau * st.kappa;
      if (aff) {
        rc.lin -= aff->dx.lin.cwiseProduct(aff->dz.lin).cwiseQuotient(st.z.lin);
        for (std::size_t i = 0; i < sf.dims.size(); ++i) {
          const MatR t = aff->dx.mats[i] * aff->dz.mats[i] * f.zinv[i];
          rc.mats[i] -= 0.5 * (t + t.transpose());
        }
        rtk -= aff->dtau * aff->dkappa;
      }

      const ConeVec pr2 = apply_P(sf, st.x, st.z, f, r2);
      const VecR h1 = -eta * r1 - sf.apply_A(rc) + eta * sf.apply_A(pr2);
      const VecR g1 = ns.ldlt.solve(h1);
      const double h2 = -eta * r3 + sf.c.dot(rc) - eta * sf.c.dot(pr2) + rtk / st.tau;
      const VecR bm = b - apc;
      const double denom = bm.dot(g2) + rho + st.kappa / st.tau;
      if (!std::isfinite(denom) || std::abs(denom) < 1e-300) return false;
      dir.dtau = (h2 - bm.dot(g1)) / denom;
      dir.dy = g1 + g2 * dir.dtau;
      dir.dz = sf.apply_At(dir.dy);
      dir.dz.scale(-1.0);
      dir.dz.axpy(dir.dtau, sf.c);
      dir.dz.axpy(eta, r2);
      dir.dx = rc;
      const ConeVec pdz = apply_P(sf, st.x, st.z, f, dir.dz);
      dir.dx.axpy(-1.0, pdz);
      dir.dkappa = (rtk - st.kappa * dir.dtau) / st.tau;
      if (!dir.dx.finite() || !dir.dz.finite() || !dir.dy.allFinite() ||
          !std::isfinite(dir.dtau) || !std::isfinite(dir.dkappa))
        return false;

      if (opt.self_check) {
        const double e1 = (sf.apply_A(dir.dx) - b * dir.dtau + eta * r1).norm();
        ConeVec e2v = sf.apply_At(dir.dy);
        e2v.scale(-1.0);
        e2v.axpy(dir.dtau, sf.c);
        e2v.axpy(-1.0, dir.dz);
        e2v.axpy(eta, r2);
        const double e2 = e2v.norm();
        const double e3 =
            std::abs(b.dot(dir.dy) - sf.c.dot(dir.dx) - dir.dkappa + eta * r3);
        const double scale = 1.0 + std::abs(mu) + dir.dx.norm() + dir.dz.norm();
        if (e1 > 1e-6 * scale || e2 > 1e-6 * scale || e3 > 1e-6 * scale) {
          std::fprintf(stderr, "self-check: e1=%.3e e2=%.3e e3=%.3e scale=%.3e\n",
                       e1, e2, e3, scale);
          throw std::logic_error("conic solver: Newton system self-check failed");
        }
      }
      return true;
    };

    Direction aff;
    if (!solve_direction(0.0, 1.0, nullptr, aff)) {
      out.message = "predictor direction failed";
      break;
    }
    double alpha_aff = max_step(st.x, aff.dx, f.x_llt, 1.0);
    alpha_aff = max_step(st.z, aff.dz, f.z_llt, alpha_aff);
    if (aff.dtau < 0.0) alpha_aff = std::min(alpha_aff, -st.tau / aff.dtau);
    if (aff.dkappa < 0.0) alpha_aff = std::min(alpha_aff, -st.kappa / aff.dkappa);

    double mu_aff = 0.0;
    {
      ConeVec xa = st.x;
      xa.axpy(alpha_aff, aff.dx);
      ConeVec za = st.z;
      za.axpy(alpha_aff, aff.dz);
      mu_aff = (xa.dot(za) + (st.tau + alpha_aff * aff.dtau) *
                                 (st.kappa + alpha_aff * aff.dkappa)) /
               (nu + 1.0);
    }
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3.0);
    sigma = std::min(std::max(sigma, 1e-10), 0.999);

    Direction dir;
    if (!solve_direction(sigma, 1.0 - sigma, &aff, dir)) {
      out.message = "corrector direction failed";
      break;
    }
    double alpha = max_step(st.x, dir.dx, f.x_llt, kInf);
    alpha = max_step(st.z, dir.dz, f.z_llt, alpha);
    if (dir.dtau < 0.0) alpha = std::min(alpha, -st.tau / dir.dtau);
    if (dir.dkappa < 0.0) alpha = std::min(alpha, -st.kappa / dir.dkappa);
    alpha = std::min(1.0, opt.step_fraction * alpha);
    if (alpha < 1e-9) {
      out.message = "step length collapsed";
      break;
    }

    st.x.axpy(alpha, dir.dx);
    st.z.axpy(alpha, dir.dz);
    st.y += alpha * dir.dy;
    st.tau += alpha * dir.dtau;
    st.kappa += alpha * dir.dkappa;
  }

  if (out.message.empty()) out.message = "iteration limit reached";
  return out;
}

}  // namespace

SolveReport ConicProgram::solve(const SolverOptions& options) const {
  SolveReport report;
  const Lowered lo = lower(*this);
  if (lo.trivially_infeasible) {
    report.status = SolveStatus::Infeasible;
    report.message = lo.note;
    return report;
  }
  if (lo.std_form.m() == 0) {
    report.status = SolveStatus::Optimal;
    report.message = "no constraints";
    report.objective = objective().constant();
    return report;
  }

  const SolveOutcome outcome = run_hsd(lo.std_form, options);
  report.solver_iterations = outcome.iterations;
  report.primal_residual = outcome.pres;
  report.dual_residual = outcome.dres;
  report.gap = outcome.relgap;
  report.message = outcome.message;
  report.status = outcome.status;
  if (outcome.status != SolveStatus::Optimal) return report;

  const double inv_tau = 1.0 / outcome.tau;
  for (std::size_t i = 0; i < mat_vars_.size(); ++i) {
    const auto& decl = mat_vars_[i];
    const MatR& block = outcome.x.mats[lo.map.mat_block[i]];
    if (decl.complex_hermitian) {
      report.mat_values[decl.name] = unembed_hermitian(block * inv_tau);
    } else {
      const MatR sym = 0.5 * inv_tau * (block + block.transpose());
      report.mat_values[decl.name] = sym.cast<Complex>();
    }
  }
  for (std::size_t j = 0; j < scalar_vars_.size(); ++j)
    report.scalar_values[scalar_vars_[j].name] =
        outcome.x.lin(lo.map.scalar_index[j]) * inv_tau;

  // user-space objective value
  double obj = objective_.constant();
  for (const auto& t : objective_.mat_terms()) {
    const MatC& val = report.mat_values[mat_vars_[t.var].name];
    obj += (t.coeff.adjoint() * val).trace().real();
  }
  for (const auto& t : objective_.scalar_terms())
    obj += t.coeff * report.scalar_values[scalar_vars_[t.var].name];
  report.objective = obj;
  return report;
}

}  // namespace risnoma::conic
