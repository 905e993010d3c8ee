#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>

#include "risnoma/algorithms.hpp"
#include "risnoma/conic/rank_one.hpp"

namespace risnoma {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

MatC hermitianize(const MatC& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

std::vector<PassiveQosRow> noma_passive_qos_rows(
    const ProblemContext& ctx, const std::vector<MatC>& active_mats,
    const std::vector<PowerPair>& power_coeffs) {
  const int k_clusters = ctx.k_clusters();
  const double inv_noise = 1.0 / ctx.noise_power;
  std::vector<PassiveQosRow> rows;

  for (int k = 0; k < k_clusters; ++k) {
    // E_{k,i,j} = Gamma_{k,i} W_j Gamma_{k,i}^H / sigma^2
    std::vector<MatC> e_near(k_clusters), e_far(k_clusters);
    for (int j = 0; j < k_clusters; ++j) {
      e_near[j] = hermitianize(ctx.effective.gamma_rnu[k] * active_mats[j] *
                               ctx.effective.gamma_rnu[k].adjoint() * inv_noise);
      e_far[j] = hermitianize(ctx.effective.gamma_rfu[k] * active_mats[j] *
                              ctx.effective.gamma_rfu[k].adjoint() * inv_noise);
    }
    const double r_n = ctx.r_min_near(k);
    const double r_f = ctx.r_min_far(k);
    const double a_n = power_coeffs[k].near;
    const double a_f = power_coeffs[k].far;

    if (r_n > 0.0) {
      MatC coeff = a_n * e_near[k];
      for (int j = 0; j < k_clusters; ++j)
        if (j != k) coeff -= r_n * e_near[j];
      rows.push_back({std::move(coeff), r_n});
    }
    if (r_f > 0.0) {
      MatC coeff_n = (a_f - r_f * a_n) * e_near[k];
      MatC coeff_f = (a_f - r_f * a_n) * e_far[k];
      for (int j = 0; j < k_clusters; ++j) {
        if (j == k) continue;
        coeff_n -= r_f * e_near[j];
        coeff_f -= r_f * e_far[j];
      }
      rows.push_back({std::move(coeff_n), r_f});
      rows.push_back({std::move(coeff_f), r_f});
    }
  }
  return rows;
}

SrcrResult solve_passive_srcr(const ProblemContext& ctx,
                              const std::vector<MatC>& active_mats,
                              const std::vector<PassiveQosRow>& qos_rows,
                              const MatC& v_init, int outer_index) {
  using namespace conic;
  const int m = ctx.m_elements();

  // beampattern coefficients D_q = Upsilon_q (sum W) Upsilon_q^H
  MatC w_sum = MatC::Zero(ctx.n_antennas(), ctx.n_antennas());
  for (const auto& w : active_mats) w_sum += w;
  std::vector<MatC> d_q;
  double scale = 0.0;
  for (const auto& upsilon : ctx.effective.upsilon) {
    d_q.push_back(hermitianize(upsilon * w_sum * upsilon.adjoint()));
    scale = std::max(scale, d_q.back().norm());
  }
  const double bp_scale = std::max(scale * m, 1e-300);

  auto objective_at = [&](const MatC& v) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& d : d_q) best = std::min(best, (v * d).trace().real());
    return best;
  };

  auto solve_once = [&](double epsilon, const VecC& e_max) -> SolveReport {
    ConicProgram p;
    const MatVarId v = p.add_hermitian_var("V", m);
    const ScalarVarId chi = p.add_scalar_var("chi", ctx.alg.strict_margin);
    for (std::size_t q = 0; q < d_q.size(); ++q) {
      AffineExpr e = trace_of(v, d_q[q] / bp_scale);
      e.add_scalar(chi, -1.0);
      p.add_constraint(e, Cmp::GE, 0.0, "beampattern/" + std::to_string(q));
    }
    for (int i = 0; i < m; ++i) {
      MatC unit = MatC::Zero(m, m);
      unit(i, i) = 1.0;
      p.add_constraint(trace_of(v, unit), Cmp::EQ, 1.0,
                       "unit-diag/" + std::to_string(i));
    }
    for (std::size_t r = 0; r < qos_rows.size(); ++r)
      p.add_constraint(trace_of(v, qos_rows[r].coeff), Cmp::GE, qos_rows[r].rhs,
                       "qos/" + std::to_string(r));
    {
      // eigenvector cut  e^H V e >= eps Tr(V)
      const MatC cut = e_max * e_max.adjoint() - epsilon * MatC::Identity(m, m);
      p.add_constraint(trace_of(v, cut), Cmp::GE, 0.0, "rank-cut");
    }
    p.set_objective_max(scalar_of(chi, bp_scale));
    return p.solve(ctx.alg.solver);
  };

  SrcrResult result;
  MatC v_cur = v_init;
  double rho = ctx.alg.rho0;
  double epsilon = 0.0;
  double prev_accepted_obj = std::numeric_limits<double>::quiet_NaN();
  const double incoming_obj = objective_at(v_init);

  for (int t = 0; t < ctx.alg.max_inner; ++t) {
    const auto t0 = Clock::now();
    Eigen::SelfAdjointEigenSolver<MatC> es(v_cur);
    const VecC e_max = es.eigenvectors().col(m - 1);

    const SolveReport report = solve_once(epsilon, e_max);
    ++result.trace.solver_calls;

    TraceRow row;
    row.phase = "srcr";
    row.outer = outer_index;
    row.inner = t + 1;
    row.epsilon = epsilon;
    row.rho = rho;

    bool accepted = false;
    if (report.optimal()) {
      v_cur = hermitianize(report.mat_values.at("V"));
      rho = ctx.alg.rho0;
      accepted = true;
      row.objective = report.objective;
    } else {
      rho *= 0.5;
    }

    Eigen::SelfAdjointEigenSolver<MatC> es2(v_cur, Eigen::EigenvaluesOnly);
    const double lambda_max = es2.eigenvalues().maxCoeff();
    const double trace_ratio = v_cur.trace().real() / std::max(lambda_max, 1e-300);
    row.eig_ratios = {conic::extract_rank_one(v_cur).ratio};
    row.wall_ms = ms_since(t0);
    result.trace.total_wall_ms += row.wall_ms;
    result.trace.rows.push_back(std::move(row));

    if (!accepted && rho < ctx.alg.rho_underflow) {
      result.status = SrcrStatus::Stalled;
      break;
    }
    epsilon = std::min(1.0, lambda_max / v_cur.trace().real() + rho);

    if (accepted) {
      const double obj = objective_at(v_cur);
      const bool obj_settled =
          std::isfinite(prev_accepted_obj) &&
          std::abs(obj - prev_accepted_obj) <=
              ctx.alg.tol_inner * std::max(std::abs(obj), 1e-300);
      prev_accepted_obj = obj;
      if (trace_ratio < 1.0 + ctx.alg.srcr_rank_tol && obj_settled) break;
    }
  }

  const double final_obj = objective_at(v_cur);
  if (final_obj >= incoming_obj) {
    result.passive_mat = v_cur;
    result.objective = final_obj;
  } else {
    // keep the incoming iterate: it is rank-one and feasible
    result.passive_mat = v_init;
    result.objective = incoming_obj;
  }
  return result;
}

}  // namespace risnoma
