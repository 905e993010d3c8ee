#include <chrono>
#include <cmath>

#include "risnoma/algorithms.hpp"
#include "risnoma/conic/rank_one.hpp"
#include "risnoma/rng.hpp"

namespace risnoma {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string idx_name(const char* base, int k) { return base + std::to_string(k); }

double real_trace(const MatC& a, const MatC& b) {
  return (a * b).trace().real();
}

}  // namespace

conic::ConicProgram build_joint_subproblem(const JointData& data,
                                           const ScaState& sca, bool with_delta) {
  using namespace conic;
  const int k_clusters = static_cast<int>(data.h_near.size());
  const int n = static_cast<int>(data.h_near.empty() ? 0 : data.h_near[0].rows());
  ConicProgram p;

  std::vector<MatVarId> w(k_clusters);
  std::vector<ScalarVarId> a(k_clusters);
  std::vector<ScalarVarId> eta(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    w[k] = p.add_hermitian_var(idx_name("W", k), n);
    a[k] = p.add_scalar_var(idx_name("a", k), data.margin, 1.0 - data.margin);
    if (data.r_min_near(k) > 0.0)
      eta[k] = p.add_scalar_var(idx_name("eta", k), data.margin);
  }
  const ScalarVarId chi = p.add_scalar_var("chi", data.margin);
  ScalarVarId delta;
  if (with_delta) delta = p.add_scalar_var("delta");
  auto pad = [&](AffineExpr& e, double sign) {
    if (with_delta) e.add_scalar(delta, sign);
  };

  // beampattern floor per interest angle, in normalized units
  for (std::size_t q = 0; q < data.c_q.size(); ++q) {
    AffineExpr e;
    for (int k = 0; k < k_clusters; ++k)
      e.add_trace(w[k], data.c_q[q] / data.beampattern_scale);
    e.add_scalar(chi, -1.0);
    pad(e, 1.0);
    p.add_constraint(e, Cmp::GE, 0.0, "beampattern/" + std::to_string(q));
  }

  // transmit power budget
  {
    AffineExpr e;
    for (int k = 0; k < k_clusters; ++k)
      e.add_trace(w[k], MatC::Identity(n, n));
    pad(e, -1.0);
    p.add_constraint(e, Cmp::LE, data.p_max, "power");
  }

  for (int k = 0; k < k_clusters; ++k) {
    const double r_n = data.r_min_near(k);
    const double r_f = data.r_min_far(k);

    if (r_n > 0.0) {
      // Schur-complement form of  a_k Tr(W_k H_n) >= eta_k^2
      std::vector<AffineExpr> lmi(3);
      lmi[0] = scalar_of(a[k]);
      lmi[1] = scalar_of(eta[k]);
      lmi[2] = trace_of(w[k], data.h_near[k]);
      p.add_lmi(lmi, 2, "qos-lmi/" + std::to_string(k));

      // Taylor-linearized  eta_k^2 >= r_n (I_n + 1)
      AffineExpr e;
      e.add_scalar(eta[k], 2.0 * sca.eta_tilde(k));
      for (int j = 0; j < k_clusters; ++j)
        if (j != k) e.add_trace(w[j], -r_n * data.h_near[k]);
      pad(e, 1.0);
      p.add_constraint(e, Cmp::GE,
                       r_n + sca.eta_tilde(k) * sca.eta_tilde(k),
                       "qos-taylor/" + std::to_string(k));
    }

    if (r_f > 0.0) {
      // AGM-bounded RFU constraints, one 3x3 LMI each:
      //   L >= (beta/2) a^2 + (1/(2 beta)) Tr(W H)^2
      auto add_agm = [&](const MatC& h, double beta, const char* tag) {
        const double denom = r_f + 1.0;
        AffineExpr lhs = trace_of(w[k], h / denom);
        for (int j = 0; j < k_clusters; ++j)
          if (j != k) lhs.add_trace(w[j], -(r_f / denom) * h);
        lhs.add_constant(-r_f / denom);
        pad(lhs, 1.0);
        std::vector<AffineExpr> lmi(6);
        lmi[0] = lhs;                                            // (0,0)
        lmi[1] = scalar_of(a[k], std::sqrt(beta / 2.0));         // (0,1)
        lmi[2] = trace_of(w[k], h / std::sqrt(2.0 * beta));      // (0,2)
        lmi[3] = AffineExpr(1.0);                                // (1,1)
        lmi[4] = AffineExpr(0.0);                                // (1,2)
        lmi[5] = AffineExpr(1.0);                                // (2,2)
        p.add_lmi(lmi, 3, std::string(tag) + std::to_string(k));
      };
      add_agm(data.h_near[k], sca.beta1(k), "qos-agm-near/");
      add_agm(data.h_far[k], sca.beta2(k), "qos-agm-far/");
    }
  }

  if (with_delta) {
    p.set_objective_min(scalar_of(delta));
  } else {
    p.set_objective_max(scalar_of(chi, data.beampattern_scale));
  }
  return p;
}

namespace {

struct JointExtraction {
  std::vector<MatC> w;
  std::vector<PowerPair> a;
  VecR eta;
  double chi = 0.0;
};

JointExtraction extract_joint(const conic::SolveReport& report, int k_clusters,
                              const JointData& data) {
  JointExtraction out;
  out.eta = VecR::Zero(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    out.w.push_back(report.mat_values.at(idx_name("W", k)));
    const double a_n = report.scalar_values.at(idx_name("a", k));
    out.a.push_back({a_n, 1.0 - a_n});
    if (data.r_min_near(k) > 0.0)
      out.eta(k) = report.scalar_values.at(idx_name("eta", k));
  }
  out.chi = report.scalar_values.at("chi") * data.beampattern_scale;
  return out;
}

ScaState state_from_point(const JointData& data, const std::vector<MatC>& w,
                          const std::vector<PowerPair>& a, const VecR* eta) {
  const int k_clusters = static_cast<int>(w.size());
  ScaState st;
  st.beta1 = VecR::Ones(k_clusters);
  st.beta2 = VecR::Ones(k_clusters);
  st.eta_tilde = VecR::Ones(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    const double t_n = std::max(real_trace(w[k], data.h_near[k]), 1e-18);
    const double t_f = std::max(real_trace(w[k], data.h_far[k]), 1e-18);
    st.beta1(k) = t_n / a[k].near;
    st.beta2(k) = t_f / a[k].near;
    st.eta_tilde(k) =
        eta ? std::max((*eta)(k), 1e-12) : std::sqrt(a[k].near * t_n);
  }
  return st;
}

std::vector<double> w_eig_ratios(const std::vector<MatC>& w) {
  std::vector<double> out;
  out.reserve(w.size());
  for (const auto& wk : w) out.push_back(conic::extract_rank_one(wk).ratio);
  return out;
}

}  // namespace

JointResult solve_joint_sca(const ProblemContext& ctx, const MatC& passive_mat,
                            const ScaState& init, int outer_index) {
  init.validate();
  const JointData data = make_joint_data(ctx, passive_mat);
  const int k_clusters = ctx.k_clusters();
  ScaState state = init;
  JointResult result;
  double prev_obj = std::numeric_limits<double>::quiet_NaN();

  for (int t = 1; t <= ctx.alg.max_inner; ++t) {
    const auto t0 = Clock::now();
    const conic::ConicProgram prog = build_joint_subproblem(data, state);
    const conic::SolveReport report = prog.solve(ctx.alg.solver);
    ++result.trace.solver_calls;
    if (!report.optimal()) {
      if (t == 1 && report.status == conic::SolveStatus::Infeasible)
        throw NeedsInitialization("joint subproblem infeasible at first iterate");
      throw SolveFailure("joint subproblem solve failed at inner iteration " +
                         std::to_string(t) + ": " + report.message);
    }
    const JointExtraction point = extract_joint(report, k_clusters, data);
    state = state_from_point(data, point.w, point.a, &point.eta);

    TraceRow row;
    row.phase = "sca";
    row.outer = outer_index;
    row.inner = t;
    row.objective = point.chi;
    row.eig_ratios = w_eig_ratios(point.w);
    row.wall_ms = ms_since(t0);
    result.trace.total_wall_ms += row.wall_ms;
    result.trace.rows.push_back(std::move(row));

    result.active_mats = point.w;
    result.power_coeffs = point.a;
    result.objective = point.chi;
    result.state = state;

    if (std::isfinite(prev_obj) &&
        std::abs(point.chi - prev_obj) <=
            ctx.alg.tol_inner * std::max(std::abs(point.chi), 1e-300))
      break;
    prev_obj = point.chi;
  }
  return result;
}

FeasibleInit find_feasible_init(const ProblemContext& ctx, const MatC& passive_mat,
                                int outer_index) {
  const JointData data = make_joint_data(ctx, passive_mat);
  const int k_clusters = ctx.k_clusters();
  const int n = ctx.n_antennas();

  // randomized positive start around the uniform-power operating point
  RngStream rng(ctx.seed, "feasible-init/" + std::to_string(outer_index));
  ScaState state;
  state.beta1 = VecR::Ones(k_clusters);
  state.beta2 = VecR::Ones(k_clusters);
  state.eta_tilde = VecR::Ones(k_clusters);
  const MatC w_unif =
      (ctx.p_max / (k_clusters * n)) * MatC::Identity(n, n);
  for (int k = 0; k < k_clusters; ++k) {
    const double t_n = std::max(real_trace(w_unif, data.h_near[k]), 1e-12);
    const double t_f = std::max(real_trace(w_unif, data.h_far[k]), 1e-12);
    state.beta1(k) = 2.0 * t_n * std::exp2(rng.uniform(-1.0, 1.0));
    state.beta2(k) = 2.0 * t_f * std::exp2(rng.uniform(-1.0, 1.0));
    state.eta_tilde(k) =
        std::sqrt(0.5 * t_n) * std::exp2(rng.uniform(-1.0, 1.0));
  }

  FeasibleInit out;
  out.delta = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= ctx.alg.max_inner; ++t) {
    const auto t0 = Clock::now();
    const conic::ConicProgram prog =
        build_joint_subproblem(data, state, /*with_delta=*/true);
    const conic::SolveReport report = prog.solve(ctx.alg.solver);
    ++out.trace.solver_calls;
    if (!report.optimal())
      throw SolveFailure("feasibility subproblem solve failed: " + report.message);

    const JointExtraction point = extract_joint(report, k_clusters, data);
    out.delta = report.scalar_values.at("delta");
    state = state_from_point(data, point.w, point.a, &point.eta);

    TraceRow row;
    row.phase = "feasibility";
    row.outer = outer_index;
    row.inner = t;
    row.delta = out.delta;
    row.wall_ms = ms_since(t0);
    out.trace.total_wall_ms += row.wall_ms;
    out.trace.rows.push_back(std::move(row));

    if (out.delta < ctx.alg.feas_delta_tol) {
      out.state = state;
      return out;
    }
  }
  throw InfeasibleScenario("feasibility indicator stalled at " +
                           std::to_string(out.delta));
}

}  // namespace risnoma
