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

std::vector<double> all_eig_ratios(const std::vector<MatC>& w, const MatC& v) {
  std::vector<double> out;
  for (const auto& wk : w) out.push_back(conic::extract_rank_one(wk).ratio);
  out.push_back(conic::extract_rank_one(v).ratio);
  return out;
}

Solution assemble_solution(const std::vector<MatC>& active_mats,
                           const std::vector<PowerPair>& coeffs, const MatC& v) {
  Solution s;
  s.active_mats = active_mats;
  std::vector<VecC> vecs;
  for (const auto& w : active_mats)
    vecs.push_back(conic::extract_rank_one(w).vector);
  s.active_vecs = std::move(vecs);
  s.power_coeffs = coeffs;
  s.passive_mat = v;
  // V = conj(v) v^T, so the principal factor u of V = u u^H gives v = conj(u)
  s.passive_vec = conic::extract_rank_one(v).vector.conjugate();
  return s;
}

ScaState continuation_state(const JointData& data, const std::vector<MatC>& w,
                            const std::vector<PowerPair>& a) {
  const int k_clusters = static_cast<int>(w.size());
  ScaState st;
  st.beta1 = VecR::Ones(k_clusters);
  st.beta2 = VecR::Ones(k_clusters);
  st.eta_tilde = VecR::Ones(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    const double t_n =
        std::max((w[k] * data.h_near[k]).trace().real(), 1e-18);
    const double t_f =
        std::max((w[k] * data.h_far[k]).trace().real(), 1e-18);
    st.beta1(k) = t_n / a[k].near;
    st.beta2(k) = t_f / a[k].near;
    st.eta_tilde(k) = std::sqrt(a[k].near * t_n);
  }
  return st;
}

}  // namespace

AlgorithmResult run_ibcd(const ProblemContext& ctx) {
  AlgorithmResult result;
  MatC v = random_phase_passive(ctx.m_elements(), ctx.seed, "v0");
  std::vector<MatC> w;
  std::vector<PowerPair> a;
  ScaState state;
  double prev_obj = std::numeric_limits<double>::quiet_NaN();

  for (int outer = 1; outer <= ctx.alg.max_outer; ++outer) {
    const auto t0 = Clock::now();
    if (outer == 1) {
      FeasibleInit init = find_feasible_init(ctx, v, outer);
      result.trace.append(init.trace);
      state = init.state;
    }

    JointResult joint;
    try {
      joint = solve_joint_sca(ctx, v, state, outer);
    } catch (const NeedsInitialization&) {
      FeasibleInit init = find_feasible_init(ctx, v, outer);
      result.trace.append(init.trace);
      joint = solve_joint_sca(ctx, v, init.state, outer);
    }
    result.trace.append(joint.trace);
    w = joint.active_mats;
    a = joint.power_coeffs;

    const auto qos_rows = noma_passive_qos_rows(ctx, w, a);
    const SrcrResult srcr = solve_passive_srcr(ctx, w, qos_rows, v, outer);
    result.trace.append(srcr.trace);
    v = srcr.passive_mat;

    const double obj = objective_of(ctx, v, w);
    TraceRow row;
    row.phase = "outer";
    row.outer = outer;
    row.objective = obj;
    row.eig_ratios = all_eig_ratios(w, v);
    row.wall_ms = ms_since(t0);
    result.trace.rows.push_back(row);
    result.trace.outer_objectives.push_back(obj);

    state = continuation_state(make_joint_data(ctx, v), w, a);

    if (std::isfinite(prev_obj) &&
        std::abs(obj - prev_obj) <=
            ctx.alg.tol_outer * std::max(std::abs(obj), 1e-300))
      break;
    prev_obj = obj;
  }

  result.solution = assemble_solution(w, a, v);
  result.objective = result.trace.outer_objectives.back();
  return result;
}

AlgorithmResult run_iao(const ProblemContext& ctx) {
  AlgorithmResult result;
  const int k_clusters = ctx.k_clusters();
  MatC v = random_phase_passive(ctx.m_elements(), ctx.seed, "v0");
  std::vector<PowerPair> a(k_clusters, PowerPair{0.2, 0.8});
  std::vector<MatC> w;
  double prev_obj = std::numeric_limits<double>::quiet_NaN();

  for (int outer = 1; outer <= ctx.alg.max_outer; ++outer) {
    const auto t0 = Clock::now();

    // active beamforming at fixed {a_k}, V
    const JointData data = make_joint_data(ctx, v);
    const conic::ConicProgram prog = build_active_subproblem(data, a);
    const conic::SolveReport report = prog.solve(ctx.alg.solver);
    ++result.trace.solver_calls;
    if (!report.optimal()) {
      if (report.status == conic::SolveStatus::Infeasible)
        throw InfeasibleScenario("active subproblem infeasible at iteration " +
                                 std::to_string(outer));
      throw SolveFailure("active subproblem solve failed: " + report.message);
    }
    w.clear();
    for (int k = 0; k < k_clusters; ++k)
      w.push_back(report.mat_values.at("W" + std::to_string(k)));

    // passive beamforming at fixed {W_k, a_k}
    const auto qos_rows = noma_passive_qos_rows(ctx, w, a);
    const SrcrResult srcr = solve_passive_srcr(ctx, w, qos_rows, v, outer);
    result.trace.append(srcr.trace);
    v = srcr.passive_mat;

    // closed-form power update at fixed {W_k}, V
    a = closed_form_power(power_feasibility_bounds(ctx, w, v));

    const double obj = objective_of(ctx, v, w);
    TraceRow row;
    row.phase = "outer";
    row.outer = outer;
    row.objective = obj;
    row.eig_ratios = all_eig_ratios(w, v);
    row.wall_ms = ms_since(t0);
    result.trace.rows.push_back(row);
    result.trace.outer_objectives.push_back(obj);

    if (std::isfinite(prev_obj) &&
        std::abs(obj - prev_obj) <=
            ctx.alg.tol_outer * std::max(std::abs(obj), 1e-300))
      break;
    prev_obj = obj;
  }

  result.solution = assemble_solution(w, a, v);
  result.objective = result.trace.outer_objectives.back();
  return result;
}

}  // namespace risnoma
