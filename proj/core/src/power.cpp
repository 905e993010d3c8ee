#include <cmath>

#include "risnoma/algorithms.hpp"

namespace risnoma {

namespace {

double real_trace(const MatC& a, const MatC& b) {
  return (a * b).trace().real();
}

std::string idx_name(const char* base, int k) { return base + std::to_string(k); }

}  // namespace

std::vector<PowerBounds> power_feasibility_bounds(
    const ProblemContext& ctx, const std::vector<MatC>& active_mats,
    const MatC& passive_mat) {
  const JointData data = make_joint_data(ctx, passive_mat);
  const int k_clusters = ctx.k_clusters();
  std::vector<PowerBounds> out(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    const double t_n = real_trace(active_mats[k], data.h_near[k]);
    const double t_f = real_trace(active_mats[k], data.h_far[k]);
    if (t_n <= 1e-300 || t_f <= 1e-300)
      throw DegenerateChannel("power bounds: Tr(W_k H_{k,i}) vanished");
    double inter_n = 0.0, inter_f = 0.0;
    for (int j = 0; j < k_clusters; ++j) {
      if (j == k) continue;
      inter_n += real_trace(active_mats[j], data.h_near[k]);
      inter_f += real_trace(active_mats[j], data.h_far[k]);
    }
    const double r_n = ctx.r_min_near(k);
    const double r_f = ctx.r_min_far(k);
    PowerBounds b;
    b.a_max = 1.0 - r_n * (inter_n + 1.0) / t_n;
    if (r_f > 0.0) {
      b.a_min1 = (t_n + inter_n + 1.0) / ((1.0 + 1.0 / r_f) * t_n);
      b.a_min2 = (t_f + inter_f + 1.0) / ((1.0 + 1.0 / r_f) * t_f);
    }
    out[k] = b;
  }
  return out;
}

std::vector<PowerPair> closed_form_power(const std::vector<PowerBounds>& bounds) {
  std::vector<PowerPair> out;
  out.reserve(bounds.size());
  for (const auto& b : bounds) {
    if (!b.feasible())
      throw InfeasibleScenario("closed-form power allocation: no feasible split");
    const double a_f = std::max(b.a_min1, b.a_min2);
    out.push_back({1.0 - a_f, a_f});
  }
  return out;
}

conic::ConicProgram build_active_subproblem(const JointData& data,
                                            const std::vector<PowerPair>& coeffs) {
  using namespace conic;
  const int k_clusters = static_cast<int>(data.h_near.size());
  const int n = static_cast<int>(data.h_near.empty() ? 0 : data.h_near[0].rows());
  ConicProgram p;

  std::vector<MatVarId> w(k_clusters);
  for (int k = 0; k < k_clusters; ++k)
    w[k] = p.add_hermitian_var(idx_name("W", k), n);
  const ScalarVarId chi = p.add_scalar_var("chi", data.margin);

  for (std::size_t q = 0; q < data.c_q.size(); ++q) {
    AffineExpr e;
    for (int k = 0; k < k_clusters; ++k)
      e.add_trace(w[k], data.c_q[q] / data.beampattern_scale);
    e.add_scalar(chi, -1.0);
    p.add_constraint(e, Cmp::GE, 0.0, "beampattern/" + std::to_string(q));
  }
  {
    AffineExpr e;
    for (int k = 0; k < k_clusters; ++k)
      e.add_trace(w[k], MatC::Identity(n, n));
    p.add_constraint(e, Cmp::LE, data.p_max, "power");
  }

  for (int k = 0; k < k_clusters; ++k) {
    const double r_n = data.r_min_near(k);
    const double r_f = data.r_min_far(k);
    const double a_n = coeffs[k].near;
    const double a_f = coeffs[k].far;

    if (r_n > 0.0) {
      AffineExpr e = trace_of(w[k], a_n * data.h_near[k]);
      for (int j = 0; j < k_clusters; ++j)
        if (j != k) e.add_trace(w[j], -r_n * data.h_near[k]);
      p.add_constraint(e, Cmp::GE, r_n, "qos-near/" + std::to_string(k));
    }
    if (r_f > 0.0) {
      AffineExpr e1 = trace_of(w[k], (a_f - r_f * a_n) * data.h_near[k]);
      AffineExpr e2 = trace_of(w[k], (a_f - r_f * a_n) * data.h_far[k]);
      for (int j = 0; j < k_clusters; ++j) {
        if (j == k) continue;
        e1.add_trace(w[j], -r_f * data.h_near[k]);
        e2.add_trace(w[j], -r_f * data.h_far[k]);
      }
      p.add_constraint(e1, Cmp::GE, r_f, "qos-far-sic/" + std::to_string(k));
      p.add_constraint(e2, Cmp::GE, r_f, "qos-far-own/" + std::to_string(k));
    }
  }

  p.set_objective_max(scalar_of(chi, data.beampattern_scale));
  return p;
}

}  // namespace risnoma
