#include <cmath>

#include "risnoma/algorithms.hpp"
#include "risnoma/rng.hpp"

namespace risnoma {

void RunTrace::append(const RunTrace& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  total_wall_ms += other.total_wall_ms;
  solver_calls += other.solver_calls;
}

double RunTrace::worst_monotonicity_violation() const {
  double worst = 0.0;
  for (std::size_t i = 1; i < outer_objectives.size(); ++i)
    worst = std::max(worst, outer_objectives[i - 1] - outer_objectives[i]);
  return worst;
}

double qos_rate_threshold(double qos_bits) {
  if (qos_bits < 0.0)
    throw std::invalid_argument("qos_rate_threshold: negative rate floor");
  return std::exp2(qos_bits) - 1.0;
}

ProblemContext make_context(const ChannelSet& channels, const SensingSpec& sensing,
                            double noise_power, double p_max, double qos_rnu_bits,
                            double qos_rfu_bits, double spacing_ratio,
                            const AlgorithmConfig& alg, std::uint64_t seed) {
  ProblemContext ctx;
  ctx.channels = channels;
  ctx.sensing = sensing;
  ctx.effective = build_effective_matrices(channels, sensing, spacing_ratio);
  ctx.noise_power = noise_power;
  ctx.p_max = p_max;
  const int k = channels.k_clusters();
  ctx.r_min_near = VecR::Constant(k, qos_rate_threshold(qos_rnu_bits));
  ctx.r_min_far = VecR::Constant(k, qos_rate_threshold(qos_rfu_bits));
  ctx.spacing_ratio = spacing_ratio;
  ctx.alg = alg;
  ctx.seed = seed;
  return ctx;
}

void ScaState::validate() const {
  if ((beta1.array() <= 0.0).any() || (beta2.array() <= 0.0).any() ||
      (eta_tilde.array() <= 0.0).any())
    throw std::invalid_argument("ScaState: fixed points must be positive");
}

JointData make_joint_data(const ProblemContext& ctx, const MatC& passive_mat) {
  JointData data;
  const int k = ctx.k_clusters();
  data.h_near.reserve(k);
  data.h_far.reserve(k);
  const double inv_noise = 1.0 / ctx.noise_power;
  for (int i = 0; i < k; ++i) {
    MatC hn = ctx.effective.gamma_rnu[i].adjoint() * passive_mat *
              ctx.effective.gamma_rnu[i] * inv_noise;
    MatC hf = ctx.effective.gamma_rfu[i].adjoint() * passive_mat *
              ctx.effective.gamma_rfu[i] * inv_noise;
    data.h_near.push_back(0.5 * (hn + hn.adjoint()));
    data.h_far.push_back(0.5 * (hf + hf.adjoint()));
  }
  double scale = 0.0;
  for (const auto& upsilon : ctx.effective.upsilon) {
    MatC cq = upsilon.adjoint() * passive_mat * upsilon;
    data.c_q.push_back(0.5 * (cq + cq.adjoint()));
    scale = std::max(scale, data.c_q.back().norm());
  }
  data.p_max = ctx.p_max;
  data.r_min_near = ctx.r_min_near;
  data.r_min_far = ctx.r_min_far;
  data.margin = ctx.alg.strict_margin;
  data.beampattern_scale = std::max(scale * ctx.p_max, 1e-300);
  return data;
}

MatC random_phase_passive(int m_elements, std::uint64_t seed,
                          const std::string& label) {
  RngStream rng(seed, label);
  VecC v(m_elements);
  for (int i = 0; i < m_elements; ++i)
    v(i) = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
  return v.conjugate() * v.transpose();
}

double objective_of(const ProblemContext& ctx, const MatC& passive_mat,
                    const std::vector<MatC>& active_mats) {
  return min_beampattern_gain(passive_mat, ctx.effective, active_mats);
}

}  // namespace risnoma
