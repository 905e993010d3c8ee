#include "risnoma/metrics.hpp"

#include <cmath>

namespace risnoma {

MatC effective_channel(const VecC& g, const MatC& g_bs_ris) {
  return g.conjugate().asDiagonal() * g_bs_ris;
}

EffectiveMatrices build_effective_matrices(
    const ChannelSet& channels, const SensingSpec& spec,
    double element_spacing_ratio, const std::optional<MatC>& passive_mat) {
  EffectiveMatrices eff;
  const int k_clusters = channels.k_clusters();
  const int m = channels.m_elements();
  eff.gamma_rnu.reserve(k_clusters);
  eff.gamma_rfu.reserve(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    eff.gamma_rnu.push_back(effective_channel(channels.g_ris_rnu[k], channels.g_bs_ris));
    eff.gamma_rfu.push_back(effective_channel(channels.g_ris_rfu[k], channels.g_bs_ris));
  }
  eff.upsilon.reserve(spec.interest_set.size());
  for (int idx : spec.interest_set) {
    const VecC a = steering_vector(spec.angle_grid_deg[idx], m, element_spacing_ratio);
    eff.upsilon.push_back(effective_channel(a, channels.g_bs_ris));
  }
  if (passive_mat) {
    for (int k = 0; k < k_clusters; ++k) {
      MatC hn = eff.gamma_rnu[k].adjoint() * (*passive_mat) * eff.gamma_rnu[k];
      MatC hf = eff.gamma_rfu[k].adjoint() * (*passive_mat) * eff.gamma_rfu[k];
      // re-symmetrize round-off
      eff.h_rnu.push_back(0.5 * (hn + hn.adjoint()));
      eff.h_rfu.push_back(0.5 * (hf + hf.adjoint()));
    }
  }
  return eff;
}

double trace_quadratic(const MatC& passive_mat, const MatC& gamma, const MatC& w) {
  const Complex t = (passive_mat * gamma * w * gamma.adjoint()).trace();
  return t.real();
}

double beampattern_gain_direct(const VecC& passive_vec, const MatC& g_bs_ris,
                               const std::vector<VecC>& active_vecs,
                               double theta_deg, double spacing_ratio) {
  const int m = static_cast<int>(g_bs_ris.rows());
  const VecC a = steering_vector(theta_deg, m, spacing_ratio);
  // a^H diag(v) G w per beam, then sum of squared magnitudes
  const Eigen::RowVectorXcd row =
      a.adjoint() * passive_vec.asDiagonal() * g_bs_ris;
  double gain = 0.0;
  for (const auto& w : active_vecs) {
    const Complex amp = row * w;
    gain += std::norm(amp);
  }
  return gain;
}

double beampattern_gain_trace(const MatC& passive_mat, const MatC& upsilon_q,
                              const std::vector<MatC>& active_mats) {
  if (!is_hermitian(passive_mat))
    throw std::invalid_argument("beampattern_gain_trace: V not Hermitian");
  MatC w_sum = MatC::Zero(upsilon_q.cols(), upsilon_q.cols());
  for (const auto& w : active_mats) {
    if (!is_hermitian(w))
      throw std::invalid_argument("beampattern_gain_trace: W not Hermitian");
    w_sum += w;
  }
  return trace_quadratic(passive_mat, upsilon_q, w_sum);
}

double min_beampattern_gain(const MatC& passive_mat,
                            const EffectiveMatrices& effective,
                            const std::vector<MatC>& active_mats) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& upsilon : effective.upsilon)
    best = std::min(best, beampattern_gain_trace(passive_mat, upsilon, active_mats));
  return best;
}

double illumination_power(const MatC& passive_mat,
                          const std::vector<MatC>& active_mats,
                          const MatC& g_bs_ris, const VecC& probe_channel) {
  const MatC upsilon = effective_channel(probe_channel, g_bs_ris);
  MatC w_sum = MatC::Zero(g_bs_ris.cols(), g_bs_ris.cols());
  for (const auto& w : active_mats) w_sum += w;
  return trace_quadratic(passive_mat, upsilon, w_sum);
}

double SinrTerm::rate_bits() const {
  if (infinite) return std::numeric_limits<double>::infinity();
  return std::log2(1.0 + signal / denominator);
}

namespace {

SinrTerm make_term(double signal, double denom) {
  SinrTerm t;
  t.signal = signal;
  t.denominator = denom;
  t.infinite = (denom <= 0.0 && signal > 0.0);
  if (denom <= 0.0 && signal <= 0.0) {
    // zero-over-zero: rate 0
    t.signal = 0.0;
    t.denominator = 1.0;
  }
  return t;
}

/// Shared rate assembly: s[k][j] = |combined channel of user (k,i) applied to
/// beam j|^2, computed either from vectors or traces.
std::vector<ClusterRates> rates_from_powers(
    const std::vector<std::vector<double>>& s_near,
    const std::vector<std::vector<double>>& s_far,
    const std::vector<PowerPair>& coeffs, double noise_power) {
  const int k_clusters = static_cast<int>(coeffs.size());
  std::vector<ClusterRates> out(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    double inter_n = 0.0;
    double inter_f = 0.0;
    for (int j = 0; j < k_clusters; ++j) {
      if (j == k) continue;
      inter_n += s_near[k][j];
      inter_f += s_far[k][j];
    }
    const double a_n = coeffs[k].near;
    const double a_f = coeffs[k].far;
    const double sig_n = s_near[k][k];
    const double sig_f = s_far[k][k];
    out[k].far_at_near =
        make_term(a_f * sig_n, a_n * sig_n + inter_n + noise_power);
    out[k].near_own = make_term(a_n * sig_n, inter_n + noise_power);
    out[k].far_own =
        make_term(a_f * sig_f, a_n * sig_f + inter_f + noise_power);
  }
  return out;
}

}  // namespace

std::vector<ClusterRates> achievable_rates_trace(
    const ChannelSet& channels, const std::vector<MatC>& active_mats,
    const std::vector<PowerPair>& power_coeffs, const MatC& passive_mat,
    double noise_power) {
  const int k_clusters = channels.k_clusters();
  std::vector<std::vector<double>> s_near(k_clusters), s_far(k_clusters);
  for (int k = 0; k < k_clusters; ++k) {
    const MatC gamma_n = effective_channel(channels.g_ris_rnu[k], channels.g_bs_ris);
    const MatC gamma_f = effective_channel(channels.g_ris_rfu[k], channels.g_bs_ris);
    s_near[k].resize(k_clusters);
    s_far[k].resize(k_clusters);
    for (int j = 0; j < k_clusters; ++j) {
      s_near[k][j] = trace_quadratic(passive_mat, gamma_n, active_mats[j]);
      s_far[k][j] = trace_quadratic(passive_mat, gamma_f, active_mats[j]);
    }
  }
  return rates_from_powers(s_near, s_far, power_coeffs, noise_power);
}

std::vector<ClusterRates> achievable_rates(const ChannelSet& channels,
                                           const Solution& solution,
                                           double noise_power) {
  const int k_clusters = channels.k_clusters();
  const bool have_vecs = solution.active_vecs && solution.passive_vec;
  std::vector<ClusterRates> direct;
  if (have_vecs) {
    std::vector<std::vector<double>> s_near(k_clusters), s_far(k_clusters);
    for (int k = 0; k < k_clusters; ++k) {
      const Eigen::RowVectorXcd row_n = channels.g_ris_rnu[k].adjoint() *
                                        solution.passive_vec->asDiagonal() *
                                        channels.g_bs_ris;
      const Eigen::RowVectorXcd row_f = channels.g_ris_rfu[k].adjoint() *
                                        solution.passive_vec->asDiagonal() *
                                        channels.g_bs_ris;
      s_near[k].resize(k_clusters);
      s_far[k].resize(k_clusters);
      for (int j = 0; j < k_clusters; ++j) {
        s_near[k][j] = std::norm(Complex(row_n * (*solution.active_vecs)[j]));
        s_far[k][j] = std::norm(Complex(row_f * (*solution.active_vecs)[j]));
      }
    }
    direct = rates_from_powers(s_near, s_far, solution.power_coeffs, noise_power);
  }
  if (!solution.active_mats.empty()) {
    auto traced = achievable_rates_trace(channels, solution.active_mats,
                                         solution.power_coeffs,
                                         solution.passive_mat, noise_power);
    if (!have_vecs) return traced;
    // both forms available: the quadratic forms must agree
    for (int k = 0; k < k_clusters; ++k) {
      const double pairs[][2] = {
          {direct[k].near_own.signal, traced[k].near_own.signal},
          {direct[k].near_own.denominator, traced[k].near_own.denominator},
          {direct[k].far_own.signal, traced[k].far_own.signal},
          {direct[k].far_own.denominator, traced[k].far_own.denominator},
      };
      for (const auto& p : pairs) {
        const double scale = std::max({1e-300, std::abs(p[0]), std::abs(p[1])});
        if (std::abs(p[0] - p[1]) > 1e-8 * scale)
          throw std::logic_error(
              "achievable_rates: direct and trace SINR forms disagree");
      }
    }
  }
  return direct;
}

}  // namespace risnoma
