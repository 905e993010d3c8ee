#pragma once

#include <optional>
#include <vector>

#include "risnoma/channel.hpp"
#include "risnoma/sensing.hpp"
#include "risnoma/solution.hpp"

namespace risnoma {

/// Channel matrices folded with the RIS geometry:
///   gamma_{k,i} = diag(g_{k,i}^H) G          (M x N)
///   upsilon_q   = diag(a^H(theta_q)) G       (M x N)
///   h_{k,i}     = gamma^H V gamma            (N x N, when V is supplied)
struct EffectiveMatrices {
  std::vector<MatC> gamma_rnu;   // per cluster
  std::vector<MatC> gamma_rfu;
  std::vector<MatC> upsilon;     // per interest angle q
  std::vector<MatC> h_rnu;       // empty unless V supplied
  std::vector<MatC> h_rfu;

  const MatC& gamma(int cluster, UserRole role) const {
    return role == UserRole::Near ? gamma_rnu[cluster] : gamma_rfu[cluster];
  }
  const MatC& h(int cluster, UserRole role) const {
    return role == UserRole::Near ? h_rnu[cluster] : h_rfu[cluster];
  }
};

EffectiveMatrices build_effective_matrices(
    const ChannelSet& channels, const SensingSpec& spec,
    double element_spacing_ratio,
    const std::optional<MatC>& passive_mat = std::nullopt);

/// diag(g^H) G for an arbitrary probe/user channel.
MatC effective_channel(const VecC& g, const MatC& g_bs_ris);

/// Real part of Tr(V * Gamma * W * Gamma^H); the quadratic form behind every
/// SINR and beampattern expression. Asserts the imaginary residue is noise.
double trace_quadratic(const MatC& passive_mat, const MatC& gamma, const MatC& w);

/// Beampattern gain a^H(theta) diag(v) G (sum_k w w^H) G^H diag(v)^H a(theta).
double beampattern_gain_direct(const VecC& passive_vec, const MatC& g_bs_ris,
                               const std::vector<VecC>& active_vecs,
                               double theta_deg, double spacing_ratio);

/// Trace form Tr[V * Upsilon_q * (sum_k W_k) * Upsilon_q^H].
double beampattern_gain_trace(const MatC& passive_mat, const MatC& upsilon_q,
                              const std::vector<MatC>& active_mats);

/// Smallest beampattern gain over the interest set; the design objective.
double min_beampattern_gain(const MatC& passive_mat,
                            const EffectiveMatrices& effective,
                            const std::vector<MatC>& active_mats);

/// Same trace metric evaluated at an arbitrary probe location.
double illumination_power(const MatC& passive_mat,
                          const std::vector<MatC>& active_mats,
                          const MatC& g_bs_ris, const VecC& probe_channel);

/// SINR pieces of one rate expression: rate = log2(1 + signal/denominator).
struct SinrTerm {
  double signal = 0.0;
  double denominator = 0.0;
  bool infinite = false;  // positive signal over a zero denominator

  double rate_bits() const;
};

/// The four rate quantities of one cluster.
struct ClusterRates {
  SinrTerm far_at_near;  // RNU decoding the RFU signal
  SinrTerm near_own;     // RNU decoding its own signal after SIC
  SinrTerm far_own;      // RFU decoding its own signal
  double rate_far_at_near() const { return far_at_near.rate_bits(); }
  double rate_near() const { return near_own.rate_bits(); }
  double rate_far_at_far() const { return far_own.rate_bits(); }
  double rate_far() const {
    return std::min(rate_far_at_near(), rate_far_at_far());
  }
};

/// Rates for every cluster. Uses the vector forms when present; when both the
/// vector and matrix forms exist, cross-checks them (1e-8 relative).
std::vector<ClusterRates> achievable_rates(const ChannelSet& channels,
                                           const Solution& solution,
                                           double noise_power);

/// Rates from the lifted matrices alone (trace form).
std::vector<ClusterRates> achievable_rates_trace(
    const ChannelSet& channels, const std::vector<MatC>& active_mats,
    const std::vector<PowerPair>& power_coeffs, const MatC& passive_mat,
    double noise_power);

}  // namespace risnoma
