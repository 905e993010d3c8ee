#include "risnoma/channel.hpp"

#include <cmath>
#include <string>

#include "risnoma/rng.hpp"

namespace risnoma {

void ChannelParams::validate() const {
  if (!(pathloss_ref > 0.0))
    throw std::invalid_argument("channel: pathloss_ref must be positive");
  if (!(pathloss_exponent_br > 0.0) || !(pathloss_exponent_ru > 0.0))
    throw std::invalid_argument("channel: pathloss exponents must be positive");
  if (rician_br < 0.0 || rician_ru < 0.0)
    throw std::invalid_argument("channel: Rician factors must be nonnegative");
  if (!(element_spacing_ratio > 0.0))
    throw std::invalid_argument("channel: element spacing ratio must be positive");
}

VecC steering_vector(double theta_deg, int m, double spacing_ratio) {
  if (m < 1) throw std::invalid_argument("steering_vector: m must be >= 1");
  if (!std::isfinite(theta_deg))
    throw std::invalid_argument("steering_vector: non-finite angle");
  const double phase_step = 2.0 * kPi * spacing_ratio * std::sin(deg2rad(theta_deg));
  VecC a(m);
  for (int p = 0; p < m; ++p) a(p) = std::polar(1.0, phase_step * p);
  return a;
}

double pathloss(double distance_m, double exponent, double ref_gain) {
  if (!(distance_m > 0.0))
    throw std::invalid_argument("pathloss: distance must be positive");
  return ref_gain * std::pow(distance_m, -exponent);
}

namespace {

/// Rician mix of a LoS matrix and an i.i.d. CN(0,1) NLoS draw, scaled by the
/// amplitude path gain.
MatC rician_mix(const MatC& los, double rician, double gain, RngStream& rng) {
  const MatC nlos = rng.cnormal_matrix(static_cast<int>(los.rows()),
                                       static_cast<int>(los.cols()));
  const double w_los = std::sqrt(rician / (1.0 + rician));
  const double w_nlos = std::sqrt(1.0 / (1.0 + rician));
  return std::sqrt(gain) * (w_los * los + w_nlos * nlos);
}

}  // namespace

ChannelSet generate_channels(const SystemGeometry& geometry,
                             const ChannelParams& params, int n_antennas,
                             int m_elements, const UserPositions& positions,
                             std::uint64_t seed) {
  params.validate();
  geometry.validate();
  if (positions.rnu.size() != positions.rfu.size())
    throw std::invalid_argument("generate_channels: inconsistent positions");

  ChannelSet channels;

  // BS -> RIS link. The arrival angle at the RIS and the departure angle at
  // the BS both come from the 2-D layout; both arrays share the spacing ratio.
  const double d_br = geometry.bs_ris_distance();
  const double arrival_deg = geometry.angle_from_ris_deg(geometry.bs_position);
  const double dx = geometry.ris_position[0] - geometry.bs_position[0];
  const double dy = geometry.ris_position[1] - geometry.bs_position[1];
  const double departure_deg = rad2deg(std::atan2(dx, dy));
  const VecC a_ris = steering_vector(arrival_deg, m_elements, params.element_spacing_ratio);
  const VecC a_bs = steering_vector(departure_deg, n_antennas, params.element_spacing_ratio);
  const MatC g_los = a_ris * a_bs.adjoint();
  const double gain_br = pathloss(d_br, params.pathloss_exponent_br, params.pathloss_ref);
  {
    RngStream rng(seed, "channel/bs-ris");
    channels.g_bs_ris = rician_mix(g_los, params.rician_br, gain_br, rng);
  }

  const std::size_t k_clusters = positions.rnu.size();
  channels.g_ris_rnu.resize(k_clusters);
  channels.g_ris_rfu.resize(k_clusters);
  for (std::size_t k = 0; k < k_clusters; ++k) {
    for (UserRole role : {UserRole::Near, UserRole::Far}) {
      const UserPosition& pos =
          role == UserRole::Near ? positions.rnu[k] : positions.rfu[k];
      const VecC los =
          steering_vector(pos.angle_deg, m_elements, params.element_spacing_ratio);
      const double gain =
          pathloss(pos.radius_m, params.pathloss_exponent_ru, params.pathloss_ref);
      RngStream rng(seed, "channel/ris-user/" + std::to_string(k) +
                              (role == UserRole::Near ? "/n" : "/f"));
      MatC mixed = rician_mix(los, params.rician_ru, gain, rng);
      (role == UserRole::Near ? channels.g_ris_rnu[k] : channels.g_ris_rfu[k]) =
          mixed.col(0);
    }
  }
  return channels;
}

VecC los_probe_channel(double angle_deg, double radius_m, int m_elements,
                       const ChannelParams& params) {
  const double gain =
      pathloss(radius_m, params.pathloss_exponent_ru, params.pathloss_ref);
  return std::sqrt(gain) *
         steering_vector(angle_deg, m_elements, params.element_spacing_ratio);
}

}  // namespace risnoma
