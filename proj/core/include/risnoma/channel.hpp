#pragma once

#include <cstdint>
#include <vector>

#include "risnoma/geometry.hpp"
#include "risnoma/types.hpp"

namespace risnoma {

/// Which user of a NOMA cluster a quantity refers to.
enum class UserRole { Near, Far };

struct ChannelParams {
  double pathloss_ref = 1e-3;        // linear power gain at 1 m
  double pathloss_exponent_br = 2.2;  // BS -> RIS
  double pathloss_exponent_ru = 2.2;  // RIS -> user
  double rician_br = 3.0;             // linear Rician factor, BS -> RIS
  double rician_ru = 3.0;             // linear Rician factor, RIS -> user
  double element_spacing_ratio = 0.5; // d / lambda, BS and RIS arrays

  void validate() const;
};

/// One realization of every link in the system.
struct ChannelSet {
  MatC g_bs_ris;                  // M x N
  std::vector<VecC> g_ris_rnu;    // per cluster, length M
  std::vector<VecC> g_ris_rfu;    // per cluster, length M

  int n_antennas() const { return static_cast<int>(g_bs_ris.cols()); }
  int m_elements() const { return static_cast<int>(g_bs_ris.rows()); }
  int k_clusters() const { return static_cast<int>(g_ris_rnu.size()); }

  const VecC& user_channel(int cluster, UserRole role) const {
    return role == UserRole::Near ? g_ris_rnu[cluster] : g_ris_rfu[cluster];
  }
};

/// ULA array response: element p carries phase 2*pi*spacing_ratio*p*sin(theta).
VecC steering_vector(double theta_deg, int m, double spacing_ratio);

/// Distance power law: ref_gain * d^(-exponent).
double pathloss(double distance_m, double exponent, double ref_gain);

/// Rician channel draw for every link, deterministic in (inputs, seed).
ChannelSet generate_channels(const SystemGeometry& geometry,
                             const ChannelParams& params, int n_antennas,
                             int m_elements, const UserPositions& positions,
                             std::uint64_t seed);

/// Line-of-sight probe channel from the RIS to a point at (angle, radius),
/// used for illumination maps: steering vector scaled by the amplitude path
/// gain.
VecC los_probe_channel(double angle_deg, double radius_m, int m_elements,
                       const ChannelParams& params);

}  // namespace risnoma
