#include <catch2/catch_amalgamated.hpp>

#include "risnoma/channel.hpp"
#include "risnoma/geometry.hpp"

using namespace risnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SystemGeometry table_geometry(int k_clusters = 3) {
  SystemGeometry g;
  g.cluster_angle_ranges_deg = {{-30.0, -20.0}, {20.0, 30.0}, {60.0, 70.0}};
  g.cluster_angle_ranges_deg.resize(k_clusters);
  g.target_angles_deg = {-45.0, 0.0, 45.0};
  g.target_radii_m = {90.0, 90.0, 80.0};
  return g;
}

}  // namespace

TEST_CASE("steering vector closed forms") {
  const VecC a0 = steering_vector(0.0, 4, 0.5);
  for (int p = 0; p < 4; ++p) {
    CHECK_THAT(a0(p).real(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(a0(p).imag(), WithinAbs(0.0, 1e-12));
  }

  const VecC a90 = steering_vector(90.0, 2, 0.5);
  CHECK_THAT(a90(0).real(), WithinAbs(1.0, 1e-12));
  CHECK_THAT(a90(1).real(), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(a90(1).imag(), WithinAbs(0.0, 1e-12));

  // independent complex-exponential evaluation at 45 degrees
  const VecC a45 = steering_vector(45.0, 3, 0.5);
  const double phase = kPi * std::sqrt(2.0) / 2.0;
  for (int p = 0; p < 3; ++p) {
    const Complex expected(std::cos(phase * p), std::sin(phase * p));
    CHECK_THAT(std::abs(a45(p) - expected), WithinAbs(0.0, 1e-12));
    CHECK_THAT(std::abs(a45(p)), WithinAbs(1.0, 1e-12));
  }
  // constant phase increment
  const double inc01 = std::arg(a45(1) / a45(0));
  const double inc12 = std::arg(a45(2) / a45(1));
  CHECK_THAT(inc01, WithinAbs(inc12, 1e-12));

  CHECK_THROWS_AS(steering_vector(std::nan(""), 4, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(steering_vector(0.0, 0, 0.5), std::invalid_argument);
}

TEST_CASE("steering vectors are unit modulus everywhere") {
  for (double theta : {-89.0, -31.4, 0.123, 17.0, 88.8}) {
    const VecC a = steering_vector(theta, 16, 0.5);
    for (int p = 0; p < 16; ++p) CHECK_THAT(std::abs(a(p)), WithinAbs(1.0, 1e-12));
  }
}

TEST_CASE("user positions respect the ring geometry") {
  const SystemGeometry g = table_geometry();
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    const UserPositions pos = sample_user_positions(g, seed);
    REQUIRE(pos.rnu.size() == 3);
    for (int k = 0; k < 3; ++k) {
      CHECK(pos.rnu[k].radius_m >= 20.0);
      CHECK(pos.rnu[k].radius_m <= 25.0);
      CHECK(pos.rfu[k].radius_m >= 80.0);
      CHECK(pos.rfu[k].radius_m <= 85.0);
      CHECK(g.cluster_angle_ranges_deg[k].contains(pos.rnu[k].angle_deg));
      CHECK(pos.rnu[k].angle_deg == pos.rfu[k].angle_deg);
    }
  }
}

TEST_CASE("degenerate radius interval pins the radius") {
  SystemGeometry g = table_geometry();
  g.rnu_radius_range_m = {20.0, 20.0};
  const UserPositions pos = sample_user_positions(g, 5);
  for (const auto& u : pos.rnu) CHECK_THAT(u.radius_m, WithinAbs(20.0, 1e-12));
}

TEST_CASE("positions are deterministic in the seed") {
  const SystemGeometry g = table_geometry();
  const UserPositions a = sample_user_positions(g, 1234);
  const UserPositions b = sample_user_positions(g, 1234);
  for (int k = 0; k < 3; ++k) {
    CHECK(a.rnu[k].angle_deg == b.rnu[k].angle_deg);
    CHECK(a.rnu[k].radius_m == b.rnu[k].radius_m);
    CHECK(a.rfu[k].radius_m == b.rfu[k].radius_m);
  }
}

TEST_CASE("invalid geometry is rejected") {
  SystemGeometry g = table_geometry();
  g.rnu_radius_range_m = {25.0, 20.0};
  CHECK_THROWS_AS(sample_user_positions(g, 1), std::invalid_argument);
  SystemGeometry g2 = table_geometry();
  g2.cluster_angle_ranges_deg[1] = {-25.0, -15.0};  // overlaps cluster 0
  CHECK_THROWS_AS(sample_user_positions(g2, 1), std::invalid_argument);
}

TEST_CASE("pathloss power law") {
  CHECK_THAT(pathloss(1.0, 2.2, 1e-3), WithinRel(1e-3, 1e-12));
  CHECK_THAT(pathloss(123.0, 0.0, 0.42), WithinRel(0.42, 1e-12));
  // independent log-domain evaluation: -30 dB - 2.2 * 10 dB = -52 dB
  const double expected = std::pow(10.0, -52.0 / 10.0);
  CHECK_THAT(pathloss(10.0, 2.2, 1e-3), WithinRel(expected, 1e-12));
  CHECK_THROWS_AS(pathloss(0.0, 2.2, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(pathloss(-1.0, 2.2, 1e-3), std::invalid_argument);
}

namespace {

ChannelParams table_params() {
  ChannelParams p;
  p.pathloss_ref = 1e-3;
  p.pathloss_exponent_br = 2.2;
  p.pathloss_exponent_ru = 2.2;
  p.rician_br = 3.0;
  p.rician_ru = 3.0;
  return p;
}

}  // namespace

TEST_CASE("pure LoS limit has vanishing variance") {
  SystemGeometry g = table_geometry();
  g.rnu_radius_range_m = {20.0, 20.0};
  ChannelParams p = table_params();
  p.rician_br = 1e9;
  p.rician_ru = 1e9;
  const UserPositions pos = sample_user_positions(g, 3);

  Complex mean = 0.0;
  double mean_power = 0.0;
  std::vector<Complex> draws;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    const ChannelSet ch = generate_channels(g, p, 4, 8, pos, seed);
    draws.push_back(ch.g_bs_ris(0, 0));
    mean += draws.back();
    mean_power += std::norm(draws.back());
  }
  mean /= static_cast<double>(draws.size());
  mean_power /= static_cast<double>(draws.size());
  double var = 0.0;
  for (const auto& d : draws) var += std::norm(d - mean);
  var /= static_cast<double>(draws.size());
  CHECK(var < 1e-6 * mean_power);
}

TEST_CASE("Rayleigh limit reproduces the distance power law") {
  SystemGeometry g = table_geometry();
  g.rnu_radius_range_m = {20.0, 20.0};
  ChannelParams p = table_params();
  p.rician_ru = 0.0;
  const UserPositions pos = sample_user_positions(g, 3);
  const int m = 8;

  double mean_power = 0.0;
  int count = 0;
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    const ChannelSet ch = generate_channels(g, p, 2, m, pos, seed);
    for (int i = 0; i < m; ++i) {
      mean_power += std::norm(ch.g_ris_rnu[0](i));
      ++count;
    }
  }
  mean_power /= count;
  const double expected = 1e-3 * std::pow(20.0, -2.2);
  CHECK(std::abs(mean_power - expected) < 0.10 * expected);
}

TEST_CASE("Rician factor 3 puts three quarters of the power in the mean") {
  SystemGeometry g = table_geometry();
  g.rnu_radius_range_m = {22.0, 22.0};
  const ChannelParams p = table_params();
  const UserPositions pos = sample_user_positions(g, 3);
  const int m = 8;

  std::vector<Complex> mean(m, 0.0);
  double total_power = 0.0;
  const int n_draws = 1500;
  for (std::uint64_t seed = 0; seed < n_draws; ++seed) {
    const ChannelSet ch = generate_channels(g, p, 2, m, pos, seed);
    for (int i = 0; i < m; ++i) {
      mean[i] += ch.g_ris_rnu[0](i);
      total_power += std::norm(ch.g_ris_rnu[0](i));
    }
  }
  double los_power = 0.0;
  for (int i = 0; i < m; ++i) los_power += std::norm(mean[i] / double(n_draws));
  const double fraction = los_power * n_draws * m / total_power / m;
  CHECK(std::abs(fraction - 0.75) < 0.05 * 0.75);
}

TEST_CASE("doubling distance scales mean power by 2^-exponent") {
  SystemGeometry g = table_geometry();
  const ChannelParams p = table_params();
  UserPositions pos = sample_user_positions(g, 3);
  pos.rnu[0].radius_m = 20.0;
  pos.rfu[0].radius_m = 40.0;  // exactly double, same angle
  pos.rfu[0].angle_deg = pos.rnu[0].angle_deg;
  const int m = 8;

  double p_near = 0.0, p_far = 0.0;
  for (std::uint64_t seed = 0; seed < 1500; ++seed) {
    const ChannelSet ch = generate_channels(g, p, 2, m, pos, seed);
    p_near += ch.g_ris_rnu[0].squaredNorm();
    p_far += ch.g_ris_rfu[0].squaredNorm();
  }
  const double ratio = p_far / p_near;
  const double expected = std::pow(2.0, -2.2);
  CHECK(std::abs(ratio - expected) < 0.10 * expected);
}

TEST_CASE("channel generation is bit-identical given seed") {
  const SystemGeometry g = table_geometry();
  const ChannelParams p = table_params();
  const UserPositions pos = sample_user_positions(g, 11);
  const ChannelSet a = generate_channels(g, p, 4, 8, pos, 77);
  const ChannelSet b = generate_channels(g, p, 4, 8, pos, 77);
  CHECK(a.g_bs_ris == b.g_bs_ris);
  for (int k = 0; k < 3; ++k) {
    CHECK(a.g_ris_rnu[k] == b.g_ris_rnu[k]);
    CHECK(a.g_ris_rfu[k] == b.g_ris_rfu[k]);
  }
}
