#include <catch2/catch_amalgamated.hpp>

#include "risnoma/metrics.hpp"
#include "risnoma/rng.hpp"

using namespace risnoma;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

VecC random_unit_phases(RngStream& rng, int m) {
  VecC v(m);
  for (int i = 0; i < m; ++i) v(i) = std::polar(1.0, rng.uniform(0.0, 2.0 * kPi));
  return v;
}

/// V = conj(v) v^T, the lifted passive matrix.
MatC lift_passive(const VecC& v) { return v.conjugate() * v.transpose(); }

struct SmallInstance {
  VecC v;
  MatC big_g;
  std::vector<VecC> w;
  std::vector<VecC> g_user;
};

SmallInstance random_instance(RngStream& rng, int m, int n, int k) {
  SmallInstance s;
  s.v = random_unit_phases(rng, m);
  s.big_g = rng.cnormal_matrix(m, n);
  for (int i = 0; i < k; ++i) {
    s.w.push_back(rng.cnormal_matrix(n, 1).col(0));
    s.g_user.push_back(rng.cnormal_matrix(m, 1).col(0));
  }
  return s;
}

}  // namespace

TEST_CASE("beampattern direct form basics") {
  VecC v(1), w(1);
  v << 1.0;
  w << 1.0;
  MatC g(1, 1);
  g << 1.0;
  CHECK_THAT(beampattern_gain_direct(v, g, {w}, 33.0, 0.5), WithinRel(1.0, 1e-12));

  RngStream rng(5, "scale");
  const auto inst = random_instance(rng, 4, 3, 2);
  const double base =
      beampattern_gain_direct(inst.v, inst.big_g, inst.w, 17.0, 0.5);
  std::vector<VecC> scaled = inst.w;
  for (auto& wk : scaled) wk *= 3.0;
  const double big = beampattern_gain_direct(inst.v, inst.big_g, scaled, 17.0, 0.5);
  CHECK_THAT(big, WithinRel(9.0 * base, 1e-10));
}

TEST_CASE("beampattern trace form equals direct form on rank-one inputs") {
  RngStream rng(99, "crossform");
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = random_instance(rng, 4, 3, 2);
    const double theta = rng.uniform(-90.0, 90.0);
    const MatC v_mat = lift_passive(inst.v);
    std::vector<MatC> w_mats;
    for (const auto& wk : inst.w) w_mats.push_back(wk * wk.adjoint());
    const VecC a = steering_vector(theta, 4, 0.5);
    const MatC upsilon = effective_channel(a, inst.big_g);
    const double direct =
        beampattern_gain_direct(inst.v, inst.big_g, inst.w, theta, 0.5);
    const double traced = beampattern_gain_trace(v_mat, upsilon, w_mats);
    CHECK_THAT(traced, WithinRel(direct, 1e-8));
  }
}

TEST_CASE("beampattern trace form edge cases") {
  RngStream rng(3, "edge");
  const auto inst = random_instance(rng, 4, 3, 2);
  const VecC a = steering_vector(10.0, 4, 0.5);
  const MatC upsilon = effective_channel(a, inst.big_g);

  std::vector<MatC> zeros{MatC::Zero(3, 3), MatC::Zero(3, 3)};
  CHECK_THAT(beampattern_gain_trace(lift_passive(inst.v), upsilon, zeros),
             WithinAbs(0.0, 1e-15));

  // identity V contracts to Tr(Upsilon W Upsilon^H)
  std::vector<MatC> w_mats;
  for (const auto& wk : inst.w) w_mats.push_back(wk * wk.adjoint());
  MatC w_sum = w_mats[0] + w_mats[1];
  const double expected = (upsilon * w_sum * upsilon.adjoint()).trace().real();
  CHECK_THAT(beampattern_gain_trace(MatC::Identity(4, 4), upsilon, w_mats),
             WithinRel(expected, 1e-10));

  MatC bad = MatC::Zero(4, 4);
  bad(0, 1) = 1.0;  // not Hermitian
  CHECK_THROWS_AS(beampattern_gain_trace(bad, upsilon, w_mats),
                  std::invalid_argument);
}

TEST_CASE("effective matrices") {
  // all-ones user channel with identity BS->RIS matrix gives Gamma = I
  ChannelSet ch;
  ch.g_bs_ris = MatC::Identity(3, 3);
  ch.g_ris_rnu = {VecC::Ones(3)};
  ch.g_ris_rfu = {VecC::Ones(3)};
  const SensingSpec spec = build_sensing_spec({0.0}, 6.0, 1.8);
  const auto eff = build_effective_matrices(ch, spec, 0.5);
  CHECK((eff.gamma_rnu[0] - MatC::Identity(3, 3)).norm() < 1e-14);

  // Hermiticity of H and the rank-one oracle
  RngStream rng(8, "eff");
  const auto inst = random_instance(rng, 4, 3, 1);
  ChannelSet ch2;
  ch2.g_bs_ris = inst.big_g;
  ch2.g_ris_rnu = {inst.g_user[0]};
  ch2.g_ris_rfu = {inst.g_user[0]};
  const MatC v_mat = lift_passive(inst.v);
  const auto eff2 = build_effective_matrices(ch2, spec, 0.5, v_mat);
  CHECK((eff2.h_rnu[0] - eff2.h_rnu[0].adjoint()).norm() < 1e-10);

  const MatC w_mat = inst.w[0] * inst.w[0].adjoint();
  const double traced = trace_quadratic(v_mat, eff2.gamma_rnu[0], w_mat);
  const Complex amp = inst.g_user[0].adjoint() * inst.v.asDiagonal() *
                      inst.big_g * inst.w[0];
  CHECK_THAT(traced, WithinRel(std::norm(amp), 1e-8));
  // Tr(W H) is the same quadratic form through H
  const double via_h = (w_mat * eff2.h_rnu[0]).trace().real();
  CHECK_THAT(via_h, WithinRel(std::norm(amp), 1e-8));
}

TEST_CASE("illumination power") {
  RngStream rng(21, "illum");
  const auto inst = random_instance(rng, 4, 3, 2);
  std::vector<MatC> w_mats;
  for (const auto& wk : inst.w) w_mats.push_back(wk * wk.adjoint());
  const MatC v_mat = lift_passive(inst.v);

  CHECK_THAT(illumination_power(v_mat, w_mats, inst.big_g, VecC::Zero(4)),
             WithinAbs(0.0, 1e-15));

  // probe equal to a scaled steering vector reduces to the beampattern gain
  const double gain = 2.5e-3;
  const VecC probe = std::sqrt(gain) * steering_vector(12.0, 4, 0.5);
  const VecC a = steering_vector(12.0, 4, 0.5);
  const MatC upsilon = effective_channel(a, inst.big_g);
  const double bp = beampattern_gain_trace(v_mat, upsilon, w_mats);
  CHECK_THAT(illumination_power(v_mat, w_mats, inst.big_g, probe),
             WithinRel(gain * bp, 1e-10));
}

TEST_CASE("sensing spec construction") {
  const SensingSpec spec = build_sensing_spec({-45.0, 0.0, 45.0}, 6.0, 1.8);
  CHECK(spec.angle_grid_deg.size() == 101);
  CHECK(spec.q_count() == 9);
  for (int q : spec.interest_set) {
    const double angle = spec.angle_grid_deg[q];
    const double d = std::min({std::abs(angle + 45.0), std::abs(angle),
                               std::abs(angle - 45.0)});
    CHECK(d <= 3.0 + 1e-9);
  }

  const SensingSpec single = build_sensing_spec({0.0}, 3.6, 1.8);
  REQUIRE(single.q_count() == 3);
  CHECK_THAT(single.interest_angle(0), WithinAbs(-1.8, 1e-12));
  CHECK_THAT(single.interest_angle(1), WithinAbs(0.0, 1e-12));
  CHECK_THAT(single.interest_angle(2), WithinAbs(1.8, 1e-12));

  // beam too narrow to catch any grid point
  CHECK_THROWS_AS(build_sensing_spec({0.9}, 0.5, 1.8), std::invalid_argument);
  CHECK_THROWS_AS(build_sensing_spec({0.0}, -1.0, 1.8), std::invalid_argument);
}

namespace {

Solution rank_one_solution(const SmallInstance& inst,
                           const std::vector<PowerPair>& coeffs) {
  Solution s;
  for (const auto& wk : inst.w) s.active_mats.push_back(wk * wk.adjoint());
  s.active_vecs = inst.w;
  s.power_coeffs = coeffs;
  s.passive_mat = lift_passive(inst.v);
  s.passive_vec = inst.v;
  return s;
}

}  // namespace

TEST_CASE("rates: zero far power means zero SIC rate") {
  RngStream rng(31, "rates0");
  const auto inst = random_instance(rng, 4, 3, 1);
  const Solution s = rank_one_solution(inst, {{1.0, 0.0}});
  const auto rates = achievable_rates(
      ChannelSet{inst.big_g, {inst.g_user[0]}, {inst.g_user[0]}}, s, 1e-3);
  CHECK_THAT(rates[0].rate_far_at_near(), WithinAbs(0.0, 1e-12));
}

TEST_CASE("rates: unit SINR gives one bit") {
  // single antenna, single element; arrange a_n |g w|^2 == sigma^2
  SmallInstance inst;
  inst.v = VecC::Ones(1);
  inst.big_g = MatC::Ones(1, 1);
  inst.g_user = {VecC::Ones(1)};
  VecC w(1);
  const double noise = 0.1;
  const double a_n = 0.4;
  w << std::sqrt(noise / a_n);
  inst.w = {w};
  const Solution s = rank_one_solution(inst, {{a_n, 1.0 - a_n}});
  const auto rates = achievable_rates(
      ChannelSet{inst.big_g, {inst.g_user[0]}, {inst.g_user[0]}}, s, noise);
  CHECK_THAT(rates[0].rate_near(), WithinRel(1.0, 1e-10));
}

TEST_CASE("rates: direct and trace forms agree on random instances") {
  RngStream rng(77, "ratesx");
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = random_instance(rng, 5, 3, 2);
    ChannelSet ch{inst.big_g,
                  {inst.g_user[0], inst.g_user[1]},
                  {rng.cnormal_matrix(5, 1).col(0), rng.cnormal_matrix(5, 1).col(0)}};
    const Solution s = rank_one_solution(inst, {{0.3, 0.7}, {0.25, 0.75}});
    // the cross-check inside achievable_rates throws on disagreement
    const auto rates = achievable_rates(ch, s, 1e-2);
    const auto traced =
        achievable_rates_trace(ch, s.active_mats, s.power_coeffs, s.passive_mat, 1e-2);
    for (int k = 0; k < 2; ++k) {
      CHECK_THAT(rates[k].rate_near(), WithinRel(traced[k].rate_near(), 1e-8));
      CHECK_THAT(rates[k].rate_far(), WithinRel(traced[k].rate_far(), 1e-8));
    }
  }
}

TEST_CASE("rates: min form and monotonicity in the power split") {
  RngStream rng(13, "ratesmono");
  const auto inst = random_instance(rng, 4, 3, 2);
  ChannelSet ch{inst.big_g,
                {inst.g_user[0], inst.g_user[1]},
                {rng.cnormal_matrix(4, 1).col(0), rng.cnormal_matrix(4, 1).col(0)}};
  bool first = true;
  double prev_far_signal = 0.0;
  double prev_near_signal = 0.0;
  for (double a_f : {0.5, 0.6, 0.7, 0.8}) {
    const Solution s =
        rank_one_solution(inst, {{1.0 - a_f, a_f}, {1.0 - a_f, a_f}});
    const auto rates = achievable_rates(ch, s, 1e-2);
    for (int k = 0; k < 2; ++k) {
      CHECK(rates[k].rate_far() <= rates[k].rate_far_at_near() + 1e-12);
      CHECK(rates[k].rate_far() <= rates[k].rate_far_at_far() + 1e-12);
      CHECK(rates[k].far_own.signal >= 0.0);
    }
    // numerator of the far user's own SINR grows with a_f, near shrinks
    if (!first) {
      CHECK(rates[0].far_own.signal > prev_far_signal);
      CHECK(rates[0].near_own.signal < prev_near_signal);
    }
    first = false;
    prev_far_signal = rates[0].far_own.signal;
    prev_near_signal = rates[0].near_own.signal;
  }
}

TEST_CASE("rates: zero noise and interference flags an infinite rate") {
  SmallInstance inst;
  inst.v = VecC::Ones(1);
  inst.big_g = MatC::Ones(1, 1);
  inst.g_user = {VecC::Ones(1)};
  VecC w(1);
  w << 1.0;
  inst.w = {w};
  const Solution s = rank_one_solution(inst, {{0.4, 0.6}});
  const auto rates = achievable_rates(
      ChannelSet{inst.big_g, {inst.g_user[0]}, {inst.g_user[0]}}, s, 0.0);
  CHECK(rates[0].near_own.infinite);
  CHECK(std::isinf(rates[0].rate_near()));
}

TEST_CASE("all gains stay real nonnegative") {
  RngStream rng(55, "nonneg");
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = random_instance(rng, 4, 3, 2);
    std::vector<MatC> w_mats;
    for (const auto& wk : inst.w) w_mats.push_back(wk * wk.adjoint());
    const VecC a = steering_vector(rng.uniform(-90.0, 90.0), 4, 0.5);
    const double g = beampattern_gain_trace(lift_passive(inst.v),
                                            effective_channel(a, inst.big_g), w_mats);
    CHECK(g >= -1e-10);
  }
}
