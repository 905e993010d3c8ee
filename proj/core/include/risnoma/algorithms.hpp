#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risnoma/conic/program.hpp"
#include "risnoma/metrics.hpp"

namespace risnoma {

struct AlgorithmConfig {
  double tol_inner = 1e-4;        // relative objective change, inner loops
  double tol_outer = 1e-3;        // relative objective change, outer loops
  double feas_delta_tol = 1e-6;   // infeasibility indicator target
  int max_inner = 50;
  int max_outer = 20;
  double rho0 = 0.1;              // initial rank-relaxation step size
  double rho_underflow = 1e-8;
  double srcr_rank_tol = 1e-4;    // accept V when Tr(V)/lambda_max < 1 + tol
  double strict_margin = 1e-6;    // open-set constraints as closed margins
  conic::SolverOptions solver;
};

/// One logged step of any loop. Fields that do not apply to a phase stay NaN.
struct TraceRow {
  std::string phase;  // "feasibility" | "sca" | "srcr" | "outer"
  int outer = 0;
  int inner = 0;
  double objective = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();
  double rho = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> eig_ratios;  // W_1..W_K, then V when present
  double wall_ms = 0.0;
};

struct RunTrace {
  std::vector<TraceRow> rows;
  std::vector<double> outer_objectives;
  double total_wall_ms = 0.0;
  int solver_calls = 0;

  void append(const RunTrace& other);
  /// Largest drop between consecutive outer objectives (0 when monotone).
  double worst_monotonicity_violation() const;
};

/// Everything the optimizers need about one scenario realization.
struct ProblemContext {
  ChannelSet channels;
  SensingSpec sensing;
  EffectiveMatrices effective;  // gammas and upsilons; V-independent
  double noise_power = 1e-12;
  double p_max = 1.0;
  VecR r_min_near;  // per-cluster SINR thresholds 2^R - 1
  VecR r_min_far;
  double spacing_ratio = 0.5;
  AlgorithmConfig alg;
  std::uint64_t seed = 0;

  int k_clusters() const { return channels.k_clusters(); }
  int n_antennas() const { return channels.n_antennas(); }
  int m_elements() const { return channels.m_elements(); }
};

ProblemContext make_context(const ChannelSet& channels, const SensingSpec& sensing,
                            double noise_power, double p_max, double qos_rnu_bits,
                            double qos_rfu_bits, double spacing_ratio,
                            const AlgorithmConfig& alg, std::uint64_t seed);

/// SINR threshold behind a rate floor: 2^R - 1.
double qos_rate_threshold(double qos_bits);

/// Fixed points of the convex surrogates in the joint subproblem.
struct ScaState {
  VecR beta1;      // per cluster, AGM point for the RNU-channel product
  VecR beta2;      // per cluster, AGM point for the RFU-channel product
  VecR eta_tilde;  // per cluster, Taylor point of the slack eta

  void validate() const;
};

/// Noise-normalized quadratic forms with V folded in:
/// h_near/h_far are Gamma^H V Gamma / sigma^2, c_q are Upsilon_q^H V Upsilon_q.
struct JointData {
  std::vector<MatC> h_near;
  std::vector<MatC> h_far;
  std::vector<MatC> c_q;
  double p_max = 1.0;
  VecR r_min_near;
  VecR r_min_far;
  double margin = 1e-6;
  double beampattern_scale = 1.0;  // beampattern rows are solved in these units
};

JointData make_joint_data(const ProblemContext& ctx, const MatC& passive_mat);

/// The SCA subproblem for {W_k, a_k}: beampattern floor, power budget,
/// Schur-complement LMI, Taylor-linearized RNU QoS and the AGM-bounded RFU
/// QoS pair. with_delta pads every constraint with the infeasibility
/// indicator and switches the objective to minimizing it.
conic::ConicProgram build_joint_subproblem(const JointData& data,
                                           const ScaState& sca,
                                           bool with_delta = false);

class NeedsInitialization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolveFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JointResult {
  std::vector<MatC> active_mats;
  std::vector<PowerPair> power_coeffs;
  ScaState state;  // fixed points at the last iterate
  double objective = 0.0;
  RunTrace trace;
};

/// Iterates the joint subproblem with fixed-point updates until the
/// objective settles.
JointResult solve_joint_sca(const ProblemContext& ctx, const MatC& passive_mat,
                            const ScaState& init, int outer_index = 0);

struct FeasibleInit {
  ScaState state;
  double delta = 0.0;
  RunTrace trace;
};

/// Drives the infeasibility indicator of the padded subproblem below
/// feas_delta_tol and returns the resulting fixed points.
FeasibleInit find_feasible_init(const ProblemContext& ctx, const MatC& passive_mat,
                                int outer_index = 0);

/// Linear constraint on V: Tr(V coeff) >= rhs.
struct PassiveQosRow {
  MatC coeff;
  double rhs;
};

enum class SrcrStatus { Converged, Stalled };

struct SrcrResult {
  MatC passive_mat;
  double objective = 0.0;
  SrcrStatus status = SrcrStatus::Converged;
  RunTrace trace;
};

/// Rank-one-driving passive update: repeatedly maximizes the beampattern
/// floor under the eigenvector cut, tightening the relaxation parameter and
/// halving the step on unsolvable subproblems. Keeps the incoming V when the
/// final objective would fall below it.
SrcrResult solve_passive_srcr(const ProblemContext& ctx,
                              const std::vector<MatC>& active_mats,
                              const std::vector<PassiveQosRow>& qos_rows,
                              const MatC& v_init, int outer_index = 0);

/// The NOMA QoS rows for the passive subproblem at fixed {W_k, a_k}.
std::vector<PassiveQosRow> noma_passive_qos_rows(
    const ProblemContext& ctx, const std::vector<MatC>& active_mats,
    const std::vector<PowerPair>& power_coeffs);

/// Unit-modulus random-phase start for V, deterministic in (seed, label).
MatC random_phase_passive(int m_elements, std::uint64_t seed,
                          const std::string& label);

struct AlgorithmResult {
  Solution solution;
  RunTrace trace;
  double objective = 0.0;
};

/// Full block-coordinate descent: joint {W, a} step (with a feasibility
/// phase on the first pass) alternating with the passive SRCR step.
AlgorithmResult run_ibcd(const ProblemContext& ctx);

// --- low-complexity path ---

struct PowerBounds {
  double a_max = 0.0;
  double a_min1 = 0.0;
  double a_min2 = 0.0;
  bool feasible() const { return std::max(a_min1, a_min2) <= a_max && a_max < 1.0; }
};

/// Per-cluster feasibility interval of the RFU power coefficient at fixed
/// {W_k} and V.
std::vector<PowerBounds> power_feasibility_bounds(
    const ProblemContext& ctx, const std::vector<MatC>& active_mats,
    const MatC& passive_mat);

/// Minimal feasible RFU coefficient per cluster.
std::vector<PowerPair> closed_form_power(const std::vector<PowerBounds>& bounds);

/// SDR of the active-only subproblem at fixed {a_k} and V.
conic::ConicProgram build_active_subproblem(const JointData& data,
                                            const std::vector<PowerPair>& coeffs);

/// Alternating loop: active SDP, passive SRCR, closed-form power update.
AlgorithmResult run_iao(const ProblemContext& ctx);

/// min_q beampattern at (V, {W_k}); the design objective.
double objective_of(const ProblemContext& ctx, const MatC& passive_mat,
                    const std::vector<MatC>& active_mats);

}  // namespace risnoma
