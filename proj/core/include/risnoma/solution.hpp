#pragma once

#include <optional>
#include <vector>

#include "risnoma/types.hpp"

namespace risnoma {

/// Per-cluster NOMA power split; both coefficients are in (0,1) and sum to 1.
struct PowerPair {
  double near = 0.5;
  double far = 0.5;
};

/// Joint design point. Matrix forms are primary (the optimizers work on
/// lifted matrices); vector forms are attached after rank-one extraction.
///
/// Phase convention: with the RIS phase vector v (unit-modulus entries),
/// the lifted passive matrix is V = conj(v) v^T, so that
/// |g^H diag(v) G w|^2 = Tr(V * Gamma * W * Gamma^H) with Gamma = diag(g^H) G.
struct Solution {
  std::vector<MatC> active_mats;          // K of N x N, Hermitian PSD
  std::optional<std::vector<VecC>> active_vecs;
  std::vector<PowerPair> power_coeffs;    // K pairs
  MatC passive_mat;                       // M x M, Hermitian PSD, unit diagonal
  std::optional<VecC> passive_vec;        // length M, unit-modulus entries

  int k_clusters() const { return static_cast<int>(active_mats.size()); }

  /// Checks the structural invariants; throws std::invalid_argument with the
  /// first violated property. psd_tol bounds negative eigenvalues, vec_tol is
  /// the relative Frobenius tolerance between mats and vector outer products.
  void validate(double psd_tol = 1e-8, double vec_tol = 1e-6) const;
};

bool is_hermitian(const MatC& m, double tol = 1e-9);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const MatC& m);

}  // namespace risnoma
