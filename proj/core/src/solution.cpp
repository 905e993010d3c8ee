#include "risnoma/solution.hpp"

#include <Eigen/Eigenvalues>

namespace risnoma {

bool is_hermitian(const MatC& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double scale = std::max(1.0, m.norm());
  return (m - m.adjoint()).norm() <= tol * scale;
}

double min_eigenvalue(const MatC& m) {
  Eigen::SelfAdjointEigenSolver<MatC> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void Solution::validate(double psd_tol, double vec_tol) const {
  if (active_mats.empty()) throw std::invalid_argument("solution: no active matrices");
  if (power_coeffs.size() != active_mats.size())
    throw std::invalid_argument("solution: power coefficient count mismatch");
  for (const auto& p : power_coeffs) {
    if (!(p.near > 0.0 && p.near < 1.0 && p.far > 0.0 && p.far < 1.0))
      throw std::invalid_argument("solution: power coefficients must lie in (0,1)");
    if (std::abs(p.near + p.far - 1.0) > 1e-9)
      throw std::invalid_argument("solution: power coefficients must sum to 1");
  }
  for (const auto& w : active_mats) {
    if (!is_hermitian(w)) throw std::invalid_argument("solution: W not Hermitian");
    if (min_eigenvalue(w) < -psd_tol * std::max(1.0, w.norm()))
      throw std::invalid_argument("solution: W not PSD");
  }
  if (!is_hermitian(passive_mat))
    throw std::invalid_argument("solution: V not Hermitian");
  if (min_eigenvalue(passive_mat) < -psd_tol * std::max(1.0, passive_mat.norm()))
    throw std::invalid_argument("solution: V not PSD");
  for (int m = 0; m < passive_mat.rows(); ++m)
    if (std::abs(passive_mat(m, m) - 1.0) > 1e-6)
      throw std::invalid_argument("solution: V diagonal not unit");

  if (active_vecs) {
    if (active_vecs->size() != active_mats.size())
      throw std::invalid_argument("solution: active vector count mismatch");
    for (std::size_t k = 0; k < active_mats.size(); ++k) {
      const MatC outer = (*active_vecs)[k] * (*active_vecs)[k].adjoint();
      if ((outer - active_mats[k]).norm() >
          vec_tol * std::max(1.0, active_mats[k].norm()))
        throw std::invalid_argument("solution: W inconsistent with w w^H");
    }
  }
  if (passive_vec) {
    const MatC outer = passive_vec->conjugate() * passive_vec->transpose();
    if ((outer - passive_mat).norm() >
        vec_tol * std::max(1.0, passive_mat.norm()))
      throw std::invalid_argument("solution: V inconsistent with conj(v) v^T");
  }
}

}  // namespace risnoma
