#include "risnoma/conic/rank_one.hpp"

#include <Eigen/Eigenvalues>

namespace risnoma::conic {

RankOneExtraction extract_rank_one(const MatC& x) {
  Eigen::SelfAdjointEigenSolver<MatC> es(0.5 * (x + x.adjoint()));
  const auto& evals = es.eigenvalues();  // ascending
  const auto n = evals.size();
  RankOneExtraction out;
  out.lambda_max = evals(n - 1);
  out.lambda_2 = n >= 2 ? evals(n - 2) : 0.0;
  out.vector = std::sqrt(std::max(0.0, out.lambda_max)) * es.eigenvectors().col(n - 1);
  out.ratio = out.lambda_2 <= 1e-12
                  ? std::numeric_limits<double>::infinity()
                  : out.lambda_max / out.lambda_2;
  out.reconstruction_error = (x - out.vector * out.vector.adjoint()).norm();
  return out;
}

}  // namespace risnoma::conic
