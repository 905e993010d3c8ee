#pragma once

#include "risnoma/types.hpp"

namespace risnoma::conic {

struct RankOneExtraction {
  VecC vector;              // sqrt(lambda_max) * principal eigenvector
  double ratio = 0.0;       // lambda_max / lambda_2; +inf when lambda_2 <= 1e-12
  double lambda_max = 0.0;
  double lambda_2 = 0.0;
  double reconstruction_error = 0.0;  // ||X - v v^H||_F
};

/// Principal rank-one factor of a PSD matrix with its eigenvalue-ratio
/// certificate.
RankOneExtraction extract_rank_one(const MatC& x);

}  // namespace risnoma::conic
