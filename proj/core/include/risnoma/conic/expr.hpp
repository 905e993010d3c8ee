#pragma once

#include <string>
#include <vector>

#include "risnoma/types.hpp"

namespace risnoma::conic {

struct MatVarId {
  int idx = -1;
  bool valid() const { return idx >= 0; }
};

struct ScalarVarId {
  int idx = -1;
  bool valid() const { return idx >= 0; }
};

/// Real-valued affine expression over program variables:
///   sum_j Re Tr(A_j X_j) + sum_j c_j s_j + constant.
/// Matrix coefficients are Hermitian-symmetrized on entry, which leaves
/// Re Tr(A X) unchanged for Hermitian X.
class AffineExpr {
 public:
  AffineExpr() = default;
  /*implicit*/ AffineExpr(double constant) : constant_(constant) {}

  AffineExpr& add_trace(MatVarId var, const MatC& coeff);
  AffineExpr& add_scalar(ScalarVarId var, double coeff);
  AffineExpr& add_constant(double c) {
    constant_ += c;
    return *this;
  }
  AffineExpr& operator+=(const AffineExpr& other);
  AffineExpr& operator*=(double s);

  struct MatTerm {
    int var;
    MatC coeff;
  };
  struct ScalarTerm {
    int var;
    double coeff;
  };

  const std::vector<MatTerm>& mat_terms() const { return mat_terms_; }
  const std::vector<ScalarTerm>& scalar_terms() const { return scalar_terms_; }
  double constant() const { return constant_; }
  bool is_constant() const { return mat_terms_.empty() && scalar_terms_.empty(); }

 private:
  std::vector<MatTerm> mat_terms_;
  std::vector<ScalarTerm> scalar_terms_;
  double constant_ = 0.0;
};

inline AffineExpr trace_of(MatVarId var, const MatC& coeff) {
  AffineExpr e;
  e.add_trace(var, coeff);
  return e;
}

inline AffineExpr scalar_of(ScalarVarId var, double coeff = 1.0) {
  AffineExpr e;
  e.add_scalar(var, coeff);
  return e;
}

}  // namespace risnoma::conic
