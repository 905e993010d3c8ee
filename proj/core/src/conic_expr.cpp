#include "risnoma/conic/expr.hpp"

namespace risnoma::conic {

AffineExpr& AffineExpr::add_trace(MatVarId var, const MatC& coeff) {
  if (!var.valid()) throw std::invalid_argument("AffineExpr: invalid matrix var");
  MatTerm t;
  t.var = var.idx;
  t.coeff = 0.5 * (coeff + coeff.adjoint());
  for (auto& existing : mat_terms_) {
    if (existing.var == t.var) {
      existing.coeff += t.coeff;
      return *this;
    }
  }
  mat_terms_.push_back(std::move(t));
  return *this;
}

AffineExpr& AffineExpr::add_scalar(ScalarVarId var, double coeff) {
  if (!var.valid()) throw std::invalid_argument("AffineExpr: invalid scalar var");
  for (auto& existing : scalar_terms_) {
    if (existing.var == var.idx) {
      existing.coeff += coeff;
      return *this;
    }
  }
  scalar_terms_.push_back({var.idx, coeff});
  return *this;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& other) {
  for (const auto& t : other.mat_terms_) add_trace({t.var}, t.coeff);
  for (const auto& t : other.scalar_terms_) add_scalar({t.var}, t.coeff);
  constant_ += other.constant_;
  return *this;
}

AffineExpr& AffineExpr::operator*=(double s) {
  for (auto& t : mat_terms_) t.coeff *= s;
  for (auto& t : scalar_terms_) t.coeff *= s;
  constant_ *= s;
  return *this;
}

}  // namespace risnoma::conic
