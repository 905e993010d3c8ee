#include "risnoma/conic/program.hpp"

#include <sstream>

namespace risnoma::conic {

MatVarId ConicProgram::add_hermitian_var(const std::string& name, int dim) {
  if (dim < 1) throw std::invalid_argument("conic: matrix dim must be >= 1");
  mat_vars_.push_back({name, dim, true});
  return {static_cast<int>(mat_vars_.size()) - 1};
}

MatVarId ConicProgram::add_symmetric_var(const std::string& name, int dim) {
  if (dim < 1) throw std::invalid_argument("conic: matrix dim must be >= 1");
  mat_vars_.push_back({name, dim, false});
  return {static_cast<int>(mat_vars_.size()) - 1};
}

ScalarVarId ConicProgram::add_scalar_var(const std::string& name, double lo,
                                         double hi) {
  if (lo < 0.0)
    throw std::invalid_argument("conic: scalar vars live in the nonnegative cone");
  if (!(lo <= hi)) throw std::invalid_argument("conic: empty scalar bounds");
  scalar_vars_.push_back({name, lo, hi});
  return {static_cast<int>(scalar_vars_.size()) - 1};
}

void ConicProgram::check_expr(const AffineExpr& e) const {
  for (const auto& t : e.mat_terms()) {
    if (t.var < 0 || t.var >= static_cast<int>(mat_vars_.size()))
      throw std::invalid_argument("conic: expression references unknown matrix var");
    const auto& decl = mat_vars_[t.var];
    if (t.coeff.rows() != decl.dim || t.coeff.cols() != decl.dim)
      throw std::invalid_argument("conic: coefficient dimension mismatch for " +
                                  decl.name);
    if (!decl.complex_hermitian && t.coeff.imag().norm() > 1e-12)
      throw std::invalid_argument("conic: complex coefficient on real var " +
                                  decl.name);
  }
  for (const auto& t : e.scalar_terms())
    if (t.var < 0 || t.var >= static_cast<int>(scalar_vars_.size()))
      throw std::invalid_argument("conic: expression references unknown scalar var");
}

void ConicProgram::add_constraint(const AffineExpr& lhs, Cmp cmp, double rhs,
                                  const std::string& label) {
  check_expr(lhs);
  constraints_.push_back({lhs, cmp, rhs, label});
}

void ConicProgram::add_lmi(const std::vector<AffineExpr>& upper_triangle,
                           int dim, const std::string& label) {
  if (static_cast<int>(upper_triangle.size()) != dim * (dim + 1) / 2)
    throw std::invalid_argument("conic: LMI entry count mismatch");
  for (const auto& e : upper_triangle) check_expr(e);
  lmis_.push_back({upper_triangle, dim, label});
}

void ConicProgram::set_objective_max(const AffineExpr& objective) {
  check_expr(objective);
  objective_ = objective;
  maximize_ = true;
}

void ConicProgram::set_objective_min(const AffineExpr& objective) {
  check_expr(objective);
  objective_ = objective;
  maximize_ = false;
}

int ConicProgram::constraint_count() const {
  return static_cast<int>(constraints_.size() + lmis_.size());
}

namespace {

void describe_expr(std::ostream& os, const AffineExpr& e,
                   const std::vector<ConicProgram::MatVarDecl>& mats,
                   const std::vector<ConicProgram::ScalarVarDecl>& scalars) {
  bool first = true;
  for (const auto& t : e.mat_terms()) {
    os << (first ? "" : " + ") << "Tr(A·" << mats[t.var].name << ")";
    first = false;
  }
  for (const auto& t : e.scalar_terms()) {
    os << (first ? "" : " + ") << t.coeff << "·" << scalars[t.var].name;
    first = false;
  }
  if (e.constant() != 0.0 || first) os << (first ? "" : " + ") << e.constant();
}

}  // namespace

std::string ConicProgram::dump() const {
  std::ostringstream os;
  os << "conic program\n";
  os << "matrix vars (" << mat_vars_.size() << "):\n";
  for (const auto& v : mat_vars_)
    os << "  " << v.name << " : " << (v.complex_hermitian ? "hermitian" : "symmetric")
       << " PSD " << v.dim << "x" << v.dim << "\n";
  os << "scalar vars (" << scalar_vars_.size() << "):\n";
  for (const auto& v : scalar_vars_)
    os << "  " << v.name << " in [" << v.lo << ", " << v.hi << "]\n";
  os << "constraints (" << constraints_.size() << "):\n";
  for (const auto& c : constraints_) {
    os << "  [" << c.label << "] ";
    describe_expr(os, c.lhs, mat_vars_, scalar_vars_);
    os << (c.cmp == Cmp::LE ? " <= " : c.cmp == Cmp::GE ? " >= " : " == ") << c.rhs
       << "\n";
  }
  os << "LMI blocks (" << lmis_.size() << "):\n";
  for (const auto& l : lmis_)
    os << "  [" << l.label << "] " << l.dim << "x" << l.dim << " PSD\n";
  os << (maximize_ ? "maximize " : "minimize ");
  describe_expr(os, objective_, mat_vars_, scalar_vars_);
  os << "\n";
  return os.str();
}

}  // namespace risnoma::conic
