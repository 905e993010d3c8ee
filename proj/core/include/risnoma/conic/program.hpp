#pragma once

#include <limits>
#include <map>
#include <string>
#include <vector>

#include "risnoma/conic/expr.hpp"

namespace risnoma::conic {

enum class Cmp { LE, GE, EQ };

enum class SolveStatus { Optimal, Infeasible, NumericalFailure };

struct SolverOptions {
  double tolerance = 1e-8;      // primal/dual residual and relative gap target
  int max_iterations = 200;
  double step_fraction = 0.98;  // fraction of the max step to the cone boundary
  bool self_check = false;      // verify Newton systems while iterating
  bool verbose = false;
};

struct SolveReport {
  SolveStatus status = SolveStatus::NumericalFailure;
  double objective = 0.0;  // user-space value of the declared objective
  std::map<std::string, MatC> mat_values;
  std::map<std::string, double> scalar_values;
  int solver_iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  std::string message;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Trace-affine program over Hermitian/real PSD matrix variables and
/// nonnegative scalars: linear (in)equalities plus small LMI blocks whose
/// entries are affine expressions. Complex Hermitian variables are embedded
/// into real symmetric form at solve time.
class ConicProgram {
 public:
  MatVarId add_hermitian_var(const std::string& name, int dim);
  MatVarId add_symmetric_var(const std::string& name, int dim);
  /// Nonnegative scalar; lo/hi add margin rows when tighter than [0, inf).
  ScalarVarId add_scalar_var(const std::string& name, double lo = 0.0,
                             double hi = std::numeric_limits<double>::infinity());

  void add_constraint(const AffineExpr& lhs, Cmp cmp, double rhs,
                      const std::string& label = "");
  /// Symmetric dim x dim block of affine entries (row-major upper triangle,
  /// dim*(dim+1)/2 entries) constrained to be PSD.
  void add_lmi(const std::vector<AffineExpr>& upper_triangle, int dim,
               const std::string& label = "");

  void set_objective_max(const AffineExpr& objective);
  void set_objective_min(const AffineExpr& objective);

  /// Linear constraints plus LMI blocks (bound margin rows excluded).
  int constraint_count() const;

  /// Self-describing text form: variables, constraints, objective.
  std::string dump() const;

  SolveReport solve(const SolverOptions& options = {}) const;

  // --- introspection used by the solver backend and tests ---
  struct MatVarDecl {
    std::string name;
    int dim;
    bool complex_hermitian;
  };
  struct ScalarVarDecl {
    std::string name;
    double lo;
    double hi;
  };
  struct Constraint {
    AffineExpr lhs;
    Cmp cmp;
    double rhs;
    std::string label;
  };
  struct Lmi {
    std::vector<AffineExpr> upper;
    int dim;
    std::string label;
  };

  const std::vector<MatVarDecl>& mat_vars() const { return mat_vars_; }
  const std::vector<ScalarVarDecl>& scalar_vars() const { return scalar_vars_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Lmi>& lmis() const { return lmis_; }
  const AffineExpr& objective() const { return objective_; }
  bool maximize() const { return maximize_; }

 private:
  void check_expr(const AffineExpr& e) const;

  std::vector<MatVarDecl> mat_vars_;
  std::vector<ScalarVarDecl> scalar_vars_;
  std::vector<Constraint> constraints_;
  std::vector<Lmi> lmis_;
  AffineExpr objective_;
  bool maximize_ = true;
};

}  // namespace risnoma::conic
