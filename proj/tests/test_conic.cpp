#include <Eigen/Eigenvalues>
#include <catch2/catch_amalgamated.hpp>

#include "risnoma/conic/embed.hpp"
#include "risnoma/conic/program.hpp"
#include "risnoma/conic/rank_one.hpp"
#include "risnoma/rng.hpp"
#include "risnoma/solution.hpp"

using namespace risnoma;
using namespace risnoma::conic;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SolverOptions checked_options() {
  SolverOptions o;
  o.self_check = true;
  return o;
}

MatC random_hermitian(RngStream& rng, int n) {
  const MatC a = rng.cnormal_matrix(n, n);
  return 0.5 * (a + a.adjoint());
}

MatC random_hermitian_psd(RngStream& rng, int n) {
  const MatC a = rng.cnormal_matrix(n, n);
  return a * a.adjoint();
}

}  // namespace

TEST_CASE("embedding closed forms") {
  CHECK((embed_hermitian(MatC::Identity(2, 2)) - MatR::Identity(4, 4)).norm() <
        1e-14);

  MatC h(2, 2);
  h << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  const MatR e = embed_hermitian(h);
  Eigen::SelfAdjointEigenSolver<MatR> es(e, Eigen::EigenvaluesOnly);
  const VecR evals = es.eigenvalues();
  CHECK_THAT(evals(0), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(evals(1), WithinAbs(-1.0, 1e-12));
  CHECK_THAT(evals(2), WithinAbs(1.0, 1e-12));
  CHECK_THAT(evals(3), WithinAbs(1.0, 1e-12));

  MatC bad(2, 2);
  bad << 1.0, 2.0, 3.0, 1.0;
  CHECK_THROWS_AS(embed_hermitian(bad), std::invalid_argument);
}

TEST_CASE("embedding preserves PSD-ness, traces and round-trips") {
  RngStream rng(17, "embed");
  for (int trial = 0; trial < 25; ++trial) {
    const MatC x = random_hermitian_psd(rng, 4);
    const MatR e = embed_hermitian(x);
    Eigen::SelfAdjointEigenSolver<MatR> es(e, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);

    const MatC a = random_hermitian(rng, 4);
    const double lhs = (embed_hermitian(a) * e).trace();
    const double rhs = 2.0 * (a * x).trace().real();
    CHECK_THAT(lhs, WithinRel(rhs, 1e-9));

    CHECK((unembed_hermitian(e) - x).norm() <= 1e-9 * std::max(1.0, x.norm()));
  }
}

TEST_CASE("unembed repairs the redundant block symmetry") {
  RngStream rng(18, "repair");
  const MatC x = random_hermitian_psd(rng, 3);
  MatR y = embed_hermitian(x);
  // perturb within the symmetric matrices, off the embedded subspace
  MatR noise = MatR::Zero(6, 6);
  noise(0, 0) = 0.3;
  noise(3, 3) = -0.3;
  y += noise;
  const MatC back = unembed_hermitian(y);
  CHECK((back - x).norm() < 1e-12);
}

TEST_CASE("LP basics through the conic interface") {
  {
    ConicProgram p;
    auto t = p.add_scalar_var("t");
    p.add_constraint(scalar_of(t), Cmp::LE, 5.0, "cap");
    p.set_objective_max(scalar_of(t));
    const auto r = p.solve(checked_options());
    REQUIRE(r.optimal());
    CHECK_THAT(r.objective, WithinAbs(5.0, 1e-6));
    CHECK_THAT(r.scalar_values.at("t"), WithinAbs(5.0, 1e-6));
  }
  {
    // infeasible box
    ConicProgram p;
    auto t = p.add_scalar_var("t");
    p.add_constraint(scalar_of(t), Cmp::GE, 2.0);
    p.add_constraint(scalar_of(t), Cmp::LE, 1.0);
    p.set_objective_max(scalar_of(t));
    const auto r = p.solve();
    CHECK(r.status == SolveStatus::Infeasible);
  }
}

TEST_CASE("trace objective saturates the power budget") {
  ConicProgram p;
  auto w = p.add_hermitian_var("W", 2);
  p.add_constraint(trace_of(w, MatC::Identity(2, 2)), Cmp::LE, 3.5, "power");
  p.set_objective_max(trace_of(w, MatC::Identity(2, 2)));
  const auto r = p.solve(checked_options());
  REQUIRE(r.optimal());
  CHECK_THAT(r.objective, WithinAbs(3.5, 1e-6));
  const MatC val = r.mat_values.at("W");
  CHECK_THAT(val.trace().real(), WithinAbs(3.5, 1e-6));
  CHECK(min_eigenvalue(val) >= -1e-8);
}

TEST_CASE("largest-eigenvalue SDP against a direct eigensolve") {
  RngStream rng(23, "lmax");
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 3 + trial % 3;
    const MatC cmat = random_hermitian(rng, n);
    ConicProgram p;
    auto x = p.add_hermitian_var("X", n);
    p.add_constraint(trace_of(x, MatC::Identity(n, n)), Cmp::EQ, 1.0, "trace");
    p.set_objective_max(trace_of(x, cmat));
    const auto r = p.solve();
    REQUIRE(r.optimal());
    Eigen::SelfAdjointEigenSolver<MatC> es(cmat, Eigen::EigenvaluesOnly);
    CHECK_THAT(r.objective, WithinAbs(es.eigenvalues().maxCoeff(), 1e-6));
  }
}

TEST_CASE("SDP infeasibility is certified") {
  ConicProgram p;
  auto x = p.add_hermitian_var("X", 2);
  p.add_constraint(trace_of(x, MatC::Identity(2, 2)), Cmp::LE, -1.0);
  p.set_objective_max(trace_of(x, MatC::Identity(2, 2)));
  const auto r = p.solve();
  CHECK(r.status == SolveStatus::Infeasible);
}

TEST_CASE("schur-style LMI bounds a quadratic") {
  // minimize t subject to [[t, 1], [1, 1]] >= 0  ->  t = 1
  ConicProgram p;
  auto t = p.add_scalar_var("t");
  std::vector<AffineExpr> entries(3);
  entries[0] = scalar_of(t);
  entries[1] = AffineExpr(1.0);
  entries[2] = AffineExpr(1.0);
  p.add_lmi(entries, 2, "schur");
  p.set_objective_min(scalar_of(t));
  const auto r = p.solve(checked_options());
  REQUIRE(r.optimal());
  CHECK_THAT(r.objective, WithinAbs(1.0, 1e-6));
  CHECK(p.constraint_count() == 1);
}

TEST_CASE("random SDPs pass an independent optimality certificate") {
  // feasibility + complementarity recomputed from the returned values
  RngStream rng(41, "cert");
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 3;
    ConicProgram p;
    auto x = p.add_hermitian_var("X", n);
    auto s = p.add_scalar_var("s");
    const MatC c0 = random_hermitian(rng, n);
    const MatC a1 = random_hermitian(rng, n);
    const MatC psd = random_hermitian_psd(rng, n);
    p.add_constraint(trace_of(x, MatC::Identity(n, n)), Cmp::LE, 2.0, "tr");
    AffineExpr mixed = trace_of(x, a1);
    mixed.add_scalar(s, 1.0);
    p.add_constraint(mixed, Cmp::EQ, 0.5, "link");
    p.add_constraint(trace_of(x, psd), Cmp::GE, 0.1, "floor");
    p.set_objective_max(trace_of(x, c0));
    const auto r = p.solve();
    if (!r.optimal()) continue;  // some random instances may be infeasible
    const MatC xv = r.mat_values.at("X");
    CHECK(min_eigenvalue(xv) >= -1e-7);
    CHECK(xv.trace().real() <= 2.0 + 1e-6);
    CHECK((a1 * xv).trace().real() + r.scalar_values.at("s") ==
          Catch::Approx(0.5).margin(1e-6));
    CHECK((psd * xv).trace().real() >= 0.1 - 1e-6);
    CHECK(r.gap < 1e-7);
    CHECK(r.primal_residual < 1e-7);
    CHECK(r.dual_residual < 1e-7);
  }
}

TEST_CASE("solves are deterministic") {
  RngStream rng(4242, "det");
  const MatC cmat = random_hermitian(rng, 4);
  auto build = [&]() {
    ConicProgram p;
    auto x = p.add_hermitian_var("X", 4);
    p.add_constraint(trace_of(x, MatC::Identity(4, 4)), Cmp::EQ, 1.0);
    p.set_objective_max(trace_of(x, cmat));
    return p;
  };
  const auto r1 = build().solve();
  const auto r2 = build().solve();
  REQUIRE(r1.optimal());
  REQUIRE(r2.optimal());
  CHECK(r1.objective == r2.objective);
  CHECK((r1.mat_values.at("X") - r2.mat_values.at("X")).norm() == 0.0);
  CHECK(r1.solver_iterations == r2.solver_iterations);
}

TEST_CASE("rank-one extraction") {
  RngStream rng(61, "rank");
  const VecC u = rng.cnormal_matrix(4, 1).col(0);
  const MatC x = u * u.adjoint();
  const auto ex = extract_rank_one(x);
  CHECK(std::isinf(ex.ratio));
  CHECK(ex.reconstruction_error < 1e-10);
  CHECK((ex.vector * ex.vector.adjoint() - x).norm() < 1e-10);

  MatC d = MatC::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  const auto ex2 = extract_rank_one(d);
  CHECK_THAT(ex2.ratio, WithinRel(2.0, 1e-12));
  CHECK_THAT(std::abs(ex2.vector(0)), WithinRel(std::sqrt(2.0), 1e-12));
  CHECK_THAT(std::abs(ex2.vector(1)), WithinAbs(0.0, 1e-12));
}

TEST_CASE("program dump names everything") {
  ConicProgram p;
  auto w = p.add_hermitian_var("W0", 2);
  auto chi = p.add_scalar_var("chi", 1e-6);
  p.add_constraint(trace_of(w, MatC::Identity(2, 2)), Cmp::LE, 1.0, "power");
  p.set_objective_max(scalar_of(chi));
  const std::string text = p.dump();
  CHECK(text.find("W0") != std::string::npos);
  CHECK(text.find("chi") != std::string::npos);
  CHECK(text.find("power") != std::string::npos);
}
