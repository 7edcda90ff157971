#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symcalc/error.hpp"
#include "symcalc/loop_geometry.hpp"
#include "symcalc/traces.hpp"

using namespace symcalc;

namespace {

CVector basis(int dim, int i) {
  CVector e = CVector::Zero(dim);
  e(i) = 1.0;
  return e;
}

}  // namespace

TEST_SUITE("lie") {

TEST_CASE("su(2) in the minus-Killing orthonormal basis") {
  const LieAlgebra g = LieAlgebra::su2();
  REQUIRE(g.dim() == 3);
  CHECK((g.gram() - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-13);
  CHECK((g.killing_form() + Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-13);
  // -B(e_i, e_i) = 2 c^2 = 1 forces |c^k_ij| = 1/sqrt(2).
  const CVector b = g.bracket(basis(3, 0), basis(3, 1));
  CHECK(b.norm() == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(std::abs(b(0)) + std::abs(b(1)) < 1e-14);
  CHECK(g.jacobi_defect() < 1e-13);
  CHECK(g.ad_invariance_defect() < 1e-13);
  CHECK(g.ad_trace_defect() < 1e-13);
}

TEST_CASE("su(3) and abelian algebras") {
  const LieAlgebra g = LieAlgebra::su(3);
  CHECK(g.dim() == 8);
  CHECK(g.jacobi_defect() < 1e-12);
  CHECK((g.gram() - Eigen::MatrixXd::Identity(8, 8)).norm() < 1e-12);
  const LieAlgebra a = LieAlgebra::abelian(2);
  CHECK(a.bracket(basis(2, 0), basis(2, 1)).norm() == 0.0);
}

TEST_CASE("structure constants violating Jacobi are rejected") {
  std::vector<std::vector<std::vector<double>>> c(3, std::vector<std::vector<double>>(3, std::vector<double>(3, 0.0)));
  c[0][1][2] = 1.0;
  c[1][0][2] = -1.0;
  c[1][2][0] = 1.0;
  c[2][1][0] = -1.0;
  c[0][2][0] = 1.0;
  c[2][0][0] = -1.0;
  CHECK_THROWS_AS(LieAlgebra::from_structure_constants(c), DomainError);
}

}  // TEST_SUITE

TEST_SUITE("loop") {

TEST_CASE("Sobolev weight scales mode k by |k|^{2s}") {
  LoopElement u(3, 3);
  u.at(3) = basis(3, 1);
  u.at(-3) = basis(3, 1);
  u.at(0) = basis(3, 2);
  const LoopElement w = sobolev_apply(0.5, u);
  CHECK(std::abs(w.at(3)(1) - 3.0) < 1e-14);
  CHECK(std::abs(w.at(-3)(1) - 3.0) < 1e-14);
  CHECK(std::abs(w.at(0)(2) - 1.0) < 1e-14);
}

TEST_CASE("H^s inner product") {
  const LieAlgebra g = LieAlgebra::su2();
  LoopElement u(3, 2);
  u.at(2) = basis(3, 0);
  u.at(-2) = basis(3, 0);
  u.at(0) = basis(3, 1);
  // 2 pi (1 + 2 * 2^{2s}) at s = 1/2.
  CHECK(std::abs(h_s_inner(g, 0.5, u, u) - 2.0 * std::numbers::pi * 5.0) < 1e-12);
  std::mt19937_64 rng(4);
  const LoopElement a = LoopElement::random_real(3, 3, rng);
  const LoopElement b = LoopElement::random_real(3, 3, rng);
  CHECK(std::abs(h_s_inner(g, 0.5, a, b) - std::conj(h_s_inner(g, 0.5, b, a))) < 1e-12);
}

TEST_CASE("pointwise bracket matches the bracket of evaluations") {
  const LieAlgebra g = LieAlgebra::su2();
  std::mt19937_64 rng(8);
  const LoopElement u = LoopElement::random_real(3, 2, rng);
  const LoopElement v = LoopElement::random_real(3, 3, rng);
  const LoopElement w = pointwise_bracket(g, u, v);
  CHECK(w.mode_cutoff() == 5);
  CHECK(w.is_real());
  for (double x : {0.0, 0.7, 2.9}) CHECK((w.evaluate(x) - g.bracket(u.evaluate(x), v.evaluate(x))).norm() < 1e-13);
}

TEST_CASE("curvature on constant loops in closed form") {
  // On constant loops theta~(U) = ad_U, a representation, while theta(U) = ad_U - R ad_U / 2
  // with R = Q^{-1/2} of symbol |xi|^{-1}; hence Omega = ad_{[U,V]} (-R/2 + R^2/4).
  const LieAlgebra g = LieAlgebra::su2();
  const LoopElement u = LoopElement::constant(basis(3, 0));
  const LoopElement v = LoopElement::constant(basis(3, 1));
  const Connection conjugation{ConnectionKind::Conjugation, 0.5, 2};
  CHECK(curvature(g, conjugation, u, v).max_component_norm() < 1e-14);

  const Connection levi_civita{ConnectionKind::LeviCivita, 0.5, 3};
  const ClassicalSymbol omega = curvature(g, levi_civita, u, v);
  const CMatrix ad_uv = g.ad(g.bracket(basis(3, 0), basis(3, 1)));
  const auto sheet_gap = [&](HalfInt degree, Complex factor) {
    const HomogeneousComponent* c = omega.component_of_degree(degree);
    REQUIRE(c != nullptr);
    const CMatrix expected = factor * ad_uv;
    return (c->plus.coefficient(0) - expected).norm() + (c->minus.coefficient(0) - expected).norm() +
           c->plus.norm_beyond(0) + c->minus.norm_beyond(0);
  };
  CHECK(sheet_gap(HalfInt::integer(0), 0.0) < 1e-14);
  CHECK(sheet_gap(HalfInt::integer(-1), -0.5) < 1e-14);
  CHECK(sheet_gap(HalfInt::integer(-2), 0.25) < 1e-14);
  CHECK(sheet_gap(HalfInt::integer(-3), 0.0) < 1e-14);
}

TEST_CASE("curvature symbol has no order-zero part and matches the exact diagonal") {
  const LieAlgebra g = LieAlgebra::su2();
  std::mt19937_64 rng(2);
  const LoopElement u = LoopElement::random_real(3, 2, rng);
  const LoopElement v = LoopElement::random_real(3, 2, rng);
  const Connection theta{ConnectionKind::LeviCivita, 0.5, 3};
  const ClassicalSymbol omega = curvature(g, theta, u, v);
  CHECK(omega.component(0).norm() < 1e-12 * omega.max_component_norm());

  // Exact diagonal block at a large mode versus sum_j sigma_{-j}(mode 0) m^{-j}.
  const int n = 512;
  const auto blocks = curvature_diagonal_blocks(g, theta, u, v, n);
  const int m = n;
  CMatrix expansion = CMatrix::Zero(3, 3);
  for (int level = 1; level <= omega.depth(); ++level) {
    expansion += omega.component(level).plus.coefficient(0) * std::pow(double(m), -level);
  }
  CHECK((blocks[m + n] - expansion).norm() < 1e-6 * expansion.norm());
}

TEST_CASE("conjugation connection agrees with the Levi-Civita one for abelian algebras") {
  const LieAlgebra g = LieAlgebra::abelian(2);
  std::mt19937_64 rng(6);
  const LoopElement u = LoopElement::random_real(2, 2, rng);
  const ClassicalSymbol lc = theta_levi_civita(g, 0.5, u, 2);
  const ClassicalSymbol cj = theta_conjugation(g, 0.5, u, 2);
  CHECK(lc.max_component_norm() == 0.0);
  CHECK(cj.max_component_norm() == 0.0);
}

TEST_CASE("Chevalley-Eilenberg differential") {
  const LieAlgebra g = LieAlgebra::su2();
  std::mt19937_64 rng(1);
  const LoopElement u = LoopElement::random_real(3, 1, rng);
  const LoopElement v = LoopElement::random_real(3, 1, rng);
  const LoopElement w = LoopElement::random_real(3, 1, rng);
  // d of d alpha vanishes for alpha = <Z, .>.
  const LoopElement z = LoopElement::random_real(3, 2, rng);
  const LoopOneForm alpha = [&](const LoopElement& x) { return h_s_inner(g, 0.0, z, x); };
  const LoopTwoForm d_alpha = [&](const LoopElement& x, const LoopElement& y) {
    return ce_differential(g, alpha, x, y);
  };
  CHECK(std::abs(ce_differential(g, d_alpha, u, v, w)) < 1e-12);
  const LoopTwoForm symmetric = [&](const LoopElement& x, const LoopElement& y) {
    return h_s_inner(g, 0.0, x, x) * h_s_inner(g, 0.0, y, y);
  };
  CHECK_THROWS_AS(ce_differential(g, symmetric, u, v, w), DomainError);
}

}  // TEST_SUITE
