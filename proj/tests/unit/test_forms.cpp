#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "symcalc/form_algebra.hpp"

using namespace symcalc;

namespace {

int parity(const std::vector<int>& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  return inversions % 2 ? -1 : 1;
}

// Direct sum over S_{2k} with the 1/(2^k k!) normalization.
CMatrix brute_force_power(const AlgebraValued2Form& omega, int k, const std::vector<CVector>& x) {
  std::vector<int> p(2 * k);
  std::iota(p.begin(), p.end(), 0);
  CMatrix total = CMatrix::Zero(omega.fiber_dim(), omega.fiber_dim());
  do {
    CMatrix term = CMatrix::Identity(omega.fiber_dim(), omega.fiber_dim());
    for (int i = 0; i < k; ++i) term = term * omega(x[p[2 * i]], x[p[2 * i + 1]]);
    total += double(parity(p)) * term;
  } while (std::next_permutation(p.begin(), p.end()));
  double norm = 1.0;
  for (int i = 1; i <= k; ++i) norm *= 2.0 * i;
  return total / norm;
}

std::vector<CVector> random_vectors(int count, int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<CVector> out;
  for (int i = 0; i < count; ++i) {
    CVector v(dim);
    for (int j = 0; j < dim; ++j) v(j) = gauss(rng);
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("first power is the form itself") {
  std::mt19937_64 rng(1);
  const AlgebraValued2Form omega = random_two_form(4, 2, false, rng);
  CHECK(omega.antisymmetry_defect() == 0.0);
  const auto x = random_vectors(2, 4, rng);
  CHECK((wedge_power_evaluate(omega, 1, x) - omega(x[0], x[1])).norm() < 1e-14);
}

TEST_CASE("second power of a scalar form is the Pfaffian pairing") {
  // Omega = e1^e2 + e3^e4 (scalar): Omega^2/2 (e1..e4) = 1.
  AlgebraValued2Form omega(4, 1);
  omega.set(0, 1, CMatrix::Constant(1, 1, 1.0));
  omega.set(2, 3, CMatrix::Constant(1, 1, 1.0));
  std::vector<CVector> e;
  for (int i = 0; i < 4; ++i) e.push_back(CVector::Unit(4, i));
  CHECK(std::abs(wedge_power_evaluate(omega, 2, e)(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("wedge powers agree with brute-force permutation sums") {
  std::mt19937_64 rng(2);
  for (int k = 2; k <= 4; ++k) {
    const AlgebraValued2Form omega = random_two_form(2 * k, 2, false, rng);
    const auto x = random_vectors(2 * k, 2 * k, rng);
    const CMatrix expected = brute_force_power(omega, k, x);
    // (2k)! terms of size O(1) cancel down to the result, so the tolerance is relative to the term count.
    CHECK((wedge_power_evaluate(omega, k, x) - expected).norm() < 1e-14 * std::tgamma(2.0 * k + 1.0));
  }
}

TEST_CASE("wedge power is alternating and multilinear") {
  std::mt19937_64 rng(3);
  const AlgebraValued2Form omega = random_two_form(6, 3, true, rng);
  auto x = random_vectors(6, 6, rng);
  const CMatrix base = wedge_power_evaluate(omega, 3, x);
  std::swap(x[1], x[4]);
  CHECK((wedge_power_evaluate(omega, 3, x) + base).norm() < 1e-12 * base.norm());
  std::swap(x[1], x[4]);
  const auto y = random_vectors(1, 6, rng);
  auto shifted = x;
  shifted[2] = 2.0 * x[2] + y[0];
  auto only_y = x;
  only_y[2] = y[0];
  const CMatrix lhs = wedge_power_evaluate(omega, 3, shifted);
  const CMatrix rhs = 2.0 * base + wedge_power_evaluate(omega, 3, only_y);
  CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());
  auto repeated = x;
  repeated[5] = repeated[0];
  CHECK(wedge_power_evaluate(omega, 3, repeated).norm() < 1e-12 * base.norm());
}

TEST_CASE("subset recursion counts signed pairings") {
  const std::function<double(const double&, const double&)> mul = [](const double& a, const double& b) { return a * b; };
  const std::function<double(const double&, const double&)> add = [](const double& a, const double& b) { return a + b; };
  // Standard symplectic pairing on 4 indices: Pf = 1, so the sum is 2^2 2! = 8.
  const auto pair = [](int a, int b) {
    if ((a == 0 && b == 1) || (a == 2 && b == 3)) return 1.0;
    if ((a == 1 && b == 0) || (a == 3 && b == 2)) return -1.0;
    return 0.0;
  };
  CHECK(alternating_pair_product<double>(4, pair, 1.0, mul, add, 0.0) == doctest::Approx(8.0));
}

TEST_CASE("wedge power rejects unsupported degrees") {
  std::mt19937_64 rng(4);
  const AlgebraValued2Form omega = random_two_form(10, 1, false, rng);
  const auto x = random_vectors(10, 10, rng);
  CHECK_THROWS(wedge_power_evaluate(omega, 5, x));
}

TEST_CASE("symbol-calculus characteristic form matches the pointwise wedge power") {
  std::mt19937_64 rng(5);
  const AlgebraValued2Form omega = random_two_form(4, 2, true, rng);
  const LoopTwoFormField field = LoopTwoFormField::constant(omega);
  const auto x = random_vectors(4, 4, rng);
  const Complex expected = wedge_power_evaluate(omega, 2, x).trace();
  CHECK(std::abs(ck_f_pointwise(field, CosphereDistribution::uniform_plus(), 2, x) - expected) <
        1e-12 * std::max(1.0, std::abs(expected)));
}

TEST_CASE("shuffle wedge of one-forms is the determinant") {
  // For scalar 1-forms a, b: (a^b)(x,y) = a(x)b(y) - a(y)b(x).
  LeftInvariantConnection a;
  LeftInvariantConnection b;
  for (int i = 0; i < 2; ++i) {
    a.generators.push_back(CMatrix::Constant(1, 1, i == 0 ? 1.0 : 2.0));
    b.generators.push_back(CMatrix::Constant(1, 1, i == 0 ? 3.0 : -1.0));
  }
  const MatrixForm ab = wedge({as_form(a), as_form(b)});
  CHECK(ab.degree == 2);
  const std::vector<CVector> e{CVector::Unit(2, 0), CVector::Unit(2, 1)};
  CHECK(std::abs(ab.evaluate(e)(0, 0) - (1.0 * -1.0 - 2.0 * 3.0)) < 1e-15);
}

TEST_CASE("transgression in the flat abelian family") {
  const LieAlgebra g = LieAlgebra::abelian(2);
  std::vector<LeftInvariantConnection> family(3);
  for (int c = 0; c < 3; ++c)
    for (int i = 0; i < 2; ++i) family[c].generators.push_back(CMatrix::Constant(1, 1, Complex(0.0, 0.1 * (c + i))));
  const std::vector<CVector> x{CVector::Unit(2, 0), CVector::Unit(2, 1)};
  const auto result = transgression_check(g, family, 0.1, [](const CMatrix& m) { return m.trace(); }, 1, x);
  CHECK(result.lhs < 1e-12);
  CHECK(result.rhs < 1e-12);
}

}  // TEST_SUITE
