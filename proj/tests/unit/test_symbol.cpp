#include <doctest.h>

#include <random>

#include "symcalc/symbol.hpp"
#include "symcalc/spectral.hpp"
#include "symcalc/verify.hpp"

using namespace symcalc;

namespace {

FourierSeries scalar_series(std::initializer_list<std::pair<int, Complex>> modes) {
  FourierSeries s(1, 0);
  for (const auto& [k, c] : modes) s = s + FourierSeries::mode(k, CMatrix::Constant(1, 1, c));
  return s;
}

}  // namespace

TEST_SUITE("symbol") {

TEST_CASE("half-integer orders") {
  const HalfInt half = HalfInt::from_twice(1);
  CHECK(half.value() == doctest::Approx(0.5));
  CHECK_FALSE(half.is_integer());
  CHECK((half + half) == HalfInt::integer(1));
  CHECK((half - 2) == HalfInt::from_twice(-3));
  CHECK(HalfInt::from_double(-1.5) == HalfInt::from_twice(-3));
  CHECK(HalfInt::integer(-1) < HalfInt::from_twice(-1));
  CHECK_THROWS(HalfInt::from_double(0.3));
}

TEST_CASE("weight_power order and multiplier") {
  WeightSpec spec;
  spec.sobolev_exponent = 0.25;
  CHECK(spec.order() == HalfInt::from_twice(1));
  CHECK(spec.multiplier(3) == doctest::Approx(std::sqrt(3.0)));
  CHECK(spec.multiplier(0) == doctest::Approx(1.0));
}

TEST_CASE("multiplication symbols compose to the pointwise product") {
  const FourierSeries u = scalar_series({{0, 1.0}, {1, Complex(0.5, 0.2)}, {-2, 0.3}});
  const FourierSeries v = scalar_series({{0, -0.4}, {2, Complex(0.0, 1.0)}});
  const ClassicalSymbol uv = compose(multiplication_symbol(u, 2), multiplication_symbol(v, 2));
  const ClassicalSymbol expected = multiplication_symbol(u * v, 2);
  CHECK(component_distance(uv, expected) < 1e-14);
}

TEST_CASE("powers of the weight compose additively in the exponent") {
  const auto weight = [](double s) {
    WeightSpec spec;
    spec.sobolev_exponent = s;
    return weight_power_symbol(spec, 2, 3);
  };
  const ClassicalSymbol product = compose(weight(0.5), weight(-0.25));
  CHECK(product.order() == HalfInt::from_twice(1));
  CHECK(component_distance(product, weight(0.25)) < 1e-14);
}

TEST_CASE("composition is associative up to the retained depth") {
  std::mt19937_64 rng(11);
  const ClassicalSymbol a = random_symbol(1, 2, 2, 3, rng);
  const ClassicalSymbol b = random_symbol(0, 2, 2, 3, rng);
  const ClassicalSymbol c = random_symbol(-1, 2, 2, 3, rng);
  const ClassicalSymbol left = compose(compose(a, b, 3), c, 3);
  const ClassicalSymbol right = compose(a, compose(b, c, 3), 3);
  CHECK(component_distance(left, right) < 1e-10 * left.max_component_norm());
}

TEST_CASE("commutator with |D| differentiates the coefficient") {
  // [u, |D|] has symbol i sign(xi) u'.
  const FourierSeries u = scalar_series({{1, 0.7}, {-1, 0.7}, {3, Complex(0.1, -0.2)}});
  WeightSpec half;
  half.sobolev_exponent = 0.5;
  const ClassicalSymbol a = multiplication_symbol(u, 2);
  const ClassicalSymbol abs_d = weight_power_symbol(half, 1, 2);
  const ClassicalSymbol comm = commutator(a, abs_d, 2);
  REQUIRE(comm.order() >= HalfInt::integer(0));
  const HomogeneousComponent* lead = comm.component_of_degree(HalfInt::integer(0));
  REQUIRE(lead != nullptr);
  const FourierSeries expected_plus = Complex(0.0, 1.0) * u.derivative();
  CHECK((lead->plus - expected_plus).norm() < 1e-14);
  CHECK((lead->minus + expected_plus).norm() < 1e-14);
}

TEST_CASE("depth truncation keeps the leading components") {
  std::mt19937_64 rng(3);
  const ClassicalSymbol a = random_symbol(2, 1, 1, 4, rng);
  const ClassicalSymbol t = a.truncated_to_depth(1);
  CHECK(t.depth() == 1);
  CHECK(t.lowest_degree() == HalfInt::integer(1));
  CHECK(t.degree_is_truncated(HalfInt::integer(0)));
  CHECK((t.component(0).plus - a.component(0).plus).norm() == 0.0);
}

TEST_CASE("quantized multiplication operator has the Fourier coefficients as off-diagonals") {
  const FourierSeries u = scalar_series({{0, 2.0}, {1, Complex(0.0, 0.5)}});
  const FourierMatrix m = quantize(multiplication_symbol(u, 0), 4);
  CHECK(std::abs(m.block(3, 2)(0, 0) - Complex(0.0, 0.5)) < 1e-15);
  CHECK(std::abs(m.block(2, 2)(0, 0) - 2.0) < 1e-15);
  CHECK(std::abs(m.block(1, 0)(0, 0)) == 0.0);  // psi(0) = 0 kills the zero column
  CHECK(std::abs(m.block(2, 3)(0, 0)) == 0.0);
}

}  // TEST_SUITE
