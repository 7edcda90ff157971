#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "symcalc/traces.hpp"
#include "symcalc/verify.hpp"

using namespace symcalc;

TEST_SUITE("traces") {

TEST_CASE("residue of the inverse square root of the Laplacian") {
  WeightSpec spec;
  spec.sobolev_exponent = -0.5;
  CHECK(std::abs(wodzicki_residue(weight_power_symbol(spec, 1, 2)) - 2.0) < 1e-14);
  // Rank 3 bundle: the fiber trace contributes a factor 3.
  CHECK(std::abs(wodzicki_residue(weight_power_symbol(spec, 3, 2)) - 6.0) < 1e-14);
}

TEST_CASE("residue vanishes for multiplication operators and low orders") {
  FourierSeries u = FourierSeries::scalar_constant(2.0) + FourierSeries::mode(1, CMatrix::Constant(1, 1, 0.3));
  CHECK(std::abs(wodzicki_residue(multiplication_symbol(u, 3))) == 0.0);
  WeightSpec spec;
  spec.sobolev_exponent = -1.5;
  CHECK(std::abs(wodzicki_residue(weight_power_symbol(spec, 1, 2))) == 0.0);
}

TEST_CASE("residue of a commutator vanishes") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const ClassicalSymbol a = random_symbol(1, 2, 2, 4, rng);
    const ClassicalSymbol b = random_symbol(-1, 2, 2, 4, rng);
    const ClassicalSymbol c = commutator(a, b, 4);
    CHECK(std::abs(wodzicki_residue(c)) < 1e-10 * c.max_component_norm());
  }
}

TEST_CASE("leading-symbol trace evaluates the chosen distribution") {
  // sigma_0 = 1 + cos(x) on the plus sheet, 2 on the minus sheet.
  FourierSeries plus = FourierSeries::scalar_constant(1.0) + FourierSeries::mode(1, CMatrix::Constant(1, 1, 0.5)) +
                       FourierSeries::mode(-1, CMatrix::Constant(1, 1, 0.5));
  std::vector<HomogeneousComponent> parts{{HalfInt::integer(0), plus, FourierSeries::scalar_constant(2.0)}};
  const ClassicalSymbol sym(HalfInt::integer(0), parts);
  CHECK(std::abs(symbol_trace(CosphereDistribution::uniform_plus(), sym) - 1.0) < 1e-15);
  CHECK(std::abs(symbol_trace(CosphereDistribution::uniform_both(), sym) - 3.0) < 1e-15);
  CHECK(std::abs(symbol_trace(CosphereDistribution::delta(0.0, Sheet::Plus), sym) - 2.0) < 1e-15);
  CHECK(std::abs(symbol_trace(CosphereDistribution::delta(std::numbers::pi, Sheet::Plus), sym)) < 1e-15);
  CHECK(std::abs(symbol_trace(CosphereDistribution::mode(1, Sheet::Plus), sym) - 0.5) < 1e-15);
  // -f(d phi/dx) at x0 = pi/2 on the plus sheet: phi' = -sin x.
  const auto d_delta = CosphereDistribution::derivative(CosphereDistribution::delta(std::numbers::pi / 2, Sheet::Plus));
  CHECK(std::abs(symbol_trace(d_delta, sym) - 1.0) < 1e-15);
}

TEST_CASE("leading-symbol trace vanishes on commutators of order-zero symbols") {
  std::mt19937_64 rng(9);
  const ClassicalSymbol a = random_symbol(0, 2, 3, 2, rng);
  const ClassicalSymbol b = random_symbol(0, 2, 3, 2, rng);
  const ClassicalSymbol c = commutator(a, b, 2);
  for (const auto& f : {CosphereDistribution::uniform_minus(), CosphereDistribution::delta(1.3, Sheet::Plus)}) {
    CHECK(std::abs(symbol_trace(f, c)) < 1e-12);
  }
}

TEST_CASE("component trace picks the requested degree") {
  WeightSpec spec;
  spec.sobolev_exponent = -0.5;
  const ClassicalSymbol a = weight_power_symbol(spec, 1, 2);
  CHECK(std::abs(component_trace(HalfInt::integer(-1), CosphereDistribution::uniform_both(), a) - 2.0) < 1e-15);
  CHECK(std::abs(component_trace(HalfInt::integer(-2), CosphereDistribution::uniform_both(), a)) < 1e-15);
}

}  // TEST_SUITE
