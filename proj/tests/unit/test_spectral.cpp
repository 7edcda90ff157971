#include <doctest.h>

#include <cmath>
#include <numbers>

#include "symcalc/error.hpp"
#include "symcalc/spectral.hpp"

using namespace symcalc;

namespace {

// sum_{k in Z} e^{-eps k^2} by Poisson summation, independent of any mode cutoff.
double theta_sum(double eps) {
  double dual = 0.0;
  for (int n = 1; n < 20; ++n) dual += 2.0 * std::exp(-std::numbers::pi * std::numbers::pi * n * n / eps);
  return std::sqrt(std::numbers::pi / eps) * (1.0 + dual);
}

}  // namespace

TEST_SUITE("spectral") {

TEST_CASE("heat trace of the identity against the theta function") {
  const int n = 400;
  const FourierMatrix id = quantize(identity_symbol(1, 0), n);
  const FourierMatrix q = weight_matrix(1.0, n, 1);
  for (double eps : {1e-2, 0.1, 1.0}) {
    // The quantization cutoff removes the zero mode.
    CHECK(heat_trace(id, q, eps).real() == doctest::Approx(theta_sum(eps) - 1.0).epsilon(1e-13));
  }
  CHECK(heat_trace(id, q, 1e-2).real() == doctest::Approx(16.72453850905516).epsilon(1e-13));
}

TEST_CASE("dense and block-diagonal weights agree") {
  const int n = 30;
  const FourierMatrix id = quantize(identity_symbol(2, 0), n);
  const FourierMatrix block = weight_matrix(1.0, n, 2);
  const FourierMatrix dense = FourierMatrix::dense(n, 2, block.to_dense());
  const double eps = 0.05;
  CHECK(std::abs(heat_trace(id, block, eps) - heat_trace(id, dense, eps)) < 1e-11);
}

TEST_CASE("asymptotic fit recovers sqrt(pi) and the finite part") {
  const int n = 2000;
  const FourierMatrix id = quantize(identity_symbol(1, 0), n);
  const std::vector<double> grid = log_spaced_grid(1e-4, 1e-2, 40);
  const HeatSweep sweep = heat_trace_sweep(id, weight_matrix(1.0, n, 1), grid);
  CHECK(sweep.warnings.empty());
  FitSpec spec;
  const AsymptoticFit fit = fit_expansion(sweep.samples, spec);
  REQUIRE(fit.exponents.size() == 1);
  CHECK(fit.exponents[0] == doctest::Approx(-0.5));
  CHECK(std::abs(fit.leading() - std::sqrt(std::numbers::pi)) < 1e-8);
  CHECK(std::abs(fit.finite_part + 1.0) < 1e-6);
}

TEST_CASE("log coefficient of an order -1 operator") {
  // Tr(|D|^{-1} e^{-eps D^2}) ~ -log(eps) + const, so b0 = -res_w / q = -1 for q = 2.
  const int n = 3000;
  WeightSpec spec;
  spec.sobolev_exponent = -0.5;
  const auto blocks = quantize_diagonal(weight_power_symbol(spec, 1, 2), n);
  const FourierMatrix a = FourierMatrix::block_diagonal(n, 1, blocks);
  const HeatSweep sweep = heat_trace_sweep(a, weight_matrix(1.0, n, 1), log_spaced_grid(1e-4, 1e-2, 30));
  FitSpec fit_spec;
  fit_spec.order = -1;
  const AsymptoticFit fit = fit_expansion(sweep.samples, fit_spec);
  CHECK(fit.has_log);
  CHECK(std::abs(fit.log_coefficient + 1.0) < 1e-5);
  // Mellin transform: sum_{k>=1} (2/k) e^{-eps k^2} = -log(eps) + gamma + sqrt(pi eps) + O(eps^{3/2}).
  CHECK(std::abs(fit.finite_part - std::numbers::egamma) < 1e-5);
}

TEST_CASE("conditional trace of 1/k^2 converges to pi^2/3") {
  const int n = 2000;
  std::vector<CMatrix> blocks;
  for (int k = -n; k <= n; ++k) blocks.push_back(CMatrix::Constant(1, 1, k == 0 ? 0.0 : 1.0 / (double(k) * k)));
  const ConditionalTrace t = conditional_trace(blocks);
  CHECK_FALSE(t.diverged);
  const double exact = std::numbers::pi * std::numbers::pi / 3.0;
  CHECK(std::abs(t.value - exact) < 2.0 / n);
  CHECK(std::abs(t.value + t.tail_estimate - exact) < 1e-5);
}

TEST_CASE("conditional trace flags a divergent diagonal") {
  const int n = 500;
  std::vector<CMatrix> blocks;
  for (int k = -n; k <= n; ++k) blocks.push_back(CMatrix::Constant(1, 1, k == 0 ? 0.0 : 1.0 / std::abs(double(k))));
  CHECK(conditional_trace(blocks).diverged);
}

TEST_CASE("matrix algebra on Fourier truncations") {
  const FourierMatrix w = weight_matrix(0.5, 5, 1);
  const FourierMatrix w2 = w * w;
  CHECK(std::abs(w2.diagonal_block(3)(0, 0) - 9.0) < 1e-14);
  CHECK(std::abs((w2 - weight_matrix(1.0, 5, 1)).trace()) < 1e-13);
  CHECK(windowed_norm(weight_matrix(1.0, 16, 1), ModeWindow::interior(16)) == doctest::Approx(64.0));
}

TEST_CASE("log-spaced grid") {
  const auto grid = log_spaced_grid(1e-4, 1e-2, 3);
  REQUIRE(grid.size() == 3);
  CHECK(grid[1] == doctest::Approx(1e-3));
  CHECK_THROWS_AS(log_spaced_grid(1e-2, 1e-4, 3), DomainError);
}

}  // TEST_SUITE
