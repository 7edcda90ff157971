#include "symcalc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <sstream>
#include <thread>

#include "symcalc/error.hpp"
#include "symcalc/form_algebra.hpp"
#include "symcalc/lie_algebra.hpp"
#include "symcalc/loop_geometry.hpp"
#include "symcalc/spectral.hpp"
#include "symcalc/traces.hpp"

namespace symcalc {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

CheckResult check(int criterion, std::string name, double value, double tolerance, bool pass,
                  std::string detail = {}) {
  CheckResult r;
  r.criterion = criterion;
  r.name = std::move(name);
  r.value = value;
  r.tolerance = tolerance;
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

CheckResult at_most(int criterion, std::string name, double value, double tolerance, std::string detail = {}) {
  const bool pass = std::isfinite(value) && value <= tolerance;
  return check(criterion, std::move(name), value, tolerance, pass, std::move(detail));
}

CheckResult at_least(int criterion, std::string name, double value, double bound, std::string detail = {}) {
  const bool pass = std::isfinite(value) && value >= bound;
  return check(criterion, std::move(name), value, bound, pass, std::move(detail));
}

CheckResult timed(CheckResult r) {
  r.timing = true;
  return r;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string fmt(Complex v) {
  std::ostringstream os;
  os.precision(10);
  os << v.real();
  if (v.imag() != 0.0) os << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
  return os.str();
}

// --- 1, 2, 3: heat-coefficient oracles -------------------------------------

AsymptoticFit identity_heat_fit(int fiber_dim, int mode_cutoff) {
  const ClassicalSymbol id = identity_symbol(fiber_dim, 0);
  const FourierMatrix a = quantize(id, mode_cutoff);
  const FourierMatrix q = weight_matrix(1.0, mode_cutoff, fiber_dim);
  const std::vector<double> grid = log_spaced_grid(1e-4, 1e-2, 40);
  const HeatSweep sweep = heat_trace_sweep(a, q, grid);
  FitSpec spec;
  spec.order = 0;
  spec.weight_order = 2.0;
  return fit_expansion(sweep.samples, spec);
}

std::vector<CheckResult> criterion_scalar_heat() {
  const auto start = std::chrono::steady_clock::now();
  const AsymptoticFit fit = identity_heat_fit(1, 2000);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const Complex predicted = predicted_a0(identity_symbol(1, 0), 2.0);
  return {
      at_most(1, "heat a0 of Id vs sqrt(pi), N=2000, 40 eps in [1e-4,1e-2]", std::abs(fit.leading() - kSqrtPi),
              1e-3, "fitted " + fmt(fit.leading())),
      at_most(1, "predicted_a0(Id, q=2) vs sqrt(pi)", std::abs(predicted - kSqrtPi), 1e-12, fmt(predicted)),
      timed(at_most(1, "heat sweep + fit runtime [s]", seconds, 10.0)),
  };
}

std::vector<CheckResult> criterion_fiber_convention() {
  const AsymptoticFit fit = identity_heat_fit(3, 2000);
  const ClassicalSymbol id3 = identity_symbol(3, 0);
  const Complex predicted = predicted_a0(id3, 2.0);
  const Complex with_factor = predicted_a0_with_fiber_factor(id3, 2.0);
  const double gap_implemented = std::abs(fit.leading() - predicted);
  const double gap_with_factor = std::abs(fit.leading() - with_factor);
  return {
      at_most(2, "heat a0 of Id_3 vs 3 sqrt(pi)", std::abs(fit.leading() - 3.0 * kSqrtPi), 1e-3,
              "fitted " + fmt(fit.leading())),
      at_most(2, "predicted_a0(Id_3) vs 3 sqrt(pi)", std::abs(predicted - 3.0 * kSqrtPi), 1e-12, fmt(predicted)),
      at_most(2, "fit vs predicted_a0 (no dim factor)", gap_implemented, 1e-3),
      check(2, "dim-factor constant 9 sqrt(pi) rejected by the fit", gap_with_factor, 1.0, gap_with_factor > 1.0,
            "predicted with dim(E) factor " + fmt(with_factor) + ", fit misses it by " + fmt(gap_with_factor)),
  };
}

std::vector<CheckResult> criterion_log_coefficient() {
  const ClassicalSymbol inv_sqrt = weight_power_symbol({-0.5, 1.0}, 1, 2);
  const int n = 40000;
  const FourierMatrix a = quantize(inv_sqrt, n);
  const FourierMatrix q = weight_matrix(0.5, n, 1);
  const std::vector<double> grid = log_spaced_grid(1e-3, 1e-1, 40);
  const HeatSweep sweep = heat_trace_sweep(a, q, grid);
  FitSpec spec;
  spec.order = -1;
  spec.weight_order = 1.0;
  const AsymptoticFit fit = fit_expansion(sweep.samples, spec);
  const Complex predicted = predicted_b0(inv_sqrt, 1.0);
  return {
      at_most(3, "res_w(Lambda^-1) vs 2", std::abs(wodzicki_residue(inv_sqrt) - 2.0), 1e-12),
      at_most(3, "fitted b0 of Lambda^-1 under Q=Lambda vs predicted -2", std::abs(fit.log_coefficient - predicted),
              1e-3, "fitted " + fmt(fit.log_coefficient) + ", predicted " + fmt(predicted)),
  };
}

// --- 4: trace properties ----------------------------------------------------

std::vector<CheckResult> criterion_trace_properties(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::vector<CosphereDistribution> functionals = {
      CosphereDistribution::uniform_plus(), CosphereDistribution::uniform_minus(),
      CosphereDistribution::delta(0.7, Sheet::Plus), CosphereDistribution::delta(2.1, Sheet::Minus),
      CosphereDistribution::mode(1, Sheet::Plus), CosphereDistribution::mode(-2, Sheet::Minus)};
  std::vector<double> worst_symbol(functionals.size(), 0.0);
  double worst_residue = 0.0;
  double worst_residue_mixed = 0.0;
  double residue_scale = 0.0;
  const int pairs = 100;
  for (int p = 0; p < pairs; ++p) {
    const int d = 1 + p % 3;
    const ClassicalSymbol a = random_symbol(0, d, 3, 2, rng);
    const ClassicalSymbol b = random_symbol(0, d, 3, 2, rng);
    const ClassicalSymbol ab = commutator(a, b, 2);
    for (std::size_t i = 0; i < functionals.size(); ++i) {
      worst_symbol[i] = std::max(worst_symbol[i], std::abs(symbol_trace(functionals[i], ab)));
    }
    worst_residue = std::max(worst_residue, std::abs(wodzicki_residue(ab)));
    residue_scale = std::max(residue_scale, std::abs(wodzicki_residue(compose(a, b, 2))));

    // Orders 1 and -1 put the residue on the second level of the product.
    const ClassicalSymbol c = random_symbol(1, d, 2, 3, rng);
    const ClassicalSymbol e = random_symbol(-1, d, 2, 3, rng);
    worst_residue_mixed = std::max(worst_residue_mixed, std::abs(wodzicki_residue(commutator(c, e, 2))));
  }
  std::vector<CheckResult> out;
  for (std::size_t i = 0; i < functionals.size(); ++i) {
    out.push_back(at_most(4, "|Tr^f([A,B])| over 100 pairs, f = " + functionals[i].name(), worst_symbol[i],
                          1e-10));
  }
  out.push_back(at_most(4, "|res_w([A,B])| over 100 order-0 pairs", worst_residue, 1e-8,
                        "largest |res_w(AB)| " + fmt(residue_scale)));
  out.push_back(at_most(4, "|res_w([A,B])| over 100 (order 1, order -1) pairs", worst_residue_mixed, 1e-8));
  return out;
}

// --- 5: quantization vs composition ----------------------------------------

std::vector<CheckResult> criterion_composition(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  const ClassicalSymbol a = random_symbol(0, 1, 3, 4, rng);
  const ClassicalSymbol b = random_symbol(0, 1, 3, 4, rng);
  const int n = 512;
  const ModeWindow window = ModeWindow::interior(n);
  const FourierMatrix product = quantize(a, n) * quantize(b, n);
  std::vector<double> defects;
  for (int depth = 1; depth <= 4; ++depth) {
    defects.push_back(windowed_norm(quantize(compose(a, b, depth), n) - product, window));
  }
  bool monotone = true;
  std::string trail;
  for (std::size_t i = 0; i < defects.size(); ++i) {
    if (i > 0 && !(defects[i] < defects[i - 1])) monotone = false;
    trail += (i ? ", " : "") + fmt(defects[i]);
  }
  return {
      check(5, "composition defect strictly decreasing for depth 1..4 (N=512)", monotone ? 1.0 : 0.0, 1.0, monotone,
            "defects " + trail),
      at_most(5, "composition defect at depth 4, modes N/8..N/2", defects.back(), 1e-6),
  };
}

// --- 6: gauge invariance ---------------------------------------------------

std::vector<CheckResult> criterion_gauge(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x27d4eb2fULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = 256;
  const double eps = 1e-2;
  const FourierMatrix a = quantize(random_symbol(0, 1, 3, 2, rng), n);
  const FourierMatrix q = weight_matrix(1.0, n, 1);
  const Complex reference = heat_trace(a, q, eps);
  const int size = 2 * n + 1;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix noise(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) noise(i, j) = normal(rng);
    // Random real invertible element at bounded distance from the identity.
    const CMatrix g = CMatrix::Identity(size, size) + (0.3 / std::sqrt(static_cast<double>(size))) * noise;
    const CMatrix g_inv = g.partialPivLu().inverse();
    const FourierMatrix ga = FourierMatrix::dense(n, 1, g_inv * a.to_dense() * g);
    const FourierMatrix gq = FourierMatrix::dense(n, 1, g_inv * q.to_dense() * g);
    worst = std::max(worst, std::abs(heat_trace(ga, gq, eps) - reference) / std::abs(reference));
  }
  return {at_most(6, "gauge invariance, 20 random conjugations, N=256, eps=1e-2 (relative)", worst, 1e-12,
                  "reference trace " + fmt(reference))};
}

// --- 7: loop-group suite ---------------------------------------------------

struct LoopPair {
  LieAlgebra g = LieAlgebra::su2();
  LoopElement u;
  LoopElement v;
};

LoopPair random_loop_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  LoopElement u = LoopElement::random_real(3, 4, rng);
  LoopElement v = LoopElement::random_real(3, 4, rng);
  return {LieAlgebra::su2(), std::move(u), std::move(v)};
}

double sheet_gap(const HomogeneousComponent& c, const FourierSeries& target) {
  return std::max((c.plus - target).max_coefficient_norm(), (c.minus - target).max_coefficient_norm());
}

std::vector<CheckResult> criterion_loop_group(std::uint64_t seed) {
  const LoopPair in = random_loop_pair(seed);
  const LieAlgebra& g = in.g;
  const Connection levi_civita{ConnectionKind::LeviCivita, 0.5, 3};
  const Connection conjugation{ConnectionKind::Conjugation, 0.5, 3};
  std::vector<CheckResult> out;

  const ClassicalSymbol theta_u = levi_civita(g, in.u);
  out.push_back(at_most(7, "(a) sigma_0(theta^1/2(U)) = ad_U on both sheets",
                        sheet_gap(theta_u.component(0), ad_series(g, in.u)), 1e-12));
  const ClassicalSymbol theta_tilde_u = conjugation(g, in.u);
  out.push_back(at_most(7, "(a) sigma_0(theta~^1/2(U)) = ad_U on both sheets",
                        sheet_gap(theta_tilde_u.component(0), ad_series(g, in.u)), 1e-12));

  const ClassicalSymbol flat = curvature(g, conjugation, in.u, in.v);
  out.push_back(at_most(7, "(b) all components of Omega~^1/2(U,V), depth 3", flat.max_component_norm(), 1e-8));

  const ClassicalSymbol omega = curvature(g, levi_civita, in.u, in.v);
  out.push_back(at_most(7, "(c) sigma_0(Omega^1/2(U,V))", omega.component(0).norm(), 1e-10));
  out.push_back(at_least(7, "(c) degree -1 part of Omega^1/2(U,V) is nonzero", omega.component(1).norm(), 1e-6));

  const Complex residue = wodzicki_residue(omega);
  out.push_back(at_most(7, "(d) res_w(Ω^{1/2}(U,V)) ≈ 0", std::abs(residue), 1e-8));

  // Residue chain for theta^1/2(U): the ad_U and conjugated terms have no degree -1
  // trace, and the lowered term vanishes under tr because its leading part is scalar x ad.
  const ClassicalSymbol q_minus = weight_power_symbol({-0.5, 1.0}, g.dim(), 3);
  const ClassicalSymbol lowered = compose(q_minus, ad_symbol(g, sobolev_apply(0.5, in.u), 3), 3);
  const double chain_gap = std::abs(wodzicki_residue(theta_u) + 0.5 * wodzicki_residue(lowered));
  out.push_back(at_most(7, "(d) res_w(theta^1/2(U)) = -1/2 res_w(Q^-1/2 ad_{Q^1/2 U})", chain_gap, 1e-12));
  out.push_back(at_most(7, "(d) res_w(Q^-1/2 ad_{Q^1/2 U}) = 0", std::abs(wodzicki_residue(lowered)), 1e-12));

  // (e) symbol side vs the exact operator's fiber-traced diagonal.
  const Complex symbol_side = weighted_first_chern(g, in.u, in.v, 3, 0.5);
  const int n = 4096;
  const std::vector<CMatrix> diagonal = curvature_diagonal_blocks(g, levi_civita, in.u, in.v, n);
  const ConditionalTrace spectral = conditional_trace(diagonal);
  const Complex spectral_value = spectral.value + spectral.tail_estimate;
  // tr sigma_-1 vanishes identically here, so both sides are zero; measure the gap
  // against the absolute mass of the summed diagonal instead of the (zero) values.
  double diagonal_mass = 0.0;
  for (const auto& block : diagonal) diagonal_mass += std::abs(block.trace());
  const double scale = std::max({std::abs(symbol_side), std::abs(spectral_value), diagonal_mass});
  out.push_back(at_most(7, "(e) weighted_first_chern vs conditional trace at N=4096 (relative)",
                        std::abs(symbol_side - spectral_value) / scale, 1e-2,
                        "symbol " + fmt(symbol_side) + ", spectral " + fmt(spectral_value) +
                            ", sum |tr Omega_mm| " + fmt(diagonal_mass)));
  out.push_back(check(7, "(e) conditional trace partial sums converge", spectral.diverged ? 1.0 : 0.0, 0.0,
                      !spectral.diverged));
  const CosphereFunction tr_minus_one = component_trace_function(omega, HalfInt::integer(-1));
  out.push_back(at_most(7, "(e) tr sigma_-1(Omega^1/2) vanishes pointwise (relative to |sigma_-1|)",
                        std::max(tr_minus_one.plus.norm(), tr_minus_one.minus.norm()) / omega.component(1).norm(),
                        1e-12));
  // Diagonal blocks at m = +-N against sum_j sigma_-j(mode 0, sign m) |m|^-j.
  for (const int m : {n, -n}) {
    const Sheet sheet = m > 0 ? Sheet::Plus : Sheet::Minus;
    CMatrix predicted = CMatrix::Zero(g.dim(), g.dim());
    for (int j = 1; j <= omega.depth(); ++j) {
      predicted += omega.component(j).sheet(sheet).coefficient(0) * std::pow(static_cast<double>(n), -j);
    }
    const CMatrix& actual = diagonal[m + n];
    out.push_back(at_most(7, std::string("(e) exact diagonal block at m=") + (m > 0 ? "+N" : "-N") +
                                 " vs symbol expansion (relative)",
                          (actual - predicted).norm() / actual.norm(), 1e-2,
                          "tr operator " + fmt(actual.trace()) + ", tr symbol " + fmt(predicted.trace())));
  }
  return out;
}

// --- 8: closedness ---------------------------------------------------------

std::vector<CheckResult> criterion_closedness(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xc2b2ae3d27d4eb4fULL);
  const LieAlgebra g = LieAlgebra::su2();
  const LoopTwoForm chern = [&](const LoopElement& u, const LoopElement& v) {
    return weighted_first_chern(g, u, v, 3, 0.5);
  };
  const auto minus_one_size = [&](const LoopElement& u, const LoopElement& v) {
    return curvature(g, {ConnectionKind::LeviCivita, 0.5, 3}, u, v).component(1).norm();
  };
  const LoopTwoForm leading = [&](const LoopElement& u, const LoopElement& v) {
    return symbol_trace(CosphereDistribution::uniform_plus(),
                        curvature(g, {ConnectionKind::LeviCivita, 0.5, 3}, u, v));
  };
  double worst = 0.0;
  double worst_leading = 0.0;
  for (int t = 0; t < 50; ++t) {
    const LoopElement u = LoopElement::random_real(3, 2, rng);
    const LoopElement v = LoopElement::random_real(3, 2, rng);
    const LoopElement w = LoopElement::random_real(3, 2, rng);
    // Scale: size of the degree -1 symbols whose fiber traces enter beta.
    const double scale =
        std::max({minus_one_size(u, v), minus_one_size(u, w), minus_one_size(v, w)});
    worst = std::max(worst, std::abs(ce_differential(g, chern, u, v, w)) / scale);
    worst_leading = std::max(worst_leading, std::abs(ce_differential(g, leading, u, v, w)));
  }
  std::vector<CheckResult> out = {
      at_most(8, "|d weighted_first_chern| over 50 triples (relative to |sigma_-1(Omega)|)", worst, 1e-6),
      at_most(8, "|d Tr^f(Omega^1/2)| over 50 triples (sigma_0 forms vanish)", worst_leading, 1e-10),
  };

  // Finite left-invariant model.
  auto family = [&](const LieAlgebra& algebra, int fiber, bool traceless, double step) {
    std::vector<LeftInvariantConnection> base(3);
    for (auto& c : base) {
      for (int i = 0; i < algebra.dim(); ++i) c.generators.push_back(random_anti_hermitian(fiber, traceless, rng));
    }
    std::vector<LeftInvariantConnection> points;
    for (int i = -2; i <= 2; ++i) {
      const double t = 0.3 + i * step;
      points.push_back(base[0] + base[1].scaled(t) + base[2].scaled(t * t * t));
    }
    return points;
  };
  auto random_vectors = [&](int dim, int count) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<CVector> xs(count, CVector(dim));
    for (auto& x : xs)
      for (int i = 0; i < dim; ++i) x(i) = normal(rng);
    return xs;
  };
  const std::function<Complex(const CMatrix&)> trace = [](const CMatrix& m) { return m.trace(); };

  const LieAlgebra su2 = LieAlgebra::su2();
  const auto su2_family = family(su2, 2, false, 1e-2);
  const auto xs1 = random_vectors(3, 2);
  const TransgressionResult k1 = transgression_check(su2, su2_family, 1e-2, trace, 1, xs1);
  out.push_back(at_most(8, "transgression residual, su(2) tangent, u(2) values, k=1, 5-point grid", k1.residual, 1e-4,
                        "lhs " + fmt(k1.lhs) + ", rhs " + fmt(k1.rhs) +
                            (k1.grid_too_coarse ? ", grid flagged coarse" : "")));

  const LieAlgebra su3 = LieAlgebra::su(3);
  const auto su3_family = family(su3, 3, false, 1e-2);
  const auto xs2 = random_vectors(8, 4);
  const TransgressionResult k2 = transgression_check(su3, su3_family, 1e-2, trace, 2, xs2);
  out.push_back(at_most(8, "transgression residual, su(3) tangent, u(3) values, k=2", k2.residual,
                        1e-4 * std::max(1.0, k2.lhs), "lhs " + fmt(k2.lhs) + ", rhs " + fmt(k2.rhs)));

  // Abelian family between two flat (commuting) connections.
  const LieAlgebra abelian = LieAlgebra::abelian(3);
  std::vector<LeftInvariantConnection> flat(5);
  {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<CMatrix> start, end;
    for (int i = 0; i < 3; ++i) {
      CMatrix s = CMatrix::Zero(2, 2), e = CMatrix::Zero(2, 2);
      for (int j = 0; j < 2; ++j) {
        s(j, j) = Complex(0.0, normal(rng));
        e(j, j) = Complex(0.0, normal(rng));
      }
      start.push_back(s);
      end.push_back(e);
    }
    for (int p = 0; p < 5; ++p) {
      const double t = 0.5 + (p - 2) * 1e-2;
      for (int i = 0; i < 3; ++i) flat[p].generators.push_back((1.0 - t) * start[i] + t * end[i]);
    }
  }
  const TransgressionResult k_flat = transgression_check(abelian, flat, 1e-2, trace, 1, random_vectors(3, 2));
  out.push_back(at_most(8, "transgression, interpolated flat abelian connections: both sides",
                        std::max(k_flat.lhs, k_flat.rhs), 1e-12));

  // d o d = 0 on loop 1-forms.
  double worst_dd = 0.0;
  for (int t = 0; t < 5; ++t) {
    const LoopElement u = LoopElement::random_real(3, 2, rng);
    const LoopElement v = LoopElement::random_real(3, 2, rng);
    const LoopElement w = LoopElement::random_real(3, 2, rng);
    const LoopElement fixed = LoopElement::random_real(3, 2, rng);
    const LoopOneForm linear = [&](const LoopElement& x) { return h_s_inner(g, 0.5, fixed, x); };
    const LoopTwoForm d_linear = [&](const LoopElement& x, const LoopElement& y) {
      return ce_differential(g, linear, x, y);
    };
    worst_dd = std::max(worst_dd, std::abs(ce_differential(g, d_linear, u, v, w)));
  }
  out.push_back(at_most(8, "d(d alpha) = 0 for linear loop 1-forms", worst_dd, 1e-10));
  return out;
}

// --- 9, 10: pullback identity ----------------------------------------------

std::vector<CheckResult> criterion_pullback(std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x165667b19e3779f9ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<CheckResult> out;
  struct Case {
    const char* name;
    int fiber;
    bool traceless;
  };
  for (const Case& c : {Case{"su(2)", 2, true}, Case{"u(3)", 3, false}}) {
    for (int k = 1; k <= 2; ++k) {
      double worst = 0.0;
      for (int trial = 0; trial < 5; ++trial) {
        const AlgebraValued2Form omega = random_two_form(4, c.fiber, c.traceless, rng);
        std::vector<CVector> xs(2 * k, CVector(4));
        for (auto& x : xs)
          for (int i = 0; i < 4; ++i) x(i) = normal(rng);
        const Complex direct = wedge_power_evaluate(omega, k, xs).trace();
        const Complex pulled =
            ck_f_pointwise(LoopTwoFormField::constant(omega), CosphereDistribution::uniform_plus(), k, xs);
        worst = std::max(worst, std::abs(pulled - direct) / std::max(1.0, std::abs(direct)));
      }
      out.push_back(at_most(9, std::string("c_k^uniform on constant loops = tr(Omega^k), ") + c.name +
                                   ", k=" + std::to_string(k),
                            worst, 1e-12));
    }
  }
  return out;
}

}  // namespace

int thread_cap_from_environment() {
  const unsigned hardware = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SYMCALC_THREADS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1) return static_cast<int>(value);
  }
  return static_cast<int>(hardware);
}

ClassicalSymbol random_symbol(int order, int fiber_dim, int band, int depth, std::mt19937_64& rng,
                              double decay) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto series = [&] {
    FourierSeries s(fiber_dim, band);
    for (int k = -band; k <= band; ++k) {
      CMatrix m(fiber_dim, fiber_dim);
      for (int i = 0; i < fiber_dim; ++i)
        for (int j = 0; j < fiber_dim; ++j) m(i, j) = std::pow(decay, std::abs(k)) * Complex(normal(rng), normal(rng));
      s.at(k) = m;
    }
    return s;
  };
  std::vector<HomogeneousComponent> components;
  const HalfInt top = HalfInt::integer(order);
  for (int level = 0; level <= depth; ++level) components.push_back({top - level, series(), series()});
  return ClassicalSymbol(top, std::move(components));
}

std::vector<CheckResult> check_criterion(int criterion, std::uint64_t seed) {
  switch (criterion) {
    case 1: return criterion_scalar_heat();
    case 2: return criterion_fiber_convention();
    case 3: return criterion_log_coefficient();
    case 4: return criterion_trace_properties(seed);
    case 5: return criterion_composition(seed);
    case 6: return criterion_gauge(seed);
    case 7: return criterion_loop_group(seed);
    case 8: return criterion_closedness(seed);
    case 9: return criterion_pullback(seed);
    case 10: {
      const auto covered = criterion_pullback(seed);
      const bool ok = all_passed(covered);
      return {check(10, "topological statements: covered through the finite-rank pullback (criterion 9)",
               ok ? 1.0 : 0.0, 1.0, ok, "no desk-scale numeric content beyond criterion 9")};
    }
    default: throw DomainError("unknown acceptance criterion " + std::to_string(criterion));
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"traces", "composition", "loopgroup", "chern", "all"};
  return names;
}

std::vector<int> suite_criteria(const std::string& suite) {
  static const std::map<std::string, std::vector<int>> table = {
      {"traces", {1, 2, 3, 4, 6}},
      {"composition", {5}},
      {"loopgroup", {7}},
      {"chern", {8, 9, 10}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}},
  };
  const auto it = table.find(suite);
  if (it == table.end()) throw DomainError("unknown verification suite '" + suite + "'");
  return it->second;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& options) {
  const std::vector<int> criteria = suite_criteria(suite);
  const int cap = options.threads > 0 ? options.threads : thread_cap_from_environment();
  const int workers = std::max(1, std::min<int>(cap, static_cast<int>(criteria.size())));
  std::vector<std::vector<CheckResult>> results(criteria.size());
  std::vector<std::exception_ptr> errors(criteria.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < criteria.size(); i = next++) {
      try {
        results[i] = check_criterion(criteria[i], options.seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<CheckResult> flat;
  for (auto& r : results) flat.insert(flat.end(), r.begin(), r.end());
  return flat;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace symcalc
