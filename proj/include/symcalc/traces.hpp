#pragma once

#include <memory>
#include <optional>
#include <string>

#include "symcalc/symbol.hpp"

namespace symcalc {

/// Scalar function on the cosphere bundle of the circle: two copies of S^1 (xi = +1, xi = -1).
struct CosphereFunction {
  FourierSeries plus;   // 1x1
  FourierSeries minus;  // 1x1

  const FourierSeries& sheet(Sheet s) const { return s == Sheet::Plus ? plus : minus; }
  static CosphereFunction constant(Complex value);
  CosphereFunction derivative() const;
};

/// Linear functional on smooth functions on S*S^1, drawn from a closed vocabulary:
///   uniform_plus(phi)  = (1/2pi) int phi(x,+) dx
///   uniform_minus(phi) = (1/2pi) int phi(x,-) dx
///   uniform_both(phi)  = (1/2pi) int_{S*S^1} phi  (both sheets summed)
///   delta(x0,s)(phi)   = phi(x0, s)
///   mode(k,s)(phi)     = k-th Fourier coefficient of phi(., s)
///   derivative(f)(phi) = -f(d phi / dx)
/// each multiplied by a normalization factor.
class CosphereDistribution {
 public:
  enum class Kind { UniformPlus, UniformMinus, UniformBoth, Delta, Mode, Derivative };

  static CosphereDistribution uniform_plus();
  static CosphereDistribution uniform_minus();
  static CosphereDistribution uniform_both();
  static CosphereDistribution delta(double x0, Sheet sheet);
  static CosphereDistribution mode(int k, Sheet sheet);
  static CosphereDistribution derivative(const CosphereDistribution& inner);

  CosphereDistribution scaled(Complex factor) const;

  Kind kind() const { return kind_; }
  Complex normalization() const { return normalization_; }

  Complex operator()(const CosphereFunction& phi) const;

  /// CLI spelling: "uniform+", "uniform-", "uniform", "delta:x0:+", "mode:k:-", "d(...)".
  std::string name() const;

 private:
  CosphereDistribution(Kind kind) : kind_(kind) {}

  Kind kind_;
  double x0_ = 0.0;
  int k_ = 0;
  Sheet sheet_ = Sheet::Plus;
  Complex normalization_ = 1.0;
  std::shared_ptr<const CosphereDistribution> inner_;
};

/// (x, sheet) -> tr sigma_degree(x, sheet); zero when the degree is above the order
/// or off its lattice; DomainError when the degree is below the retained depth.
CosphereFunction component_trace_function(const ClassicalSymbol& a, HalfInt degree);

/// Local residue formula on the circle:
///   res_w A = (1/2pi) int_{S^1} tr[sigma_{-1}(x,+) + sigma_{-1}(x,-)] dx.
/// Zero for non-integer order or order < -1. DomainError if the degree -1
/// component was cut off by the retained depth.
Complex wodzicki_residue(const ClassicalSymbol& a);

/// Tr^f(A) = f(tr sigma_0^A) for order(A) <= 0; zero for negative order.
Complex symbol_trace(const CosphereDistribution& f, const ClassicalSymbol& a);

/// Tr_r^f(A) = f(tr sigma_r^A) on the algebra of order <= p, for p < 0 and 2p <= r <= p.
/// The bound p defaults to order(A).
Complex component_trace(HalfInt r, const CosphereDistribution& f, const ClassicalSymbol& a,
                        std::optional<HalfInt> p = std::nullopt);

/// Leading heat coefficient of tr(A e^{-eps Q}) for a weight of order q with scalar
/// leading symbol f_Q (default 1), n = 1:
///   c * int_{S*S^1} tr(sigma_a(A)) f_Q^{-(1+a)/q},
///   c = Gamma((1+a)/q) / (2 pi q)   (a != -1),   c = 1/(2 pi)  (a = -1).
/// The fiber trace inside the integral is the only fiber factor.
Complex predicted_a0(const ClassicalSymbol& a, double q,
                     const std::optional<CosphereFunction>& leading_weight = std::nullopt);

/// The same constant with an extra factor dim(E), as literally printed alongside the
/// proposition; kept only to show it disagrees with the heat-trace oracle.
Complex predicted_a0_with_fiber_factor(const ClassicalSymbol& a, double q);

/// Log coefficient b0(A, Q) = -res_w(A) / q.
Complex predicted_b0(const ClassicalSymbol& a, double q);

}  // namespace symcalc
