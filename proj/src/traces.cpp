#include "symcalc/traces.hpp"

#include <cmath>

#include "symcalc/error.hpp"

namespace symcalc {

CosphereFunction CosphereFunction::constant(Complex value) {
  return {FourierSeries::scalar_constant(value), FourierSeries::scalar_constant(value)};
}

CosphereFunction CosphereFunction::derivative() const {
  return {plus.derivative(), minus.derivative()};
}

CosphereDistribution CosphereDistribution::uniform_plus() { return {Kind::UniformPlus}; }
CosphereDistribution CosphereDistribution::uniform_minus() { return {Kind::UniformMinus}; }
CosphereDistribution CosphereDistribution::uniform_both() { return {Kind::UniformBoth}; }

CosphereDistribution CosphereDistribution::delta(double x0, Sheet sheet) {
  CosphereDistribution f(Kind::Delta);
  f.x0_ = x0;
  f.sheet_ = sheet;
  return f;
}

CosphereDistribution CosphereDistribution::mode(int k, Sheet sheet) {
  CosphereDistribution f(Kind::Mode);
  f.k_ = k;
  f.sheet_ = sheet;
  return f;
}

CosphereDistribution CosphereDistribution::derivative(const CosphereDistribution& inner) {
  CosphereDistribution f(Kind::Derivative);
  f.inner_ = std::make_shared<const CosphereDistribution>(inner);
  return f;
}

CosphereDistribution CosphereDistribution::scaled(Complex factor) const {
  CosphereDistribution f = *this;
  f.normalization_ *= factor;
  return f;
}

Complex CosphereDistribution::operator()(const CosphereFunction& phi) const {
  Complex value;
  switch (kind_) {
    case Kind::UniformPlus:
      value = phi.plus.scalar_coefficient(0);
      break;
    case Kind::UniformMinus:
      value = phi.minus.scalar_coefficient(0);
      break;
    case Kind::UniformBoth:
      value = phi.plus.scalar_coefficient(0) + phi.minus.scalar_coefficient(0);
      break;
    case Kind::Delta:
      value = phi.sheet(sheet_).evaluate(x0_)(0, 0);
      break;
    case Kind::Mode:
      value = phi.sheet(sheet_).scalar_coefficient(k_);
      break;
    case Kind::Derivative:
      value = -(*inner_)(phi.derivative());
      break;
  }
  return normalization_ * value;
}

std::string CosphereDistribution::name() const {
  const char* s = sheet_ == Sheet::Plus ? "+" : "-";
  std::string base;
  switch (kind_) {
    case Kind::UniformPlus: base = "uniform+"; break;
    case Kind::UniformMinus: base = "uniform-"; break;
    case Kind::UniformBoth: base = "uniform"; break;
    case Kind::Delta: base = "delta:" + std::to_string(x0_) + ":" + s; break;
    case Kind::Mode: base = "mode:" + std::to_string(k_) + ":" + s; break;
    case Kind::Derivative: base = "d(" + inner_->name() + ")"; break;
  }
  if (normalization_ != Complex(1.0)) {
    base = "(" + std::to_string(normalization_.real()) + "," +
           std::to_string(normalization_.imag()) + ")*" + base;
  }
  return base;
}

CosphereFunction component_trace_function(const ClassicalSymbol& a, HalfInt degree) {
  if (const auto* c = a.component_of_degree(degree)) return {c->plus.trace(), c->minus.trace()};
  if (a.degree_is_truncated(degree)) {
    throw DomainError("symbol of order " + a.order().to_string() + " and depth " +
                      std::to_string(a.depth()) + " does not carry degree " + degree.to_string());
  }
  return CosphereFunction::constant(0.0);
}

Complex wodzicki_residue(const ClassicalSymbol& a) {
  const HalfInt minus_one = HalfInt::integer(-1);
  if (!a.order().is_integer() || a.order() < minus_one) return 0.0;
  const CosphereFunction tr = component_trace_function(a, minus_one);
  return CosphereDistribution::uniform_both()(tr);
}

Complex symbol_trace(const CosphereDistribution& f, const ClassicalSymbol& a) {
  if (a.order() > HalfInt{}) {
    throw DomainError("symbol_trace: order " + a.order().to_string() + " is positive");
  }
  if (a.order() < HalfInt{}) return 0.0;
  return f(component_trace_function(a, HalfInt{}));
}

Complex component_trace(HalfInt r, const CosphereDistribution& f, const ClassicalSymbol& a,
                        std::optional<HalfInt> p) {
  const HalfInt bound = p.value_or(a.order());
  if (!(bound < HalfInt{})) {
    throw DomainError("component_trace: the order bound p must be negative");
  }
  if (a.order() > bound) {
    throw DomainError("component_trace: order " + a.order().to_string() + " exceeds bound " +
                      bound.to_string());
  }
  if (r > bound || r < bound + bound) {
    throw DomainError("component_trace: r = " + r.to_string() + " outside [" +
                      (bound + bound).to_string() + ", " + bound.to_string() + "]");
  }
  return f(component_trace_function(a, r));
}

namespace {

/// (1/2pi) int tr(sigma)(x,s) w(x,s)^{-power} dx on one sheet.
Complex weighted_zero_mode(const FourierSeries& trace_series, const FourierSeries& weight,
                           double power) {
  if (weight.band() == 0) {
    const double w = weight.scalar_coefficient(0).real();
    return trace_series.scalar_coefficient(0) * std::pow(w, -power);
  }
  // Trapezoid rule is spectrally accurate for smooth periodic integrands; refine until stable.
  Complex previous = 0.0;
  for (int points = 8 * (trace_series.band() + weight.band() + 1); points <= (1 << 22);
       points *= 2) {
    Complex sum = 0.0;
    for (int i = 0; i < points; ++i) {
      const double x = kTwoPi * i / points;
      const double w = weight.evaluate(x)(0, 0).real();
      if (w <= 0.0) throw DomainError("predicted_a0: leading weight symbol must be positive");
      sum += trace_series.evaluate(x)(0, 0) * std::pow(w, -power);
    }
    sum /= static_cast<double>(points);
    if (std::abs(sum - previous) <= 1e-14 * (1.0 + std::abs(sum))) return sum;
    previous = sum;
  }
  throw NumericalError("predicted_a0: weighted integral did not converge");
}

}  // namespace

Complex predicted_a0(const ClassicalSymbol& a, double q,
                     const std::optional<CosphereFunction>& leading_weight) {
  if (q <= 0.0) throw DomainError("predicted_a0: weight order must be positive");
  if (!a.order().is_integer()) throw DomainError("predicted_a0: order must be an integer");
  const int order = a.order().as_integer();
  if (order < -1) throw DomainError("predicted_a0: order must be at least -1 on the circle");
  const CosphereFunction tr = component_trace_function(a, a.order());
  const CosphereFunction weight = leading_weight.value_or(CosphereFunction::constant(1.0));
  const double power = (1.0 + order) / q;
  // (1/2pi) int_{S*S^1} tr(sigma_a) f^{-power}
  const Complex integral = weighted_zero_mode(tr.plus, weight.plus, power) +
                           weighted_zero_mode(tr.minus, weight.minus, power);
  if (order == -1) return integral;
  return std::tgamma(power) / q * integral;
}

Complex predicted_a0_with_fiber_factor(const ClassicalSymbol& a, double q) {
  return static_cast<double>(a.fiber_dim()) * predicted_a0(a, q);
}

Complex predicted_b0(const ClassicalSymbol& a, double q) {
  if (q <= 0.0) throw DomainError("predicted_b0: weight order must be positive");
  return -wodzicki_residue(a) / q;
}

}  // namespace symcalc
