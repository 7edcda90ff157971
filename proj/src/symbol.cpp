#include "symcalc/symbol.hpp"

#include <algorithm>
#include <cmath>

#include "symcalc/error.hpp"

namespace symcalc {

HalfInt HalfInt::from_double(double value) {
  const double twice = 2.0 * value;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-12) {
    throw DomainError("order " + std::to_string(value) + " is not a multiple of 1/2");
  }
  return HalfInt(static_cast<int>(rounded));
}

int HalfInt::as_integer() const {
  if (!is_integer()) throw DomainError("half-integer " + to_string() + " used as an integer");
  return twice_ / 2;
}

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

bool HomogeneousComponent::is_zero(double tol) const {
  return plus.norm() <= tol && minus.norm() <= tol;
}

ClassicalSymbol::ClassicalSymbol(HalfInt order, int fiber_dim, int band, int depth)
    : order_(order), fiber_dim_(fiber_dim), band_(band) {
  if (depth < 0) throw DomainError("ClassicalSymbol: negative depth");
  if (fiber_dim < 1) throw DomainError("ClassicalSymbol: fiber dimension must be positive");
  components_.reserve(depth + 1);
  for (int j = 0; j <= depth; ++j) {
    components_.push_back(
        {order - j, FourierSeries(fiber_dim, band), FourierSeries(fiber_dim, band)});
  }
}

ClassicalSymbol::ClassicalSymbol(HalfInt order, std::vector<HomogeneousComponent> components)
    : order_(order), components_(std::move(components)) {
  if (components_.empty()) throw DomainError("ClassicalSymbol: needs at least one component");
  fiber_dim_ = components_.front().plus.dim();
  band_ = 0;
  for (std::size_t j = 0; j < components_.size(); ++j) {
    const auto& c = components_[j];
    if (c.degree != order - static_cast<int>(j)) {
      throw DomainError("ClassicalSymbol: component " + std::to_string(j) + " has degree " +
                        c.degree.to_string() + ", expected " +
                        (order - static_cast<int>(j)).to_string());
    }
    if (c.plus.dim() != fiber_dim_ || c.minus.dim() != fiber_dim_) {
      throw DomainError("ClassicalSymbol: components must share one fiber dimension");
    }
    band_ = std::max({band_, c.plus.band(), c.minus.band()});
  }
  for (auto& c : components_) {
    if (c.plus.band() != band_) c.plus = c.plus.with_band(band_);
    if (c.minus.band() != band_) c.minus = c.minus.with_band(band_);
  }
}

const HomogeneousComponent& ClassicalSymbol::component(int level) const {
  if (level < 0 || level > depth()) {
    throw DomainError("ClassicalSymbol: level " + std::to_string(level) + " outside depth " +
                      std::to_string(depth()));
  }
  return components_[level];
}

const HomogeneousComponent* ClassicalSymbol::component_of_degree(HalfInt degree) const {
  const HalfInt gap = order_ - degree;
  if (gap < HalfInt{} || !gap.is_integer()) return nullptr;
  const int level = gap.as_integer();
  if (level > depth()) return nullptr;
  return &components_[level];
}

bool ClassicalSymbol::degree_is_truncated(HalfInt degree) const {
  const HalfInt gap = order_ - degree;
  return gap.is_integer() && gap.as_integer() > depth();
}

CMatrix ClassicalSymbol::evaluate(double x, double xi) const {
  if (xi == 0.0) throw DomainError("ClassicalSymbol: evaluation at xi = 0");
  const Sheet sheet = xi > 0 ? Sheet::Plus : Sheet::Minus;
  CMatrix value = CMatrix::Zero(fiber_dim_, fiber_dim_);
  for (const auto& c : components_) {
    value += c.sheet(sheet).evaluate(x) * std::pow(std::abs(xi), c.degree.value());
  }
  return value;
}

ClassicalSymbol ClassicalSymbol::truncated_to_depth(int depth) const {
  if (depth < 0 || depth > this->depth()) {
    throw DomainError("ClassicalSymbol: cannot truncate depth " + std::to_string(this->depth()) +
                      " to " + std::to_string(depth));
  }
  ClassicalSymbol out(order_, std::vector<HomogeneousComponent>(
                                  components_.begin(), components_.begin() + depth + 1));
  out.truncation_loss_ = truncation_loss_;
  return out;
}

ClassicalSymbol ClassicalSymbol::with_band(int band) const {
  ClassicalSymbol out = *this;
  double dropped = 0.0;
  for (auto& c : out.components_) {
    dropped += c.plus.norm_beyond(band) + c.minus.norm_beyond(band);
    c.plus = c.plus.with_band(band);
    c.minus = c.minus.with_band(band);
  }
  out.band_ = band;
  out.truncation_loss_ += dropped;
  return out;
}

double ClassicalSymbol::max_component_norm() const {
  double best = 0.0;
  for (const auto& c : components_) best = std::max(best, c.norm());
  return best;
}

double WeightSpec::multiplier(int k) const {
  if (k == 0) return std::pow(kernel_rule, sobolev_exponent);
  return std::pow(static_cast<double>(std::abs(k)), 2.0 * sobolev_exponent);
}

HalfInt WeightSpec::order() const { return HalfInt::from_double(2.0 * sobolev_exponent); }

ClassicalSymbol multiplication_symbol(const FourierSeries& u, int depth) {
  ClassicalSymbol zero(HalfInt{}, u.dim(), u.band(), depth);
  std::vector<HomogeneousComponent> comps = zero.components();
  comps[0].plus = u;
  comps[0].minus = u;
  return ClassicalSymbol(HalfInt{}, std::move(comps));
}

ClassicalSymbol weight_power_symbol(const WeightSpec& spec, int fiber_dim, int depth) {
  const HalfInt order = spec.order();
  ClassicalSymbol zero(order, fiber_dim, 0, depth);
  std::vector<HomogeneousComponent> comps = zero.components();
  comps[0].plus = FourierSeries::identity(fiber_dim);
  comps[0].minus = FourierSeries::identity(fiber_dim);
  return ClassicalSymbol(order, std::move(comps));
}

ClassicalSymbol identity_symbol(int fiber_dim, int depth) {
  return multiplication_symbol(FourierSeries::identity(fiber_dim), depth);
}

double falling_factorial(double delta, int alpha) {
  double product = 1.0;
  for (int i = 0; i < alpha; ++i) product *= delta - i;
  return product;
}

HomogeneousComponent xi_derivative(const HomogeneousComponent& c, int alpha) {
  const double f = falling_factorial(c.degree.value(), alpha);
  const double sign_minus = (alpha % 2 == 0) ? 1.0 : -1.0;
  return {c.degree - alpha, c.plus.scaled(f), c.minus.scaled(f * sign_minus)};
}

namespace {

void require_same_fiber(const ClassicalSymbol& a, const ClassicalSymbol& b, const char* op) {
  if (a.fiber_dim() != b.fiber_dim()) {
    throw DomainError(std::string(op) + ": fiber dimension mismatch (" +
                      std::to_string(a.fiber_dim()) + " vs " + std::to_string(b.fiber_dim()) +
                      ")");
  }
}

double inverse_factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return 1.0 / f;
}

}  // namespace

ClassicalSymbol compose(const ClassicalSymbol& a, const ClassicalSymbol& b, int depth,
                        const ComposeOptions& options) {
  require_same_fiber(a, b, "compose");
  if (depth < 0) throw DomainError("compose: negative depth");
  if (depth > a.depth() || depth > b.depth()) {
    throw DomainError("compose: requested depth " + std::to_string(depth) +
                      " exceeds input depths " + std::to_string(a.depth()) + " and " +
                      std::to_string(b.depth()));
  }
  const HalfInt order = a.order() + b.order();
  const int d = a.fiber_dim();
  const int band = a.band() + b.band();

  std::vector<HomogeneousComponent> out;
  out.reserve(depth + 1);
  for (int j = 0; j <= depth; ++j) {
    HomogeneousComponent level{order - j, FourierSeries(d, band), FourierSeries(d, band)};
    for (int ja = 0; ja <= j; ++ja) {
      const auto& ca = a.component(ja);
      if (ca.is_zero()) continue;
      for (int alpha = 0; alpha <= j - ja; ++alpha) {
        const auto& cb = b.component(j - ja - alpha);
        if (cb.is_zero()) continue;
        const HomogeneousComponent da = xi_derivative(ca, alpha);
        if (da.is_zero()) continue;
        const double w = inverse_factorial(alpha);
        level.plus = level.plus + (da.plus * cb.plus.d_x_power(alpha)).scaled(w);
        level.minus = level.minus + (da.minus * cb.minus.d_x_power(alpha)).scaled(w);
      }
    }
    out.push_back(std::move(level));
  }
  ClassicalSymbol result(order, std::move(out));
  result.add_truncation_loss(a.truncation_loss() + b.truncation_loss());
  if (options.max_band >= 0 && result.band() > options.max_band) {
    return result.with_band(options.max_band);
  }
  return result;
}

ClassicalSymbol compose(const ClassicalSymbol& a, const ClassicalSymbol& b) {
  return compose(a, b, std::min(a.depth(), b.depth()));
}

ClassicalSymbol add(const ClassicalSymbol& a, const ClassicalSymbol& b) {
  require_same_fiber(a, b, "add");
  if (!(a.order() - b.order()).is_integer()) {
    throw DomainError("add: orders " + a.order().to_string() + " and " + b.order().to_string() +
                      " differ by a non-integer");
  }
  const HalfInt order = std::max(a.order(), b.order());
  const HalfInt lowest = std::max(a.lowest_degree(), b.lowest_degree());
  if (lowest > order) {
    throw DomainError("add: symbols share no reliable degree (orders " + a.order().to_string() +
                      ", " + b.order().to_string() + ")");
  }
  const int depth = (order - lowest).as_integer();
  const int d = a.fiber_dim();
  const int band = std::max(a.band(), b.band());
  std::vector<HomogeneousComponent> out;
  out.reserve(depth + 1);
  for (int j = 0; j <= depth; ++j) {
    HomogeneousComponent level{order - j, FourierSeries(d, band), FourierSeries(d, band)};
    for (const ClassicalSymbol* s : {&a, &b}) {
      if (const auto* c = s->component_of_degree(level.degree)) {
        level.plus = level.plus + c->plus;
        level.minus = level.minus + c->minus;
      }
    }
    out.push_back(std::move(level));
  }
  ClassicalSymbol result(order, std::move(out));
  result.add_truncation_loss(a.truncation_loss() + b.truncation_loss());
  return result;
}

ClassicalSymbol scale(const ClassicalSymbol& a, Complex factor) {
  std::vector<HomogeneousComponent> comps = a.components();
  for (auto& c : comps) {
    c.plus = c.plus.scaled(factor);
    c.minus = c.minus.scaled(factor);
  }
  ClassicalSymbol result(a.order(), std::move(comps));
  result.add_truncation_loss(std::abs(factor) * a.truncation_loss());
  return result;
}

ClassicalSymbol subtract(const ClassicalSymbol& a, const ClassicalSymbol& b) {
  return add(a, scale(b, -1.0));
}

ClassicalSymbol commutator(const ClassicalSymbol& a, const ClassicalSymbol& b, int depth,
                           const ComposeOptions& options) {
  return subtract(compose(a, b, depth, options), compose(b, a, depth, options));
}

ClassicalSymbol commutator(const ClassicalSymbol& a, const ClassicalSymbol& b) {
  return commutator(a, b, std::min(a.depth(), b.depth()));
}

ClassicalSymbol compose_power(const ClassicalSymbol& a, int k, int depth,
                              const ComposeOptions& options) {
  if (k < 1) throw DomainError("compose_power: exponent must be at least 1");
  if (depth > a.depth()) {
    throw DomainError("compose_power: requested depth exceeds input depth");
  }
  ClassicalSymbol result = a.truncated_to_depth(depth);
  for (int i = 1; i < k; ++i) result = compose(result, a, depth, options);
  return result;
}

ClassicalSymbol fiber_trace(const ClassicalSymbol& a) {
  std::vector<HomogeneousComponent> comps;
  comps.reserve(a.components().size());
  for (const auto& c : a.components()) comps.push_back({c.degree, c.plus.trace(), c.minus.trace()});
  ClassicalSymbol result(a.order(), std::move(comps));
  result.add_truncation_loss(a.truncation_loss());
  return result;
}

double component_distance(const ClassicalSymbol& a, const ClassicalSymbol& b) {
  require_same_fiber(a, b, "component_distance");
  const HalfInt top = std::max(a.order(), b.order());
  const HalfInt lowest = std::max(a.lowest_degree(), b.lowest_degree());
  double worst = 0.0;
  for (HalfInt deg = top; deg >= lowest; deg = deg - 1) {
    const auto* ca = a.component_of_degree(deg);
    const auto* cb = b.component_of_degree(deg);
    if (ca == nullptr && cb == nullptr) continue;
    double diff = 0.0;
    if (ca != nullptr && cb != nullptr) {
      diff = (ca->plus - cb->plus).norm() + (ca->minus - cb->minus).norm();
    } else {
      diff = (ca != nullptr ? ca : cb)->norm();
    }
    worst = std::max(worst, diff);
  }
  return worst;
}

}  // namespace symcalc
