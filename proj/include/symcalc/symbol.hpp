#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "symcalc/fourier_series.hpp"

namespace symcalc {

/// An element of (1/2)Z, stored exactly as twice its value.
/// Orders and homogeneity degrees live here so that depth arithmetic stays exact.
class HalfInt {
 public:
  constexpr HalfInt() = default;
  constexpr static HalfInt from_twice(int twice) { return HalfInt(twice); }
  constexpr static HalfInt integer(int value) { return HalfInt(2 * value); }
  /// Throws DomainError unless value is a multiple of 1/2.
  static HalfInt from_double(double value);

  constexpr int twice() const { return twice_; }
  constexpr double value() const { return 0.5 * twice_; }
  constexpr bool is_integer() const { return twice_ % 2 == 0; }
  /// Requires is_integer().
  int as_integer() const;

  constexpr HalfInt operator+(HalfInt o) const { return HalfInt(twice_ + o.twice_); }
  constexpr HalfInt operator-(HalfInt o) const { return HalfInt(twice_ - o.twice_); }
  constexpr HalfInt operator-() const { return HalfInt(-twice_); }
  constexpr HalfInt operator-(int levels) const { return HalfInt(twice_ - 2 * levels); }
  constexpr auto operator<=>(const HalfInt&) const = default;

  std::string to_string() const;

 private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

enum class Sheet { Plus, Minus };

/// One homogeneous piece sheet_{sign xi}(x) |xi|^degree of a classical symbol on the circle.
struct HomogeneousComponent {
  HalfInt degree;
  FourierSeries plus;
  FourierSeries minus;

  const FourierSeries& sheet(Sheet s) const { return s == Sheet::Plus ? plus : minus; }
  bool is_zero(double tol = 0.0) const;
  double norm() const { return plus.norm() + minus.norm(); }
};

/// Classical symbol of order m with components of degree m, m-1, ..., m-depth.
/// Absent levels are stored as explicit zeros; all components share fiber
/// dimension and band limit.
class ClassicalSymbol {
 public:
  /// Zero symbol.
  ClassicalSymbol(HalfInt order, int fiber_dim, int band, int depth);
  /// Components must have degrees order, order-1, ...; bands are unified to the maximum.
  ClassicalSymbol(HalfInt order, std::vector<HomogeneousComponent> components);

  HalfInt order() const { return order_; }
  int depth() const { return static_cast<int>(components_.size()) - 1; }
  int fiber_dim() const { return fiber_dim_; }
  int band() const { return band_; }
  /// Lowest degree carried: order - depth.
  HalfInt lowest_degree() const { return order_ - depth(); }

  const HomogeneousComponent& component(int level) const;
  const std::vector<HomogeneousComponent>& components() const { return components_; }
  /// Component of the given degree; nullopt when the degree is above the order,
  /// off the order's lattice, or below the retained depth.
  const HomogeneousComponent* component_of_degree(HalfInt degree) const;
  /// True when degree lies on the lattice order - Z_{>=0} but below the retained depth.
  bool degree_is_truncated(HalfInt degree) const;

  /// Norm of Fourier modes discarded by band clamping along the way to this symbol.
  double truncation_loss() const { return truncation_loss_; }
  void add_truncation_loss(double loss) { truncation_loss_ += loss; }

  /// Finite sum over retained components at cotangent value xi != 0.
  CMatrix evaluate(double x, double xi) const;

  /// Same symbol with fewer retained levels.
  ClassicalSymbol truncated_to_depth(int depth) const;
  /// Re-band every component (records the discarded norm).
  ClassicalSymbol with_band(int band) const;

  /// max over components of the summed sheet norms.
  double max_component_norm() const;

 private:
  HalfInt order_;
  int fiber_dim_ = 1;
  int band_ = 0;
  std::vector<HomogeneousComponent> components_;
  double truncation_loss_ = 0.0;
};

/// (Q0 + P)^s with Q0 = Laplacian (x) Id on the circle and P the kernel projection.
struct WeightSpec {
  double sobolev_exponent = 0.0;
  /// Eigenvalue given to the zero Fourier mode before taking the power.
  double kernel_rule = 1.0;

  /// Fourier multiplier |k|^{2s}, and kernel_rule^s at k = 0.
  double multiplier(int k) const;
  /// 2s; must be a multiple of 1/2 for the symbol to exist.
  HalfInt order() const;
};

struct ComposeOptions {
  /// Clamp for the band of the product; negative means no clamp.
  int max_band = -1;
};

/// Order-0 symbol of the pointwise multiplication operator by u.
ClassicalSymbol multiplication_symbol(const FourierSeries& u, int depth);

/// x-independent symbol |xi|^{2s} Id of the weight power; lower components zero.
ClassicalSymbol weight_power_symbol(const WeightSpec& spec, int fiber_dim, int depth);

ClassicalSymbol identity_symbol(int fiber_dim, int depth);

/// Falling factorial delta (delta-1) ... (delta-alpha+1).
double falling_factorial(double delta, int alpha);

/// alpha-th xi-derivative of a homogeneous component: each sheet picks up
/// (+-1)^alpha * falling(degree, alpha); the degree drops by alpha.
HomogeneousComponent xi_derivative(const HomogeneousComponent& c, int alpha);

/// Left-quantization product expansion
///   sigma_{AB} ~ sum_alpha (1/alpha!) d_xi^alpha sigma_A * D_x^alpha sigma_B,  D_x = -i d/dx,
/// kept down to level `depth`. Throws DomainError on fiber mismatch or when
/// depth exceeds what the inputs carry.
ClassicalSymbol compose(const ClassicalSymbol& a, const ClassicalSymbol& b, int depth,
                        const ComposeOptions& options = {});
/// Depth defaults to the smaller input depth.
ClassicalSymbol compose(const ClassicalSymbol& a, const ClassicalSymbol& b);

/// Graded sum; result order is the larger order, depth is the common reliable depth.
ClassicalSymbol add(const ClassicalSymbol& a, const ClassicalSymbol& b);
ClassicalSymbol subtract(const ClassicalSymbol& a, const ClassicalSymbol& b);
ClassicalSymbol scale(const ClassicalSymbol& a, Complex factor);
ClassicalSymbol commutator(const ClassicalSymbol& a, const ClassicalSymbol& b, int depth,
                           const ComposeOptions& options = {});
ClassicalSymbol commutator(const ClassicalSymbol& a, const ClassicalSymbol& b);

/// A composed with itself k times (left fold).
ClassicalSymbol compose_power(const ClassicalSymbol& a, int k, int depth,
                              const ComposeOptions& options = {});

/// Pointwise fiber trace; a d = 1 symbol.
ClassicalSymbol fiber_trace(const ClassicalSymbol& a);

/// max over common degrees of the component norm difference; components present
/// in only one symbol are compared against zero.
double component_distance(const ClassicalSymbol& a, const ClassicalSymbol& b);

}  // namespace symcalc
