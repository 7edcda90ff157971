#pragma once

#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "symcalc/lie_algebra.hpp"
#include "symcalc/symbol.hpp"
#include "symcalc/traces.hpp"

namespace symcalc {

/// Antisymmetric bilinear map on C^m with values in d x d matrices, stored on basis pairs.
class AlgebraValued2Form {
 public:
  AlgebraValued2Form(int tangent_dim, int fiber_dim);
  /// values[i][j] = Omega(e_i, e_j); must be antisymmetric to 1e-12.
  static AlgebraValued2Form from_basis_values(const std::vector<std::vector<CMatrix>>& values);

  int tangent_dim() const { return tangent_dim_; }
  int fiber_dim() const { return fiber_dim_; }

  /// Sets Omega(e_i, e_j) = value and Omega(e_j, e_i) = -value.
  void set(int i, int j, const CMatrix& value);
  const CMatrix& on_basis(int i, int j) const { return values_[i * tangent_dim_ + j]; }
  CMatrix operator()(const CVector& x, const CVector& y) const;

  double antisymmetry_defect() const;

 private:
  int tangent_dim_;
  int fiber_dim_;
  std::vector<CMatrix> values_;
};

/// Random anti-Hermitian n x n matrix (traceless when requested, i.e. su(n) instead of u(n)).
CMatrix random_anti_hermitian(int n, bool traceless, std::mt19937_64& rng);
AlgebraValued2Form random_two_form(int tangent_dim, int fiber_dim, bool traceless,
                                   std::mt19937_64& rng);

/// Sum over all permutations sigma of {0..2k-1} of
///   sgn(sigma) pair(sigma0, sigma1) * pair(sigma2, sigma3) * ...
/// evaluated by recursion over subsets (each leading pair is peeled off in turn).
/// `pair(a, b)` must be antisymmetric.
template <class T, class Pair>
T alternating_pair_product(int arity, const Pair& pair, const T& unit,
                           const std::function<T(const T&, const T&)>& multiply,
                           const std::function<T(const T&, const T&)>& add, const T& zero);

/// Determinant-convention wedge power
///   (1/(2^k k!)) sum_{sigma in S_2k} sgn(sigma) Omega(X_s1, X_s2) ... Omega(X_s(2k-1), X_s2k),
/// so k = 1 gives Omega(X1, X2). Direct enumeration for k <= 3, subset recursion for k = 4.
CMatrix wedge_power_evaluate(const AlgebraValued2Form& omega, int k, std::span<const CVector> vectors);

/// Loop of 2-forms theta -> Omega_theta, pointwise (xi-independent), stored per basis pair.
class LoopTwoFormField {
 public:
  LoopTwoFormField(int tangent_dim, int fiber_dim);
  static LoopTwoFormField constant(const AlgebraValued2Form& omega);

  int tangent_dim() const { return tangent_dim_; }
  int fiber_dim() const { return fiber_dim_; }
  void set(int i, int j, const FourierSeries& value);
  const FourierSeries& on_basis(int i, int j) const { return values_[i * tangent_dim_ + j]; }
  AlgebraValued2Form at(double theta) const;

 private:
  int tangent_dim_;
  int fiber_dim_;
  std::vector<FourierSeries> values_;
};

/// c_k^f of a pointwise curvature: f(tr sigma_0 of the wedge power), where the wedge
/// power of the multiplication-operator-valued form is formed with the symbol product.
Complex ck_f_pointwise(const LoopTwoFormField& omega, const CosphereDistribution& f, int k,
                       std::span<const CVector> vectors);

/// Left-invariant gl(d)-valued connection on a Lie group: theta(e_i) = generators[i].
struct LeftInvariantConnection {
  std::vector<CMatrix> generators;
  CMatrix operator()(const CVector& x) const;
  LeftInvariantConnection operator+(const LeftInvariantConnection& rhs) const;
  LeftInvariantConnection scaled(Complex factor) const;
};

/// Omega(X,Y) = [theta X, theta Y] - theta([X,Y]).
AlgebraValued2Form left_invariant_curvature(const LieAlgebra& g, const LeftInvariantConnection& theta);

/// Matrix-valued alternating p-form on the Lie algebra, evaluated on p vectors.
struct MatrixForm {
  int degree = 0;
  std::function<CMatrix(std::span<const CVector>)> evaluate;
};

MatrixForm as_form(const AlgebraValued2Form& omega);
MatrixForm as_form(const LeftInvariantConnection& theta);
/// Shuffle-sum wedge (alpha_1 ^ ... ^ alpha_r)(X_1..X_p) = sum over shuffles of
/// sgn * alpha_1(X_S1) ... alpha_r(X_Sr); for 1-forms (a ^ b)(X,Y) = a(X)b(Y) - a(Y)b(X).
MatrixForm wedge(const std::vector<MatrixForm>& factors);

using ScalarForm = std::function<Complex(std::span<const CVector>)>;
/// d beta(X_0..X_p) = sum_{i<j} (-1)^{i+j} beta([X_i,X_j], X_0, ..^i..^j.., X_p).
Complex ce_differential(const LieAlgebra& g, const ScalarForm& beta, int degree,
                        std::span<const CVector> vectors);

struct TransgressionResult {
  double lhs = 0.0;       // |d/dt lambda(Omega_t^k / k!)|
  double rhs = 0.0;       // |d(transgression form)|
  double residual = 0.0;  // |lhs - rhs| as complex numbers
  /// Gap between the 3-point and 5-point stencil estimates (0 with only 3 points).
  double richardson_gap = 0.0;
  bool grid_too_coarse = false;
};

/// Numerical check of d/dt lambda(Omega_t^k) = d sum_j lambda(Omega_t^{k-j} theta_t' Omega_t^{j-1})
/// (both sides in the determinant normalization Omega^k/k!) at the middle of an
/// equally spaced family of left-invariant connections.
TransgressionResult transgression_check(const LieAlgebra& g,
                                        const std::vector<LeftInvariantConnection>& family,
                                        double step, const std::function<Complex(const CMatrix&)>& lambda,
                                        int k, std::span<const CVector> vectors,
                                        double coarse_tolerance = 1e-3);

// ---------------------------------------------------------------------------

template <class T, class Pair>
T alternating_pair_product(int arity, const Pair& pair, const T& unit,
                           const std::function<T(const T&, const T&)>& multiply,
                           const std::function<T(const T&, const T&)>& add, const T& zero) {
  // F(S) = sum_{a != b in S} (-1)^{pos(a) + pos_{S\a}(b)} pair(a,b) * F(S \ {a,b}), F({}) = unit.
  std::vector<std::optional<T>> memo(std::size_t{1} << arity);
  std::function<const T&(unsigned)> solve = [&](unsigned mask) -> const T& {
    auto& slot = memo[mask];
    if (slot) return *slot;
    if (mask == 0) {
      slot = unit;
      return *slot;
    }
    std::vector<int> members;
    for (int i = 0; i < arity; ++i) {
      if (mask & (1u << i)) members.push_back(i);
    }
    T total = zero;
    const int size = static_cast<int>(members.size());
    for (int pa = 0; pa < size; ++pa) {
      for (int pb = 0; pb < size; ++pb) {
        if (pa == pb) continue;
        const int pos_b = pb < pa ? pb : pb - 1;
        const bool even = (pa + pos_b) % 2 == 0;
        const unsigned rest = mask & ~(1u << members[pa]) & ~(1u << members[pb]);
        // An odd sign is absorbed by swapping the (antisymmetric) pair.
        const T& tail = solve(rest);
        total = add(total, even ? multiply(pair(members[pa], members[pb]), tail)
                                : multiply(pair(members[pb], members[pa]), tail));
      }
    }
    slot = total;
    return *slot;
  };
  return solve((1u << arity) - 1);
}

}  // namespace symcalc
