#pragma once

#include <functional>
#include <random>
#include <vector>

#include "symcalc/lie_algebra.hpp"
#include "symcalc/spectral.hpp"
#include "symcalc/symbol.hpp"

namespace symcalc {

/// Truncated loop U(x) = sum_{|k| <= K} u_k e^{ikx} in a Lie algebra (complexified).
/// Real loops satisfy u_{-k} = conj(u_k).
class LoopElement {
 public:
  LoopElement(int algebra_dim, int mode_cutoff);
  static LoopElement constant(const CVector& value);
  /// Random real loop with Gaussian coefficients of scale decay^{|k|}.
  static LoopElement random_real(int algebra_dim, int mode_cutoff, std::mt19937_64& rng,
                                 double decay = 0.7);

  int algebra_dim() const { return algebra_dim_; }
  int mode_cutoff() const { return mode_cutoff_; }

  CVector coefficient(int k) const;
  CVector& at(int k);
  const CVector& at(int k) const;
  CVector evaluate(double x) const;

  bool is_real(double tol = 1e-12) const;
  double norm() const;

  LoopElement operator+(const LoopElement& rhs) const;
  LoopElement operator-(const LoopElement& rhs) const;
  LoopElement scaled(Complex factor) const;

 private:
  int algebra_dim_;
  int mode_cutoff_;
  std::vector<CVector> coefficients_;
};

/// Current-algebra bracket [U,V](x) = [U(x), V(x)]; cutoff K_U + K_V.
LoopElement pointwise_bracket(const LieAlgebra& g, const LoopElement& u, const LoopElement& v);

/// x -> ad_{U(x)} as a d_g x d_g matrix series.
FourierSeries ad_series(const LieAlgebra& g, const LoopElement& u);

/// Multiplication symbol of ad_U.
ClassicalSymbol ad_symbol(const LieAlgebra& g, const LoopElement& u, int depth);

/// (Q0 + P)^s applied to U: mode k scaled by |k|^{2s}, k = 0 untouched.
LoopElement sobolev_apply(double s, const LoopElement& u);

/// theta^s(U) = (1/2)(ad_U + Q^{-s} ad_U Q^s - Q^{-s} ad_{Q^s U}),
/// the left-invariant Levi-Civita connection of the H^s metric.
ClassicalSymbol theta_levi_civita(const LieAlgebra& g, double s, const LoopElement& u, int depth);

/// theta~^s(U) = Q^{-s} ad_U Q^s.
ClassicalSymbol theta_conjugation(const LieAlgebra& g, double s, const LoopElement& u, int depth);

enum class ConnectionKind { LeviCivita, Conjugation };

/// One of the two left-invariant connections at a fixed Sobolev exponent and symbol depth.
struct Connection {
  ConnectionKind kind = ConnectionKind::LeviCivita;
  double s = 0.5;
  int depth = 3;

  ClassicalSymbol operator()(const LieAlgebra& g, const LoopElement& u) const;
  /// Exact truncated matrix of the same operator on modes |m| <= N, built from
  /// ad matrices and the multipliers directly (no symbol expansion).
  FourierMatrix matrix(const LieAlgebra& g, const LoopElement& u, int mode_cutoff) const;
};

/// Omega(U,V) = [theta(U), theta(V)] - theta([U,V]).
ClassicalSymbol curvature(const LieAlgebra& g, const Connection& theta, const LoopElement& u,
                          const LoopElement& v);

/// Diagonal blocks (m,m), |m| <= N, of the exact curvature operator
/// theta(U) theta(V) - theta(V) theta(U) - theta([U,V]) on the full mode lattice.
/// Uses the band structure of theta, so large N stay cheap.
std::vector<CMatrix> curvature_diagonal_blocks(const LieAlgebra& g, const Connection& theta,
                                               const LoopElement& u, const LoopElement& v,
                                               int mode_cutoff);

/// (1/2pi) int_{S*S^1} tr sigma_{-1}(Omega(U,V)) for the Levi-Civita connection at the
/// given exponent; the fiber trace enters once.
Complex weighted_first_chern(const LieAlgebra& g, const LoopElement& u, const LoopElement& v,
                             int depth = 3, double s = 0.5);

using LoopTwoForm = std::function<Complex(const LoopElement&, const LoopElement&)>;
using LoopOneForm = std::function<Complex(const LoopElement&)>;

/// Chevalley-Eilenberg differential of a left-invariant 2-form,
///   d beta(U,V,W) = -beta([U,V],W) + beta([U,W],V) - beta([V,W],U).
/// DomainError if beta is not antisymmetric on the given arguments.
Complex ce_differential(const LieAlgebra& g, const LoopTwoForm& beta, const LoopElement& u,
                        const LoopElement& v, const LoopElement& w, double antisymmetry_tol = 1e-9);

/// d alpha(U,V) = -alpha([U,V]).
Complex ce_differential(const LieAlgebra& g, const LoopOneForm& alpha, const LoopElement& u,
                        const LoopElement& v);

/// <U,V>^s = 2 pi sum_k |k|^{2s} conj(u_k)^T G v_k (k = 0 weighted by 1).
Complex h_s_inner(const LieAlgebra& g, double s, const LoopElement& u, const LoopElement& v);

}  // namespace symcalc
