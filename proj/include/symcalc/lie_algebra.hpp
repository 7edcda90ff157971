#pragma once

#include <vector>

#include <Eigen/Dense>

#include "symcalc/fourier_series.hpp"

namespace symcalc {

/// Finite-dimensional real Lie algebra given by structure constants
///   [e_i, e_j] = sum_k c^k_{ij} e_k,
/// together with an invariant inner product (minus the Killing form for the
/// compact semisimple constructors, identity for abelian ones).
class LieAlgebra {
 public:
  /// structure[i][j][k] = c^k_{ij}. Validates antisymmetry and Jacobi (1e-10) and
  /// uses minus the Killing form as inner product, which must be positive definite.
  static LieAlgebra from_structure_constants(
      const std::vector<std::vector<std::vector<double>>>& structure);
  /// Real span of the given matrices, which must close under the commutator. The basis
  /// is re-orthonormalized for minus the Killing form when `orthonormalize` is set.
  static LieAlgebra from_matrix_basis(const std::vector<CMatrix>& basis, bool orthonormalize = true);

  /// su(2) in a minus-Killing orthonormal basis: c^k_{ij} = eps_{ijk} / sqrt(2).
  static LieAlgebra su2();
  /// su(n), n >= 2, from the standard anti-Hermitian basis, orthonormalized.
  static LieAlgebra su(int n);
  /// Zero bracket, identity inner product.
  static LieAlgebra abelian(int dim);

  int dim() const { return dim_; }
  double structure_constant(int i, int j, int k) const { return ad_basis_[i](k, j); }
  /// (ad e_i)_{kj} = c^k_{ij}.
  const Eigen::MatrixXd& ad_basis(int i) const { return ad_basis_[i]; }

  CMatrix ad(const CVector& x) const;
  CVector bracket(const CVector& x, const CVector& y) const;

  /// B_{ij} = tr(ad e_i ad e_j).
  Eigen::MatrixXd killing_form() const;
  const Eigen::MatrixXd& gram() const { return gram_; }
  /// Complex-bilinear extension x^T G y.
  Complex inner(const CVector& x, const CVector& y) const;

  double antisymmetry_defect() const;
  double jacobi_defect() const;
  /// max |<[X,Y],Z> + <Y,[X,Z]>| over basis triples.
  double ad_invariance_defect() const;
  /// max |tr ad e_i|.
  double ad_trace_defect() const;

 private:
  LieAlgebra(std::vector<Eigen::MatrixXd> ad_basis, Eigen::MatrixXd gram);

  int dim_ = 0;
  std::vector<Eigen::MatrixXd> ad_basis_;
  Eigen::MatrixXd gram_;
};

}  // namespace symcalc
