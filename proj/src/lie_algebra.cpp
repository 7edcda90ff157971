#include "symcalc/lie_algebra.hpp"

#include <cmath>

#include "symcalc/error.hpp"

namespace symcalc {

namespace {

Eigen::MatrixXd killing_of(const std::vector<Eigen::MatrixXd>& ad) {
  const int n = static_cast<int>(ad.size());
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = (ad[i] * ad[j]).trace();
  }
  return b;
}

Eigen::MatrixXd positive_gram_from_killing(const std::vector<Eigen::MatrixXd>& ad) {
  Eigen::MatrixXd gram = -killing_of(ad);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  if (eig.eigenvalues().minCoeff() <= 1e-12 * std::max(1.0, eig.eigenvalues().maxCoeff())) {
    throw DomainError("LieAlgebra: minus the Killing form is not positive definite "
                      "(algebra is not compact semisimple)");
  }
  return gram;
}

}  // namespace

LieAlgebra::LieAlgebra(std::vector<Eigen::MatrixXd> ad_basis, Eigen::MatrixXd gram)
    : dim_(static_cast<int>(ad_basis.size())), ad_basis_(std::move(ad_basis)), gram_(std::move(gram)) {}

LieAlgebra LieAlgebra::from_structure_constants(
    const std::vector<std::vector<std::vector<double>>>& structure) {
  const int n = static_cast<int>(structure.size());
  if (n == 0) throw DomainError("LieAlgebra: empty structure constants");
  std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(structure[i].size()) != n) {
      throw DomainError("LieAlgebra: structure constants must be dim x dim x dim");
    }
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(structure[i][j].size()) != n) {
        throw DomainError("LieAlgebra: structure constants must be dim x dim x dim");
      }
      for (int k = 0; k < n; ++k) ad[i](k, j) = structure[i][j][k];
    }
  }
  LieAlgebra probe(ad, Eigen::MatrixXd::Identity(n, n));
  if (probe.antisymmetry_defect() > 1e-10) {
    throw DomainError("LieAlgebra: structure constants are not antisymmetric");
  }
  if (probe.jacobi_defect() > 1e-10) {
    throw DomainError("LieAlgebra: structure constants violate the Jacobi identity");
  }
  return LieAlgebra(ad, positive_gram_from_killing(ad));
}

LieAlgebra LieAlgebra::from_matrix_basis(const std::vector<CMatrix>& basis, bool orthonormalize) {
  const int n = static_cast<int>(basis.size());
  if (n == 0) throw DomainError("LieAlgebra: empty matrix basis");
  const auto rows = basis.front().rows();
  // Real coordinates of a matrix in the basis: least squares on (Re, Im) stacked entries.
  const Eigen::Index flat = 2 * rows * rows;
  Eigen::MatrixXd frame(flat, n);
  auto flatten = [&](const CMatrix& m) {
    Eigen::VectorXd v(flat);
    for (Eigen::Index i = 0; i < rows * rows; ++i) {
      v(i) = m.data()[i].real();
      v(rows * rows + i) = m.data()[i].imag();
    }
    return v;
  };
  for (int i = 0; i < n; ++i) frame.col(i) = flatten(basis[i]);
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(frame);
  if (qr.rank() < n) throw DomainError("LieAlgebra: matrix basis is linearly dependent");

  std::vector<Eigen::MatrixXd> ad(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CMatrix comm = basis[i] * basis[j] - basis[j] * basis[i];
      const Eigen::VectorXd target = flatten(comm);
      const Eigen::VectorXd coords = qr.solve(target);
      if ((frame * coords - target).norm() > 1e-9 * (1.0 + target.norm())) {
        throw DomainError("LieAlgebra: matrix basis does not close under the commutator");
      }
      for (int k = 0; k < n; ++k) ad[i](k, j) = coords(k);
    }
  }
  if (!orthonormalize) return LieAlgebra(ad, positive_gram_from_killing(ad));

  // New basis f_a = sum_i T_{ia} e_i with T^T G T = I, G = -Killing.
  const Eigen::MatrixXd gram = positive_gram_from_killing(ad);
  const Eigen::LLT<Eigen::MatrixXd> llt(gram);
  const Eigen::MatrixXd t =
      llt.matrixU().solve(Eigen::MatrixXd::Identity(n, n));  // G = U^T U, T = U^{-1}
  std::vector<CMatrix> rebased(n, CMatrix::Zero(rows, rows));
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) rebased[a] += t(i, a) * basis[i];
  }
  return from_matrix_basis(rebased, false);
}

LieAlgebra LieAlgebra::su2() {
  const double c = 1.0 / std::sqrt(2.0);
  std::vector<std::vector<std::vector<double>>> s(3, std::vector<std::vector<double>>(
                                                         3, std::vector<double>(3, 0.0)));
  s[0][1][2] = c;
  s[1][2][0] = c;
  s[2][0][1] = c;
  s[1][0][2] = -c;
  s[2][1][0] = -c;
  s[0][2][1] = -c;
  return from_structure_constants(s);
}

LieAlgebra LieAlgebra::su(int n) {
  if (n < 2) throw DomainError("su(n): n must be at least 2");
  const Complex i_unit(0.0, 1.0);
  std::vector<CMatrix> basis;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      CMatrix x = CMatrix::Zero(n, n);
      x(a, b) = 1.0;
      x(b, a) = -1.0;
      basis.push_back(x);
      CMatrix y = CMatrix::Zero(n, n);
      y(a, b) = i_unit;
      y(b, a) = i_unit;
      basis.push_back(y);
    }
  }
  for (int a = 0; a + 1 < n; ++a) {
    CMatrix h = CMatrix::Zero(n, n);
    h(a, a) = i_unit;
    h(a + 1, a + 1) = -i_unit;
    basis.push_back(h);
  }
  return from_matrix_basis(basis, true);
}

LieAlgebra LieAlgebra::abelian(int dim) {
  if (dim < 1) throw DomainError("abelian: dimension must be positive");
  return LieAlgebra(std::vector<Eigen::MatrixXd>(dim, Eigen::MatrixXd::Zero(dim, dim)),
                    Eigen::MatrixXd::Identity(dim, dim));
}

CMatrix LieAlgebra::ad(const CVector& x) const {
  if (x.size() != dim_) throw DomainError("LieAlgebra: vector has the wrong dimension");
  CMatrix m = CMatrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) != Complex(0.0)) m += x(i) * ad_basis_[i].cast<Complex>();
  }
  return m;
}

CVector LieAlgebra::bracket(const CVector& x, const CVector& y) const { return ad(x) * y; }

Eigen::MatrixXd LieAlgebra::killing_form() const { return killing_of(ad_basis_); }

Complex LieAlgebra::inner(const CVector& x, const CVector& y) const {
  return (x.transpose() * gram_.cast<Complex>() * y)(0, 0);
}

double LieAlgebra::antisymmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        worst = std::max(worst, std::abs(structure_constant(i, j, k) + structure_constant(j, i, k)));
  return worst;
}

double LieAlgebra::jacobi_defect() const {
  // [e_i,[e_j,e_k]] + cyclic, i.e. ad_i ad_j - ad_j ad_i - ad_{[e_i,e_j]} = 0.
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      Eigen::MatrixXd ad_bracket = Eigen::MatrixXd::Zero(dim_, dim_);
      for (int k = 0; k < dim_; ++k) ad_bracket += structure_constant(i, j, k) * ad_basis_[k];
      const Eigen::MatrixXd defect =
          ad_basis_[i] * ad_basis_[j] - ad_basis_[j] * ad_basis_[i] - ad_bracket;
      worst = std::max(worst, defect.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double LieAlgebra::ad_invariance_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    // <ad_i y, z> + <y, ad_i z> = y^T (ad_i^T G + G ad_i) z
    const Eigen::MatrixXd m = ad_basis_[i].transpose() * gram_ + gram_ * ad_basis_[i];
    worst = std::max(worst, m.cwiseAbs().maxCoeff());
  }
  return worst;
}

double LieAlgebra::ad_trace_defect() const {
  double worst = 0.0;
  for (const auto& a : ad_basis_) worst = std::max(worst, std::abs(a.trace()));
  return worst;
}

}  // namespace symcalc
