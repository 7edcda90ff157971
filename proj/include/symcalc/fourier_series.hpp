#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace symcalc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Band-limited periodic function S^1 -> C^{d x d}, stored by Fourier coefficients
///   u(x) = sum_{|k| <= band} c_k e^{ikx}.
/// A value type; every operation returns a new series.
class FourierSeries {
 public:
  FourierSeries() = default;
  /// Zero series of the given fiber dimension and band.
  FourierSeries(int dim, int band);

  static FourierSeries constant(const CMatrix& value);
  static FourierSeries scalar_constant(Complex value);
  static FourierSeries identity(int dim);
  /// Single Fourier mode: value * e^{ikx}.
  static FourierSeries mode(int k, const CMatrix& value);
  /// coefficients[k + band] is the k-th mode.
  static FourierSeries from_coefficients(int band, std::vector<CMatrix> coefficients);

  int dim() const { return dim_; }
  int band() const { return band_; }

  /// Mode k; zero matrix outside the band.
  CMatrix coefficient(int k) const;
  /// Mutable access to mode k, |k| <= band.
  CMatrix& at(int k);
  const CMatrix& at(int k) const;

  CMatrix evaluate(double x) const;

  /// (-i d/dx)^alpha, i.e. mode k multiplied by k^alpha.
  FourierSeries d_x_power(int alpha) const;
  /// d/dx, mode k multiplied by ik.
  FourierSeries derivative() const;

  /// Pointwise matrix product; band is the sum of the bands.
  FourierSeries operator*(const FourierSeries& rhs) const;
  FourierSeries operator+(const FourierSeries& rhs) const;
  FourierSeries operator-(const FourierSeries& rhs) const;
  FourierSeries operator-() const;
  FourierSeries scaled(Complex factor) const;

  /// Pointwise matrix trace as a 1x1 series.
  FourierSeries trace() const;
  /// Pointwise conjugate transpose.
  FourierSeries adjoint() const;

  /// Re-band: pads with zeros or drops modes |k| > band.
  FourierSeries with_band(int band) const;
  /// Sum of Frobenius norms of the modes with |k| > band (what with_band would discard).
  double norm_beyond(int band) const;

  /// sum_k ||c_k||_F, an upper bound for the sup norm over the circle.
  double norm() const;
  /// max_k ||c_k||_F.
  double max_coefficient_norm() const;

  /// Scalar view of a 1x1 series.
  Complex scalar_coefficient(int k) const;

 private:
  int dim_ = 1;
  int band_ = 0;
  std::vector<CMatrix> coefficients_ = {CMatrix::Zero(1, 1)};
};

FourierSeries operator*(Complex factor, const FourierSeries& series);

}  // namespace symcalc
