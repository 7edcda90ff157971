#include "symcalc/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "symcalc/error.hpp"

namespace symcalc {

FourierSeries::FourierSeries(int dim, int band) : dim_(dim), band_(band) {
  if (dim < 1) throw DomainError("FourierSeries: fiber dimension must be positive");
  if (band < 0) throw DomainError("FourierSeries: band must be non-negative");
  coefficients_.assign(2 * band + 1, CMatrix::Zero(dim, dim));
}

FourierSeries FourierSeries::constant(const CMatrix& value) {
  if (value.rows() != value.cols()) throw DomainError("FourierSeries: value must be square");
  FourierSeries s(static_cast<int>(value.rows()), 0);
  s.coefficients_[0] = value;
  return s;
}

FourierSeries FourierSeries::scalar_constant(Complex value) {
  CMatrix m(1, 1);
  m(0, 0) = value;
  return constant(m);
}

FourierSeries FourierSeries::identity(int dim) {
  return constant(CMatrix::Identity(dim, dim));
}

FourierSeries FourierSeries::mode(int k, const CMatrix& value) {
  if (value.rows() != value.cols()) throw DomainError("FourierSeries: value must be square");
  FourierSeries s(static_cast<int>(value.rows()), std::abs(k));
  s.at(k) = value;
  return s;
}

FourierSeries FourierSeries::from_coefficients(int band, std::vector<CMatrix> coefficients) {
  if (band < 0 || coefficients.size() != static_cast<std::size_t>(2 * band + 1)) {
    throw DomainError("FourierSeries: expected 2*band+1 coefficients");
  }
  const auto dim = coefficients.front().rows();
  for (const auto& c : coefficients) {
    if (c.rows() != dim || c.cols() != dim) {
      throw DomainError("FourierSeries: coefficients must share one square shape");
    }
  }
  FourierSeries s(static_cast<int>(dim), band);
  s.coefficients_ = std::move(coefficients);
  return s;
}

CMatrix FourierSeries::coefficient(int k) const {
  if (std::abs(k) > band_) return CMatrix::Zero(dim_, dim_);
  return coefficients_[k + band_];
}

CMatrix& FourierSeries::at(int k) {
  if (std::abs(k) > band_) {
    throw DomainError("FourierSeries: mode " + std::to_string(k) + " outside band " +
                      std::to_string(band_));
  }
  return coefficients_[k + band_];
}

const CMatrix& FourierSeries::at(int k) const {
  if (std::abs(k) > band_) {
    throw DomainError("FourierSeries: mode " + std::to_string(k) + " outside band " +
                      std::to_string(band_));
  }
  return coefficients_[k + band_];
}

CMatrix FourierSeries::evaluate(double x) const {
  CMatrix value = CMatrix::Zero(dim_, dim_);
  for (int k = -band_; k <= band_; ++k) {
    value += coefficients_[k + band_] * std::polar(1.0, k * x);
  }
  return value;
}

FourierSeries FourierSeries::d_x_power(int alpha) const {
  if (alpha < 0) throw DomainError("FourierSeries: negative derivative order");
  if (alpha == 0) return *this;
  FourierSeries out = *this;
  for (int k = -band_; k <= band_; ++k) {
    out.coefficients_[k + band_] *= std::pow(static_cast<double>(k), alpha);
  }
  return out;
}

FourierSeries FourierSeries::derivative() const {
  FourierSeries out = *this;
  for (int k = -band_; k <= band_; ++k) {
    out.coefficients_[k + band_] *= Complex(0.0, k);
  }
  return out;
}

FourierSeries FourierSeries::operator*(const FourierSeries& rhs) const {
  if (dim_ != rhs.dim_) throw DomainError("FourierSeries: fiber dimension mismatch in product");
  FourierSeries out(dim_, band_ + rhs.band_);
  for (int a = -band_; a <= band_; ++a) {
    const CMatrix& ca = coefficients_[a + band_];
    if (ca.isZero(0.0)) continue;
    for (int b = -rhs.band_; b <= rhs.band_; ++b) {
      const CMatrix& cb = rhs.coefficients_[b + rhs.band_];
      if (cb.isZero(0.0)) continue;
      out.coefficients_[a + b + out.band_].noalias() += ca * cb;
    }
  }
  return out;
}

FourierSeries FourierSeries::operator+(const FourierSeries& rhs) const {
  if (dim_ != rhs.dim_) throw DomainError("FourierSeries: fiber dimension mismatch in sum");
  FourierSeries out(dim_, std::max(band_, rhs.band_));
  for (int k = -band_; k <= band_; ++k) out.coefficients_[k + out.band_] += coefficients_[k + band_];
  for (int k = -rhs.band_; k <= rhs.band_; ++k) {
    out.coefficients_[k + out.band_] += rhs.coefficients_[k + rhs.band_];
  }
  return out;
}

FourierSeries FourierSeries::operator-(const FourierSeries& rhs) const { return *this + (-rhs); }

FourierSeries FourierSeries::operator-() const { return scaled(-1.0); }

FourierSeries FourierSeries::scaled(Complex factor) const {
  FourierSeries out = *this;
  for (auto& c : out.coefficients_) c *= factor;
  return out;
}

FourierSeries FourierSeries::trace() const {
  FourierSeries out(1, band_);
  for (int k = -band_; k <= band_; ++k) {
    out.coefficients_[k + band_](0, 0) = coefficients_[k + band_].trace();
  }
  return out;
}

FourierSeries FourierSeries::adjoint() const {
  // conj(sum c_k e^{ikx})^T = sum c_{-k}^* e^{ikx}
  FourierSeries out(dim_, band_);
  for (int k = -band_; k <= band_; ++k) {
    out.coefficients_[k + band_] = coefficients_[-k + band_].adjoint();
  }
  return out;
}

FourierSeries FourierSeries::with_band(int band) const {
  FourierSeries out(dim_, band);
  const int common = std::min(band, band_);
  for (int k = -common; k <= common; ++k) out.coefficients_[k + band] = coefficients_[k + band_];
  return out;
}

double FourierSeries::norm_beyond(int band) const {
  double dropped = 0.0;
  for (int k = -band_; k <= band_; ++k) {
    if (std::abs(k) > band) dropped += coefficients_[k + band_].norm();
  }
  return dropped;
}

double FourierSeries::norm() const {
  double total = 0.0;
  for (const auto& c : coefficients_) total += c.norm();
  return total;
}

double FourierSeries::max_coefficient_norm() const {
  double best = 0.0;
  for (const auto& c : coefficients_) best = std::max(best, c.norm());
  return best;
}

Complex FourierSeries::scalar_coefficient(int k) const {
  if (dim_ != 1) throw DomainError("FourierSeries: scalar_coefficient on a matrix series");
  if (std::abs(k) > band_) return 0.0;
  return coefficients_[k + band_](0, 0);
}

FourierSeries operator*(Complex factor, const FourierSeries& series) {
  return series.scaled(factor);
}

}  // namespace symcalc
