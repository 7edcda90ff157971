#include "symcalc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "symcalc/error.hpp"

namespace symcalc {

// ---------------------------------------------------------------------------
// FourierMatrix

FourierMatrix FourierMatrix::dense(int mode_cutoff, int fiber_dim, CMatrix entries) {
  FourierMatrix m(mode_cutoff, fiber_dim);
  if (entries.rows() != m.size() || entries.cols() != m.size()) {
    throw DomainError("FourierMatrix: dense entries have the wrong shape");
  }
  m.dense_ = std::move(entries);
  return m;
}

FourierMatrix FourierMatrix::block_diagonal(int mode_cutoff, int fiber_dim,
                                            std::vector<CMatrix> blocks) {
  FourierMatrix m(mode_cutoff, fiber_dim);
  if (blocks.size() != static_cast<std::size_t>(2 * mode_cutoff + 1)) {
    throw DomainError("FourierMatrix: expected one block per mode");
  }
  for (const auto& b : blocks) {
    if (b.rows() != fiber_dim || b.cols() != fiber_dim) {
      throw DomainError("FourierMatrix: block has the wrong shape");
    }
  }
  m.blocks_ = std::move(blocks);
  return m;
}

FourierMatrix FourierMatrix::identity(int mode_cutoff, int fiber_dim) {
  return block_diagonal(mode_cutoff, fiber_dim,
                        std::vector<CMatrix>(2 * mode_cutoff + 1,
                                             CMatrix::Identity(fiber_dim, fiber_dim)));
}

CMatrix FourierMatrix::block(int row_mode, int col_mode) const {
  if (std::abs(row_mode) > mode_cutoff_ || std::abs(col_mode) > mode_cutoff_) {
    throw DomainError("FourierMatrix: mode outside cutoff");
  }
  if (dense_) {
    return dense_->block(index(row_mode, 0), index(col_mode, 0), fiber_dim_, fiber_dim_);
  }
  if (row_mode != col_mode) return CMatrix::Zero(fiber_dim_, fiber_dim_);
  return blocks_[row_mode + mode_cutoff_];
}

CMatrix FourierMatrix::to_dense() const {
  if (dense_) return *dense_;
  CMatrix out = CMatrix::Zero(size(), size());
  for (int k = -mode_cutoff_; k <= mode_cutoff_; ++k) {
    out.block(index(k, 0), index(k, 0), fiber_dim_, fiber_dim_) = blocks_[k + mode_cutoff_];
  }
  return out;
}

Complex FourierMatrix::trace() const {
  if (dense_) return dense_->trace();
  Complex t = 0.0;
  for (const auto& b : blocks_) t += b.trace();
  return t;
}

namespace {
void require_same_shape(const FourierMatrix& a, const FourierMatrix& b) {
  if (a.mode_cutoff() != b.mode_cutoff() || a.fiber_dim() != b.fiber_dim()) {
    throw DomainError("FourierMatrix: shape mismatch");
  }
}
}  // namespace

FourierMatrix FourierMatrix::operator*(const FourierMatrix& rhs) const {
  require_same_shape(*this, rhs);
  if (is_block_diagonal() && rhs.is_block_diagonal()) {
    std::vector<CMatrix> out(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) out[i] = blocks_[i] * rhs.blocks_[i];
    return block_diagonal(mode_cutoff_, fiber_dim_, std::move(out));
  }
  if (is_block_diagonal()) {
    CMatrix out = *rhs.dense_;
    for (int k = -mode_cutoff_; k <= mode_cutoff_; ++k) {
      const int r = index(k, 0);
      out.middleRows(r, fiber_dim_) = blocks_[k + mode_cutoff_] * rhs.dense_->middleRows(r, fiber_dim_);
    }
    return dense(mode_cutoff_, fiber_dim_, std::move(out));
  }
  if (rhs.is_block_diagonal()) {
    CMatrix out = *dense_;
    for (int k = -mode_cutoff_; k <= mode_cutoff_; ++k) {
      const int c = index(k, 0);
      out.middleCols(c, fiber_dim_) = dense_->middleCols(c, fiber_dim_) * rhs.blocks_[k + mode_cutoff_];
    }
    return dense(mode_cutoff_, fiber_dim_, std::move(out));
  }
  return dense(mode_cutoff_, fiber_dim_, (*dense_) * (*rhs.dense_));
}

FourierMatrix FourierMatrix::operator+(const FourierMatrix& rhs) const {
  require_same_shape(*this, rhs);
  if (is_block_diagonal() && rhs.is_block_diagonal()) {
    std::vector<CMatrix> out(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) out[i] = blocks_[i] + rhs.blocks_[i];
    return block_diagonal(mode_cutoff_, fiber_dim_, std::move(out));
  }
  return dense(mode_cutoff_, fiber_dim_, to_dense() + rhs.to_dense());
}

FourierMatrix FourierMatrix::operator-(const FourierMatrix& rhs) const {
  return *this + rhs.scaled(-1.0);
}

FourierMatrix FourierMatrix::scaled(Complex factor) const {
  FourierMatrix out = *this;
  if (out.dense_) *out.dense_ *= factor;
  for (auto& b : out.blocks_) b *= factor;
  return out;
}

FourierMatrix FourierMatrix::fiber_traced() const {
  if (is_block_diagonal()) {
    std::vector<CMatrix> out(blocks_.size(), CMatrix::Zero(1, 1));
    for (std::size_t i = 0; i < blocks_.size(); ++i) out[i](0, 0) = blocks_[i].trace();
    return block_diagonal(mode_cutoff_, 1, std::move(out));
  }
  const int n = 2 * mode_cutoff_ + 1;
  CMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out(r, c) = dense_->block(r * fiber_dim_, c * fiber_dim_, fiber_dim_, fiber_dim_).trace();
    }
  }
  return dense(mode_cutoff_, 1, std::move(out));
}

// ---------------------------------------------------------------------------
// Quantization

Cutoff default_cutoff() {
  return [](int k) { return k == 0 ? 0.0 : 1.0; };
}

namespace {

void check_quantize_args(const ClassicalSymbol& a, int mode_cutoff, const Cutoff& psi) {
  if (mode_cutoff < a.band()) {
    throw DomainError("quantize: cutoff N = " + std::to_string(mode_cutoff) +
                      " cannot hold symbol band " + std::to_string(a.band()));
  }
  if (psi(0) != 0.0) throw DomainError("quantize: cutoff must vanish at xi = 0");
}

/// Symbol at the integer cotangent value k != 0, x-mode m, summed over components.
CMatrix symbol_mode_at(const ClassicalSymbol& a, int m, int k) {
  const Sheet sheet = k > 0 ? Sheet::Plus : Sheet::Minus;
  CMatrix value = CMatrix::Zero(a.fiber_dim(), a.fiber_dim());
  const double abs_k = std::abs(k);
  for (const auto& c : a.components()) {
    const auto& series = c.sheet(sheet);
    if (std::abs(m) > series.band()) continue;
    value += series.at(m) * std::pow(abs_k, c.degree.value());
  }
  return value;
}

}  // namespace

FourierMatrix quantize(const ClassicalSymbol& a, int mode_cutoff, const Cutoff& psi) {
  check_quantize_args(a, mode_cutoff, psi);
  const int d = a.fiber_dim();
  if (a.band() == 0) {
    return FourierMatrix::block_diagonal(mode_cutoff, d, quantize_diagonal(a, mode_cutoff, psi));
  }
  const int n = (2 * mode_cutoff + 1) * d;
  CMatrix entries = CMatrix::Zero(n, n);
  for (int k = -mode_cutoff; k <= mode_cutoff; ++k) {
    const double cut = psi(k);
    if (cut == 0.0) continue;
    for (int m = -a.band(); m <= a.band(); ++m) {
      const int row = k + m;
      if (std::abs(row) > mode_cutoff) continue;
      entries.block((row + mode_cutoff) * d, (k + mode_cutoff) * d, d, d) =
          cut * symbol_mode_at(a, m, k);
    }
  }
  return FourierMatrix::dense(mode_cutoff, d, std::move(entries));
}

std::vector<CMatrix> quantize_diagonal(const ClassicalSymbol& a, int mode_cutoff,
                                       const Cutoff& psi) {
  check_quantize_args(a, mode_cutoff, psi);
  const int d = a.fiber_dim();
  std::vector<CMatrix> blocks(2 * mode_cutoff + 1, CMatrix::Zero(d, d));
  for (int k = -mode_cutoff; k <= mode_cutoff; ++k) {
    const double cut = psi(k);
    if (cut == 0.0) continue;
    blocks[k + mode_cutoff] = cut * symbol_mode_at(a, 0, k);
  }
  return blocks;
}

FourierMatrix weight_matrix(double s, int mode_cutoff, int fiber_dim, double kernel_rule) {
  const WeightSpec spec{s, kernel_rule};
  std::vector<CMatrix> blocks;
  blocks.reserve(2 * mode_cutoff + 1);
  for (int k = -mode_cutoff; k <= mode_cutoff; ++k) {
    blocks.push_back(spec.multiplier(k) * CMatrix::Identity(fiber_dim, fiber_dim));
  }
  return FourierMatrix::block_diagonal(mode_cutoff, fiber_dim, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Heat traces

namespace {

struct Eigensystem {
  CMatrix vectors;
  CMatrix inverse_vectors;
  std::vector<double> values;
};

Eigensystem real_spectrum_decomposition(const CMatrix& q) {
  Eigensystem sys;
  const auto n = q.rows();
  if (q.isDiagonal(0.0)) {
    sys.vectors = CMatrix::Identity(n, n);
    sys.inverse_vectors = sys.vectors;
    for (Eigen::Index i = 0; i < n; ++i) sys.values.push_back(q(i, i).real());
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(q(i, i).imag()) > 1e-12 * (1.0 + std::abs(q(i, i)))) {
        throw NumericalError("heat trace: weight has a non-real eigenvalue");
      }
    }
    return sys;
  }
  const double q_norm = q.cwiseAbs().maxCoeff();
  if ((q - q.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * q_norm) {
    const CMatrix hermitian = 0.5 * (q + q.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("heat trace: eigendecomposition of the weight failed");
    }
    sys.vectors = solver.eigenvectors();
    sys.inverse_vectors = sys.vectors.adjoint();
    for (Eigen::Index i = 0; i < n; ++i) sys.values.push_back(solver.eigenvalues()(i));
    return sys;
  }
  CVector values;
  if (q.imag().isZero(0.0)) {
    // Real weights (e.g. conjugated by a real gauge) keep the cheaper real Schur form.
    Eigen::EigenSolver<Eigen::MatrixXd> solver(q.real());
    if (solver.info() != Eigen::Success) {
      throw NumericalError("heat trace: eigendecomposition of the weight failed");
    }
    values = solver.eigenvalues();
    sys.vectors = solver.eigenvectors();
  } else {
    Eigen::ComplexEigenSolver<CMatrix> solver(q);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("heat trace: eigendecomposition of the weight failed");
    }
    values = solver.eigenvalues();
    sys.vectors = solver.eigenvectors();
  }
  const double scale = values.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(values(i).imag()) > 1e-8 * (1.0 + scale)) {
      throw NumericalError("heat trace: weight has a non-real eigenvalue");
    }
    sys.values.push_back(values(i).real());
  }
  Eigen::PartialPivLU<CMatrix> lu(sys.vectors);
  sys.inverse_vectors = lu.inverse();
  const double cond_residual =
      (sys.inverse_vectors * sys.vectors - CMatrix::Identity(n, n)).norm();
  if (!std::isfinite(cond_residual) || cond_residual > 1e-6 * n) {
    throw NumericalError("heat trace: weight eigenbasis is ill-conditioned");
  }
  return sys;
}

}  // namespace

HeatTrace::HeatTrace(const FourierMatrix& weight)
    : mode_cutoff_(weight.mode_cutoff()),
      fiber_dim_(weight.fiber_dim()),
      block_diagonal_(weight.is_block_diagonal()) {
  if (block_diagonal_) {
    for (int k = -mode_cutoff_; k <= mode_cutoff_; ++k) {
      Eigensystem sys = real_spectrum_decomposition(weight.diagonal_block(k));
      block_vectors_.push_back(std::move(sys.vectors));
      block_inverse_vectors_.push_back(std::move(sys.inverse_vectors));
      eigenvalues_.insert(eigenvalues_.end(), sys.values.begin(), sys.values.end());
    }
  } else {
    Eigensystem sys = real_spectrum_decomposition(weight.to_dense());
    vectors_ = std::move(sys.vectors);
    inverse_vectors_ = std::move(sys.inverse_vectors);
    eigenvalues_ = std::move(sys.values);
  }
  min_eigenvalue_ = *std::min_element(eigenvalues_.begin(), eigenvalues_.end());
  max_eigenvalue_ = *std::max_element(eigenvalues_.begin(), eigenvalues_.end());
}

HeatTrace::Projected HeatTrace::project(const FourierMatrix& a) const {
  if (a.mode_cutoff() != mode_cutoff_ || a.fiber_dim() != fiber_dim_) {
    throw DomainError("heat trace: operator and weight have different shapes");
  }
  Projected p;
  p.eigenvalues = eigenvalues_;
  p.weights.reserve(eigenvalues_.size());
  if (block_diagonal_) {
    // Tr(A e^{-eps Q}) only sees the diagonal blocks of A when Q is block diagonal.
    for (int k = -mode_cutoff_; k <= mode_cutoff_; ++k) {
      const std::size_t i = k + mode_cutoff_;
      const CMatrix local = block_inverse_vectors_[i] * a.diagonal_block(k) * block_vectors_[i];
      for (int j = 0; j < fiber_dim_; ++j) p.weights.push_back(local(j, j));
    }
    return p;
  }
  const CMatrix left = inverse_vectors_ * a.to_dense();
  for (Eigen::Index i = 0; i < left.rows(); ++i) {
    p.weights.push_back(left.row(i).transpose().cwiseProduct(vectors_.col(i)).sum());
  }
  return p;
}

Complex HeatTrace::Projected::at(double eps) const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) sum += weights[i] * std::exp(-eps * eigenvalues[i]);
  return sum;
}

Complex HeatTrace::operator()(const FourierMatrix& a, double eps) const {
  if (!(eps > 0.0)) throw DomainError("heat trace: eps must be positive");
  return project(a).at(eps);
}

Complex heat_trace(const FourierMatrix& a, const FourierMatrix& weight, double eps) {
  return HeatTrace(weight)(a, eps);
}

HeatSweep heat_trace_sweep(const FourierMatrix& a, const FourierMatrix& weight,
                           std::span<const double> epsilon_grid) {
  if (epsilon_grid.empty()) throw DomainError("heat sweep: empty eps grid");
  for (double eps : epsilon_grid) {
    if (!(eps > 0.0)) throw DomainError("heat sweep: eps grid must be positive");
  }
  const HeatTrace heat(weight);
  const HeatTrace::Projected projected = heat.project(a);
  HeatSweep sweep;
  sweep.samples.reserve(epsilon_grid.size());
  for (double eps : epsilon_grid) sweep.samples.push_back({eps, projected.at(eps)});

  const double eps_min = *std::min_element(epsilon_grid.begin(), epsilon_grid.end());
  const double boundary_weight = std::exp(-eps_min * heat.max_eigenvalue());
  if (boundary_weight > 1e-12) {
    std::ostringstream msg;
    msg << "spectral truncation not negligible: exp(-eps_min * max eigenvalue) = "
        << boundary_weight << " at eps_min = " << eps_min << "; increase the mode cutoff";
    sweep.warnings.push_back(msg.str());
  }
  return sweep;
}

std::vector<double> log_spaced_grid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) {
    throw DomainError("log_spaced_grid: need 0 < lo < hi and count >= 2");
  }
  std::vector<double> grid(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) grid[i] = lo * std::exp(step * i);
  grid.back() = hi;
  return grid;
}

// ---------------------------------------------------------------------------
// Asymptotic fit

Complex AsymptoticFit::leading() const {
  return coefficients.empty() ? finite_part : coefficients.front();
}

double AsymptoticFit::leading_error() const {
  return coefficient_errors.empty() ? finite_part_error : coefficient_errors.front();
}

AsymptoticFit fit_expansion(std::span<const HeatSample> samples, const FitSpec& spec) {
  if (spec.weight_order <= 0.0) throw DomainError("fit: weight order q must be positive");
  if (spec.order < -spec.dimension) {
    throw DomainError("fit: order below -n has no divergent expansion");
  }
  if (spec.remainder_powers < 0) throw DomainError("fit: negative remainder_powers");

  AsymptoticFit fit;
  for (int j = 0; j <= spec.order + spec.dimension; ++j) {
    const double e = static_cast<double>(j - spec.order - spec.dimension) / spec.weight_order;
    if (std::abs(e) > 1e-12) fit.exponents.push_back(e);
  }
  fit.has_log = spec.with_log || spec.order == -spec.dimension;
  for (int r = 1; r <= spec.remainder_powers; ++r) {
    fit.remainder_exponents.push_back(r / spec.weight_order);
  }

  const std::size_t n_div = fit.exponents.size();
  const std::size_t log_col = n_div;
  const std::size_t const_col = n_div + (fit.has_log ? 1 : 0);
  const std::size_t n_cols = const_col + 1 + fit.remainder_exponents.size();
  if (samples.size() < n_cols + 2) {
    throw DomainError("fit: need at least " + std::to_string(n_cols + 2) + " samples, got " +
                      std::to_string(samples.size()));
  }

  const auto n_rows = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(n_rows, static_cast<Eigen::Index>(n_cols));
  Eigen::MatrixXd rhs(n_rows, 2);
  for (Eigen::Index i = 0; i < n_rows; ++i) {
    const double eps = samples[i].epsilon;
    if (!(eps > 0.0)) throw DomainError("fit: eps must be positive");
    fit.epsilon_grid.push_back(eps);
    for (std::size_t j = 0; j < n_div; ++j) design(i, j) = std::pow(eps, fit.exponents[j]);
    if (fit.has_log) design(i, log_col) = std::log(eps);
    design(i, const_col) = 1.0;
    for (std::size_t r = 0; r < fit.remainder_exponents.size(); ++r) {
      design(i, const_col + 1 + r) = std::pow(eps, fit.remainder_exponents[r]);
    }
    rhs(i, 0) = samples[i].value.real();
    rhs(i, 1) = samples[i].value.imag();
  }

  // Column equilibration keeps eps^{-1/2} and eps^{1} columns on one scale.
  Eigen::VectorXd col_scale = design.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < col_scale.size(); ++j) {
    if (col_scale(j) == 0.0) throw NumericalError("fit: zero basis column");
  }
  const Eigen::MatrixXd scaled = design * col_scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-13);
  if (qr.rank() < static_cast<Eigen::Index>(n_cols)) {
    throw NumericalError("fit: rank-deficient design matrix (eps grid too narrow)");
  }
  const Eigen::MatrixXd solution_scaled = qr.solve(rhs);
  const Eigen::MatrixXd solution = col_scale.cwiseInverse().asDiagonal() * solution_scaled;
  const Eigen::MatrixXd residual = design * solution - rhs;
  fit.residual = residual.norm();

  // Standard errors from the residual variance and (X^T X)^{-1}.
  const double dof = std::max<double>(1.0, static_cast<double>(n_rows) - n_cols);
  const double sigma2 = residual.squaredNorm() / dof;
  const Eigen::MatrixXd normal = scaled.transpose() * scaled;
  const Eigen::MatrixXd normal_inv = normal.ldlt().solve(Eigen::MatrixXd::Identity(n_cols, n_cols));
  auto error_of = [&](std::size_t j) {
    return std::sqrt(std::max(0.0, sigma2 * normal_inv(j, j))) / col_scale(j);
  };
  auto coef = [&](std::size_t j) { return Complex(solution(j, 0), solution(j, 1)); };

  for (std::size_t j = 0; j < n_div; ++j) {
    fit.coefficients.push_back(coef(j));
    fit.coefficient_errors.push_back(error_of(j));
  }
  if (fit.has_log) {
    fit.log_coefficient = coef(log_col);
    fit.log_coefficient_error = error_of(log_col);
  }
  fit.finite_part = coef(const_col);
  fit.finite_part_error = error_of(const_col);
  for (std::size_t r = 0; r < fit.remainder_exponents.size(); ++r) {
    fit.remainder_coefficients.push_back(coef(const_col + 1 + r));
  }
  if (fit.residual > spec.residual_threshold) {
    throw NumericalError("fit: residual " + std::to_string(fit.residual) + " above threshold " +
                         std::to_string(spec.residual_threshold));
  }
  return fit;
}

// ---------------------------------------------------------------------------
// Conditional trace

ConditionalTrace conditional_trace(std::span<const CMatrix> diagonal_blocks) {
  if (diagonal_blocks.size() % 2 == 0) {
    throw DomainError("conditional_trace: expected 2N+1 diagonal blocks");
  }
  const int n = static_cast<int>(diagonal_blocks.size() / 2);
  if (n < 4) throw DomainError("conditional_trace: cutoff too small for a tail estimate");
  auto partial = [&](int cutoff) {
    Complex s = 0.0;
    for (int k = -cutoff; k <= cutoff; ++k) s += diagonal_blocks[k + n].trace();
    return s;
  };
  ConditionalTrace out;
  out.mode_cutoff = n;
  const Complex s_quarter = partial(n / 4);
  const Complex s_half = partial(n / 2);
  out.value = partial(n);
  const Complex d1 = out.value - s_half;
  const Complex d2 = s_half - s_quarter;
  const double floor = 1e-13 * (1.0 + std::abs(out.value));
  if (std::abs(d1) <= floor) return out;
  if (std::abs(d2) <= floor) {
    out.diverged = true;
    return out;
  }
  const Complex ratio = d1 / d2;
  if (std::abs(ratio) > 0.75) {
    out.diverged = true;
    return out;
  }
  out.tail_estimate = d1 * ratio / (1.0 - ratio);
  return out;
}

ConditionalTrace conditional_trace(const FourierMatrix& a) {
  std::vector<CMatrix> blocks;
  blocks.reserve(2 * a.mode_cutoff() + 1);
  for (int k = -a.mode_cutoff(); k <= a.mode_cutoff(); ++k) blocks.push_back(a.diagonal_block(k));
  return conditional_trace(blocks);
}

// ---------------------------------------------------------------------------
// Composition consistency

double windowed_norm(const FourierMatrix& a, const ModeWindow& window) {
  if (window.low < 0 || window.high < window.low || window.high > a.mode_cutoff()) {
    throw DomainError("windowed_norm: invalid mode window");
  }
  std::vector<int> modes;
  for (int k = -window.high; k <= window.high; ++k) {
    if (std::abs(k) >= window.low) modes.push_back(k);
  }
  const int d = a.fiber_dim();
  const int m = static_cast<int>(modes.size()) * d;
  CMatrix sub(m, m);
  for (std::size_t r = 0; r < modes.size(); ++r) {
    for (std::size_t c = 0; c < modes.size(); ++c) {
      sub.block(r * d, c * d, d, d) = a.block(modes[r], modes[c]);
    }
  }
  if (sub.isZero(0.0)) return 0.0;
  Eigen::BDCSVD<CMatrix> svd(sub);
  return svd.singularValues()(0);
}

double composition_defect(const ClassicalSymbol& a, const ClassicalSymbol& b, int depth,
                          int mode_cutoff, std::optional<ModeWindow> window) {
  const ModeWindow w = window.value_or(ModeWindow::interior(mode_cutoff));
  if (w.high + a.band() + b.band() > mode_cutoff) {
    throw DomainError("composition_defect: window plus symbol bands exceeds the cutoff");
  }
  const ClassicalSymbol ab = compose(a, b, depth);
  const FourierMatrix product = quantize(a, mode_cutoff) * quantize(b, mode_cutoff);
  return windowed_norm(quantize(ab, mode_cutoff) - product, w);
}

}  // namespace symcalc
