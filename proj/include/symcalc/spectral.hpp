#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symcalc/symbol.hpp"

namespace symcalc {

/// Fourier-mode truncation of an operator on C^d-valued functions on the circle,
/// modes |k| <= N. Row/column index (k + N) * d + i.
///
/// Stored either densely or, when the operator does not couple distinct modes,
/// as one d x d block per mode.
class FourierMatrix {
 public:
  static FourierMatrix dense(int mode_cutoff, int fiber_dim, CMatrix entries);
  /// blocks[k + N] acts on mode k.
  static FourierMatrix block_diagonal(int mode_cutoff, int fiber_dim, std::vector<CMatrix> blocks);
  static FourierMatrix identity(int mode_cutoff, int fiber_dim);

  int mode_cutoff() const { return mode_cutoff_; }
  int fiber_dim() const { return fiber_dim_; }
  int size() const { return (2 * mode_cutoff_ + 1) * fiber_dim_; }
  int index(int mode, int fiber) const { return (mode + mode_cutoff_) * fiber_dim_ + fiber; }
  bool is_block_diagonal() const { return !dense_.has_value(); }

  /// Block (row mode, column mode).
  CMatrix block(int row_mode, int col_mode) const;
  CMatrix diagonal_block(int mode) const { return block(mode, mode); }
  CMatrix to_dense() const;

  Complex trace() const;
  FourierMatrix operator*(const FourierMatrix& rhs) const;
  FourierMatrix operator+(const FourierMatrix& rhs) const;
  FourierMatrix operator-(const FourierMatrix& rhs) const;
  FourierMatrix scaled(Complex factor) const;
  /// Fiber trace of each block; result has fiber dimension 1. Only block-diagonal
  /// coupling is preserved exactly, dense matrices are traced block by block.
  FourierMatrix fiber_traced() const;

 private:
  FourierMatrix(int mode_cutoff, int fiber_dim) : mode_cutoff_(mode_cutoff), fiber_dim_(fiber_dim) {}

  int mode_cutoff_ = 0;
  int fiber_dim_ = 1;
  std::optional<CMatrix> dense_;
  std::vector<CMatrix> blocks_;
};

/// Cutoff psi applied at integer cotangent values; psi(0) = 0 and psi = 1 for |xi| >= 1.
using Cutoff = std::function<double(int)>;
Cutoff default_cutoff();

/// Block (k', k) = psi(k) * sum_j (mode k'-k of sheet_{sign k} of sigma_{m-j}) |k|^{m-j}.
/// Requires N >= band(A).
FourierMatrix quantize(const ClassicalSymbol& a, int mode_cutoff, const Cutoff& psi = default_cutoff());

/// Only the diagonal blocks (k, k) of quantize(), for cutoffs too large for a dense matrix.
std::vector<CMatrix> quantize_diagonal(const ClassicalSymbol& a, int mode_cutoff,
                                       const Cutoff& psi = default_cutoff());

/// Diagonal multiplier |k|^{2s} Id for k != 0 and kernel_rule^s Id at k = 0.
FourierMatrix weight_matrix(double s, int mode_cutoff, int fiber_dim, double kernel_rule = 1.0);

/// Evaluates Tr(A e^{-eps Q}) for a fixed Q. For block-diagonal Q each block is
/// diagonalized on its own; otherwise Q is eigendecomposed once and A is moved
/// into the eigenbasis on first use.
class HeatTrace {
 public:
  explicit HeatTrace(const FourierMatrix& weight);

  Complex operator()(const FourierMatrix& a, double eps) const;
  /// Smallest and largest real part of the spectrum of Q.
  double min_eigenvalue() const { return min_eigenvalue_; }
  double max_eigenvalue() const { return max_eigenvalue_; }

  /// Diagonal of V^{-1} A V in the eigenbasis of Q, paired with the eigenvalues.
  struct Projected {
    std::vector<Complex> weights;
    std::vector<double> eigenvalues;
    Complex at(double eps) const;
  };
  Projected project(const FourierMatrix& a) const;

 private:
  int mode_cutoff_;
  int fiber_dim_;
  bool block_diagonal_;
  std::vector<CMatrix> block_vectors_;
  std::vector<CMatrix> block_inverse_vectors_;
  CMatrix vectors_;
  CMatrix inverse_vectors_;
  std::vector<double> eigenvalues_;
  double min_eigenvalue_ = 0.0;
  double max_eigenvalue_ = 0.0;
};

/// Tr(A e^{-eps Q}) in exact finite dimension.
Complex heat_trace(const FourierMatrix& a, const FourierMatrix& weight, double eps);

struct HeatSample {
  double epsilon;
  Complex value;
};

struct HeatSweep {
  std::vector<HeatSample> samples;
  /// Non-fatal diagnostics, e.g. spectral truncation not negligible at the smallest eps.
  std::vector<std::string> warnings;
};

HeatSweep heat_trace_sweep(const FourierMatrix& a, const FourierMatrix& weight,
                           std::span<const double> epsilon_grid);

/// count points log-spaced between lo and hi inclusive.
std::vector<double> log_spaced_grid(double lo, double hi, int count);

struct FitSpec {
  int order = 0;       // a, integer order of A
  int dimension = 1;   // n
  double weight_order = 2.0;  // q
  /// Include log(eps); forced on when a = -n.
  bool with_log = false;
  /// Extra basis functions eps^{j/q}, j = 1..remainder_powers, modelling the O(1)
  /// remainder so that it does not leak into the divergent coefficients.
  int remainder_powers = 2;
  /// NumericalError when the residual norm exceeds this.
  double residual_threshold = std::numeric_limits<double>::infinity();
};

struct AsymptoticFit {
  /// Divergent exponents (j - a - n)/q for j = 0..a+n with the exponent 0 removed
  /// (it is the finite part); coefficients[j] multiplies eps^{exponents[j]}.
  std::vector<double> exponents;
  std::vector<Complex> coefficients;
  std::vector<double> coefficient_errors;
  Complex log_coefficient = 0.0;
  double log_coefficient_error = 0.0;
  Complex finite_part = 0.0;
  double finite_part_error = 0.0;
  std::vector<double> remainder_exponents;
  std::vector<Complex> remainder_coefficients;
  /// 2-norm of the fit residual over the grid.
  double residual = 0.0;
  std::vector<double> epsilon_grid;
  bool has_log = false;

  /// Coefficient of eps^{-(a+n)/q}, the leading divergence; finite part when a = -n.
  Complex leading() const;
  double leading_error() const;
};

/// Least-squares fit of
///   sum_j a_j eps^{(j-a-n)/q} + b0 log eps + finite_part + sum_r c_r eps^{r/q}
/// over the samples. Throws NumericalError on a rank-deficient design.
AsymptoticFit fit_expansion(std::span<const HeatSample> samples, const FitSpec& spec);

struct ConditionalTrace {
  /// Symmetric partial sum over |k| <= N.
  Complex value = 0.0;
  /// Richardson estimate of the remaining tail from the N/4, N/2, N partial sums.
  Complex tail_estimate = 0.0;
  /// Partial sums grow (linearly or logarithmically) instead of settling.
  bool diverged = false;
  int mode_cutoff = 0;
};

/// Plain trace of a trace-class truncation, as symmetric partial sums of the diagonal blocks.
ConditionalTrace conditional_trace(std::span<const CMatrix> diagonal_blocks);
ConditionalTrace conditional_trace(const FourierMatrix& a);

/// Band of modes low <= |k| <= high used to compare quantized operators away from the
/// cutoff boundary and away from the low modes where the product expansion, being
/// asymptotic in |xi|, does not converge.
struct ModeWindow {
  int low = 0;
  int high = 0;
  /// Default window N/8 <= |k| <= N/2.
  static ModeWindow interior(int mode_cutoff) { return {mode_cutoff / 8, mode_cutoff / 2}; }
};

/// Spectral norm of the block of A with row and column modes inside the window.
double windowed_norm(const FourierMatrix& a, const ModeWindow& window);

/// Operator-norm defect ||Quant(compose(A,B,depth)) - Quant(A) Quant(B)|| on the window.
double composition_defect(const ClassicalSymbol& a, const ClassicalSymbol& b, int depth,
                          int mode_cutoff, std::optional<ModeWindow> window = std::nullopt);

}  // namespace symcalc
