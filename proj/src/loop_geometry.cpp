#include "symcalc/loop_geometry.hpp"

#include <cmath>

#include "symcalc/error.hpp"
#include "symcalc/traces.hpp"

namespace symcalc {

LoopElement::LoopElement(int algebra_dim, int mode_cutoff)
    : algebra_dim_(algebra_dim),
      mode_cutoff_(mode_cutoff),
      coefficients_(2 * mode_cutoff + 1, CVector::Zero(algebra_dim)) {
  if (algebra_dim < 1) throw DomainError("LoopElement: algebra dimension must be positive");
  if (mode_cutoff < 0) throw DomainError("LoopElement: negative mode cutoff");
}

LoopElement LoopElement::constant(const CVector& value) {
  LoopElement u(static_cast<int>(value.size()), 0);
  u.at(0) = value;
  return u;
}

LoopElement LoopElement::random_real(int algebra_dim, int mode_cutoff, std::mt19937_64& rng,
                                     double decay) {
  std::normal_distribution<double> normal(0.0, 1.0);
  LoopElement u(algebra_dim, mode_cutoff);
  for (int i = 0; i < algebra_dim; ++i) u.at(0)(i) = normal(rng);
  for (int k = 1; k <= mode_cutoff; ++k) {
    const double scale = std::pow(decay, k);
    for (int i = 0; i < algebra_dim; ++i) {
      const Complex c(scale * normal(rng), scale * normal(rng));
      u.at(k)(i) = c;
      u.at(-k)(i) = std::conj(c);
    }
  }
  return u;
}

CVector LoopElement::coefficient(int k) const {
  if (std::abs(k) > mode_cutoff_) return CVector::Zero(algebra_dim_);
  return coefficients_[k + mode_cutoff_];
}

CVector& LoopElement::at(int k) {
  if (std::abs(k) > mode_cutoff_) throw DomainError("LoopElement: mode outside cutoff");
  return coefficients_[k + mode_cutoff_];
}

const CVector& LoopElement::at(int k) const {
  if (std::abs(k) > mode_cutoff_) throw DomainError("LoopElement: mode outside cutoff");
  return coefficients_[k + mode_cutoff_];
}

CVector LoopElement::evaluate(double x) const {
  CVector value = CVector::Zero(algebra_dim_);
  for (int k = -mode_cutoff_; k <= mode_cutoff_; ++k) {
    value += coefficients_[k + mode_cutoff_] * std::polar(1.0, k * x);
  }
  return value;
}

bool LoopElement::is_real(double tol) const {
  for (int k = 0; k <= mode_cutoff_; ++k) {
    if ((at(-k) - at(k).conjugate()).norm() > tol) return false;
  }
  return true;
}

double LoopElement::norm() const {
  double total = 0.0;
  for (const auto& c : coefficients_) total += c.squaredNorm();
  return std::sqrt(total);
}

LoopElement LoopElement::operator+(const LoopElement& rhs) const {
  if (algebra_dim_ != rhs.algebra_dim_) throw DomainError("LoopElement: dimension mismatch");
  LoopElement out(algebra_dim_, std::max(mode_cutoff_, rhs.mode_cutoff_));
  for (int k = -mode_cutoff_; k <= mode_cutoff_; ++k) out.at(k) += at(k);
  for (int k = -rhs.mode_cutoff_; k <= rhs.mode_cutoff_; ++k) out.at(k) += rhs.at(k);
  return out;
}

LoopElement LoopElement::operator-(const LoopElement& rhs) const { return *this + rhs.scaled(-1.0); }

LoopElement LoopElement::scaled(Complex factor) const {
  LoopElement out = *this;
  for (auto& c : out.coefficients_) c *= factor;
  return out;
}

LoopElement pointwise_bracket(const LieAlgebra& g, const LoopElement& u, const LoopElement& v) {
  if (u.algebra_dim() != g.dim() || v.algebra_dim() != g.dim()) {
    throw DomainError("pointwise_bracket: loop and algebra dimensions differ");
  }
  LoopElement out(g.dim(), u.mode_cutoff() + v.mode_cutoff());
  for (int a = -u.mode_cutoff(); a <= u.mode_cutoff(); ++a) {
    const CMatrix ad_a = g.ad(u.at(a));
    for (int b = -v.mode_cutoff(); b <= v.mode_cutoff(); ++b) out.at(a + b) += ad_a * v.at(b);
  }
  return out;
}

FourierSeries ad_series(const LieAlgebra& g, const LoopElement& u) {
  if (u.algebra_dim() != g.dim()) throw DomainError("ad_series: dimension mismatch");
  FourierSeries series(g.dim(), u.mode_cutoff());
  for (int k = -u.mode_cutoff(); k <= u.mode_cutoff(); ++k) series.at(k) = g.ad(u.at(k));
  return series;
}

ClassicalSymbol ad_symbol(const LieAlgebra& g, const LoopElement& u, int depth) {
  return multiplication_symbol(ad_series(g, u), depth);
}

LoopElement sobolev_apply(double s, const LoopElement& u) {
  const WeightSpec weight{s, 1.0};
  LoopElement out = u;
  for (int k = -u.mode_cutoff(); k <= u.mode_cutoff(); ++k) out.at(k) *= weight.multiplier(k);
  return out;
}

ClassicalSymbol theta_conjugation(const LieAlgebra& g, double s, const LoopElement& u, int depth) {
  const ClassicalSymbol q_minus = weight_power_symbol({-s, 1.0}, g.dim(), depth);
  const ClassicalSymbol q_plus = weight_power_symbol({s, 1.0}, g.dim(), depth);
  return compose(compose(q_minus, ad_symbol(g, u, depth), depth), q_plus, depth);
}

ClassicalSymbol theta_levi_civita(const LieAlgebra& g, double s, const LoopElement& u, int depth) {
  if (!(s > 0.0)) throw DomainError("theta_levi_civita: s must be positive");
  if (std::abs(2.0 * s - std::round(2.0 * s)) > 1e-12) {
    throw DomainError("theta_levi_civita: 2s must be an integer so that all terms share one "
                      "degree lattice");
  }
  const ClassicalSymbol ad_u = ad_symbol(g, u, depth);
  const ClassicalSymbol conjugated = theta_conjugation(g, s, u, depth);
  const ClassicalSymbol q_minus = weight_power_symbol({-s, 1.0}, g.dim(), depth);
  const ClassicalSymbol lowered = compose(q_minus, ad_symbol(g, sobolev_apply(s, u), depth), depth);
  return scale(subtract(add(ad_u, conjugated), lowered), 0.5);
}

ClassicalSymbol Connection::operator()(const LieAlgebra& g, const LoopElement& u) const {
  switch (kind) {
    case ConnectionKind::LeviCivita:
      return theta_levi_civita(g, s, u, depth);
    case ConnectionKind::Conjugation:
      return theta_conjugation(g, s, u, depth);
  }
  throw DomainError("Connection: unknown kind");
}

namespace {

/// Block (m, n) of the exact connection operator; zero when |m - n| exceeds the loop cutoff.
class ConnectionBlocks {
 public:
  ConnectionBlocks(const LieAlgebra& g, const Connection& theta, const LoopElement& u)
      : theta_(theta), weight_{theta.s, 1.0}, cutoff_(u.mode_cutoff()) {
    for (int k = -cutoff_; k <= cutoff_; ++k) {
      ad_.push_back(g.ad(u.at(k)));
      ad_raised_.push_back(g.ad(u.at(k) * weight_.multiplier(k)));
    }
  }

  int cutoff() const { return cutoff_; }

  CMatrix operator()(int m, int n) const {
    const int k = m - n;
    const auto i = static_cast<std::size_t>(k + cutoff_);
    const double lm = weight_.multiplier(m);
    const double ln = weight_.multiplier(n);
    if (theta_.kind == ConnectionKind::Conjugation) return ad_[i] * (ln / lm);
    return 0.5 * (ad_[i] * (1.0 + ln / lm) - ad_raised_[i] / lm);
  }

 private:
  Connection theta_;
  WeightSpec weight_;
  int cutoff_;
  std::vector<CMatrix> ad_;
  std::vector<CMatrix> ad_raised_;
};

}  // namespace

FourierMatrix Connection::matrix(const LieAlgebra& g, const LoopElement& u, int mode_cutoff) const {
  const ConnectionBlocks blocks(g, *this, u);
  const int d = g.dim();
  const int n = (2 * mode_cutoff + 1) * d;
  CMatrix entries = CMatrix::Zero(n, n);
  for (int col = -mode_cutoff; col <= mode_cutoff; ++col) {
    for (int k = -blocks.cutoff(); k <= blocks.cutoff(); ++k) {
      const int row = col + k;
      if (std::abs(row) > mode_cutoff) continue;
      entries.block((row + mode_cutoff) * d, (col + mode_cutoff) * d, d, d) = blocks(row, col);
    }
  }
  return FourierMatrix::dense(mode_cutoff, d, std::move(entries));
}

ClassicalSymbol curvature(const LieAlgebra& g, const Connection& theta, const LoopElement& u,
                          const LoopElement& v) {
  const ClassicalSymbol tu = theta(g, u);
  const ClassicalSymbol tv = theta(g, v);
  const ClassicalSymbol t_bracket = theta(g, pointwise_bracket(g, u, v));
  return subtract(commutator(tu, tv, theta.depth), t_bracket);
}

std::vector<CMatrix> curvature_diagonal_blocks(const LieAlgebra& g, const Connection& theta,
                                               const LoopElement& u, const LoopElement& v,
                                               int mode_cutoff) {
  const ConnectionBlocks bu(g, theta, u);
  const ConnectionBlocks bv(g, theta, v);
  const ConnectionBlocks bw(g, theta, pointwise_bracket(g, u, v));
  const int reach = std::min(bu.cutoff(), bv.cutoff());
  std::vector<CMatrix> out;
  out.reserve(2 * mode_cutoff + 1);
  for (int m = -mode_cutoff; m <= mode_cutoff; ++m) {
    CMatrix block = -bw(m, m);
    for (int k = -reach; k <= reach; ++k) {
      const int n = m - k;
      block += bu(m, n) * bv(n, m) - bv(m, n) * bu(n, m);
    }
    out.push_back(std::move(block));
  }
  return out;
}

Complex weighted_first_chern(const LieAlgebra& g, const LoopElement& u, const LoopElement& v,
                             int depth, double s) {
  if (depth < 1) throw DomainError("weighted_first_chern: curvature depth must be at least 1");
  const ClassicalSymbol omega = curvature(g, {ConnectionKind::LeviCivita, s, depth}, u, v);
  return CosphereDistribution::uniform_both()(
      component_trace_function(omega, HalfInt::integer(-1)));
}

Complex ce_differential(const LieAlgebra& g, const LoopTwoForm& beta, const LoopElement& u,
                        const LoopElement& v, const LoopElement& w, double antisymmetry_tol) {
  const Complex uv = beta(u, v);
  const Complex vu = beta(v, u);
  const Complex uu = beta(u, u);
  const double scale = std::max({1.0, std::abs(uv), std::abs(vu)});
  if (std::abs(uv + vu) > antisymmetry_tol * scale || std::abs(uu) > antisymmetry_tol * scale) {
    throw DomainError("ce_differential: the 2-form is not antisymmetric");
  }
  return -beta(pointwise_bracket(g, u, v), w) + beta(pointwise_bracket(g, u, w), v) -
         beta(pointwise_bracket(g, v, w), u);
}

Complex ce_differential(const LieAlgebra& g, const LoopOneForm& alpha, const LoopElement& u,
                        const LoopElement& v) {
  return -alpha(pointwise_bracket(g, u, v));
}

Complex h_s_inner(const LieAlgebra& g, double s, const LoopElement& u, const LoopElement& v) {
  if (u.algebra_dim() != g.dim() || v.algebra_dim() != g.dim()) {
    throw DomainError("h_s_inner: dimension mismatch");
  }
  const WeightSpec weight{s, 1.0};
  const int cutoff = std::min(u.mode_cutoff(), v.mode_cutoff());
  const CMatrix gram = g.gram().cast<Complex>();
  Complex total = 0.0;
  for (int k = -cutoff; k <= cutoff; ++k) {
    total += weight.multiplier(k) * (u.at(k).adjoint() * gram * v.at(k))(0, 0);
  }
  return kTwoPi * total;
}

}  // namespace symcalc
