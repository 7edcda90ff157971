#include "symcalc/form_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "symcalc/error.hpp"

namespace symcalc {

namespace {

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

int permutation_parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2;
}

void check_vectors(std::span<const CVector> vectors, std::size_t count, int dim, const char* where) {
  if (vectors.size() != count) {
    throw DomainError(std::string(where) + ": expected " + std::to_string(count) + " vectors, got " +
                      std::to_string(vectors.size()));
  }
  for (const auto& v : vectors) {
    if (v.size() != dim) throw DomainError(std::string(where) + ": vector has the wrong dimension");
  }
}

}  // namespace

AlgebraValued2Form::AlgebraValued2Form(int tangent_dim, int fiber_dim)
    : tangent_dim_(tangent_dim), fiber_dim_(fiber_dim) {
  if (tangent_dim < 1 || fiber_dim < 1) throw DomainError("AlgebraValued2Form: dimensions must be positive");
  values_.assign(static_cast<std::size_t>(tangent_dim) * tangent_dim, CMatrix::Zero(fiber_dim, fiber_dim));
}

AlgebraValued2Form AlgebraValued2Form::from_basis_values(
    const std::vector<std::vector<CMatrix>>& values) {
  const int m = static_cast<int>(values.size());
  if (m == 0 || values.front().empty()) throw DomainError("AlgebraValued2Form: empty values");
  const int d = static_cast<int>(values.front().front().rows());
  AlgebraValued2Form form(m, d);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(values[i].size()) != m) throw DomainError("AlgebraValued2Form: values must be m x m");
    for (int j = 0; j < m; ++j) {
      const CMatrix& v = values[i][j];
      if (v.rows() != d || v.cols() != d) throw DomainError("AlgebraValued2Form: inconsistent matrix sizes");
      form.values_[i * m + j] = v;
    }
  }
  if (form.antisymmetry_defect() > 1e-12) throw DomainError("AlgebraValued2Form: values are not antisymmetric");
  return form;
}

void AlgebraValued2Form::set(int i, int j, const CMatrix& value) {
  if (i < 0 || j < 0 || i >= tangent_dim_ || j >= tangent_dim_) {
    throw DomainError("AlgebraValued2Form: index out of range");
  }
  if (value.rows() != fiber_dim_ || value.cols() != fiber_dim_) {
    throw DomainError("AlgebraValued2Form: matrix has the wrong size");
  }
  if (i == j && value.norm() > 0.0) throw DomainError("AlgebraValued2Form: diagonal entries must vanish");
  values_[i * tangent_dim_ + j] = value;
  values_[j * tangent_dim_ + i] = -value;
}

CMatrix AlgebraValued2Form::operator()(const CVector& x, const CVector& y) const {
  if (x.size() != tangent_dim_ || y.size() != tangent_dim_) {
    throw DomainError("AlgebraValued2Form: vector has the wrong dimension");
  }
  CMatrix out = CMatrix::Zero(fiber_dim_, fiber_dim_);
  for (int i = 0; i < tangent_dim_; ++i) {
    if (x(i) == Complex(0.0)) continue;
    for (int j = 0; j < tangent_dim_; ++j) {
      if (y(j) == Complex(0.0)) continue;
      out += x(i) * y(j) * values_[i * tangent_dim_ + j];
    }
  }
  return out;
}

double AlgebraValued2Form::antisymmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < tangent_dim_; ++i)
    for (int j = 0; j < tangent_dim_; ++j)
      worst = std::max(worst, (on_basis(i, j) + on_basis(j, i)).cwiseAbs().maxCoeff());
  return worst;
}

CMatrix random_anti_hermitian(int n, bool traceless, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  CMatrix a = 0.5 * (m - m.adjoint());
  if (traceless) a -= (a.trace() / static_cast<double>(n)) * CMatrix::Identity(n, n);
  return a;
}

AlgebraValued2Form random_two_form(int tangent_dim, int fiber_dim, bool traceless, std::mt19937_64& rng) {
  AlgebraValued2Form form(tangent_dim, fiber_dim);
  for (int i = 0; i < tangent_dim; ++i)
    for (int j = i + 1; j < tangent_dim; ++j) form.set(i, j, random_anti_hermitian(fiber_dim, traceless, rng));
  return form;
}

CMatrix wedge_power_evaluate(const AlgebraValued2Form& omega, int k, std::span<const CVector> vectors) {
  if (k < 1) throw DomainError("wedge_power_evaluate: k must be at least 1");
  if (k > 4) throw DomainError("wedge_power_evaluate: k > 4 is not supported");
  const int arity = 2 * k;
  check_vectors(vectors, static_cast<std::size_t>(arity), omega.tangent_dim(), "wedge_power_evaluate");
  const int d = omega.fiber_dim();
  const double norm = 1.0 / (std::pow(2.0, k) * factorial(k));

  // Pair values are reused many times; tabulate them once.
  std::vector<CMatrix> pairs(static_cast<std::size_t>(arity * arity));
  for (int a = 0; a < arity; ++a)
    for (int b = 0; b < arity; ++b) pairs[a * arity + b] = omega(vectors[a], vectors[b]);

  if (k <= 3) {
    std::vector<int> perm(arity);
    std::iota(perm.begin(), perm.end(), 0);
    CMatrix total = CMatrix::Zero(d, d);
    do {
      CMatrix product = pairs[perm[0] * arity + perm[1]];
      for (int p = 2; p < arity; p += 2) product = product * pairs[perm[p] * arity + perm[p + 1]];
      if (permutation_parity(perm) == 0) {
        total += product;
      } else {
        total -= product;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return norm * total;
  }

  const std::function<CMatrix(const CMatrix&, const CMatrix&)> multiply =
      [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a * b; };
  const std::function<CMatrix(const CMatrix&, const CMatrix&)> add =
      [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a + b; };
  auto pair = [&](int a, int b) -> const CMatrix& { return pairs[a * arity + b]; };
  const CMatrix total = alternating_pair_product<CMatrix>(arity, pair, CMatrix::Identity(d, d), multiply,
                                                          add, CMatrix::Zero(d, d));
  return norm * total;
}

LoopTwoFormField::LoopTwoFormField(int tangent_dim, int fiber_dim)
    : tangent_dim_(tangent_dim), fiber_dim_(fiber_dim) {
  if (tangent_dim < 1 || fiber_dim < 1) throw DomainError("LoopTwoFormField: dimensions must be positive");
  values_.assign(static_cast<std::size_t>(tangent_dim) * tangent_dim, FourierSeries(fiber_dim, 0));
}

LoopTwoFormField LoopTwoFormField::constant(const AlgebraValued2Form& omega) {
  LoopTwoFormField field(omega.tangent_dim(), omega.fiber_dim());
  for (int i = 0; i < omega.tangent_dim(); ++i)
    for (int j = 0; j < omega.tangent_dim(); ++j)
      field.values_[i * field.tangent_dim_ + j] = FourierSeries::constant(omega.on_basis(i, j));
  return field;
}

void LoopTwoFormField::set(int i, int j, const FourierSeries& value) {
  if (i < 0 || j < 0 || i >= tangent_dim_ || j >= tangent_dim_) {
    throw DomainError("LoopTwoFormField: index out of range");
  }
  if (value.dim() != fiber_dim_) throw DomainError("LoopTwoFormField: series has the wrong fiber size");
  values_[i * tangent_dim_ + j] = value;
  values_[j * tangent_dim_ + i] = -value;
}

AlgebraValued2Form LoopTwoFormField::at(double theta) const {
  std::vector<std::vector<CMatrix>> values(tangent_dim_, std::vector<CMatrix>(tangent_dim_));
  for (int i = 0; i < tangent_dim_; ++i)
    for (int j = 0; j < tangent_dim_; ++j) values[i][j] = on_basis(i, j).evaluate(theta);
  return AlgebraValued2Form::from_basis_values(values);
}

Complex ck_f_pointwise(const LoopTwoFormField& omega, const CosphereDistribution& f, int k,
                       std::span<const CVector> vectors) {
  if (k < 1 || k > 4) throw DomainError("ck_f_pointwise: k must lie in 1..4");
  const int arity = 2 * k;
  const int m = omega.tangent_dim();
  const int d = omega.fiber_dim();
  check_vectors(vectors, static_cast<std::size_t>(arity), m, "ck_f_pointwise");

  std::vector<ClassicalSymbol> pairs;
  pairs.reserve(static_cast<std::size_t>(arity * arity));
  for (int a = 0; a < arity; ++a) {
    for (int b = 0; b < arity; ++b) {
      FourierSeries series(d, 0);
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          const Complex w = vectors[a](i) * vectors[b](j);
          if (w != Complex(0.0)) series = series + omega.on_basis(i, j).scaled(w);
        }
      }
      pairs.push_back(multiplication_symbol(series, 0));
    }
  }
  const std::function<ClassicalSymbol(const ClassicalSymbol&, const ClassicalSymbol&)> multiply =
      [](const ClassicalSymbol& a, const ClassicalSymbol& b) { return compose(a, b, 0); };
  const std::function<ClassicalSymbol(const ClassicalSymbol&, const ClassicalSymbol&)> plus =
      [](const ClassicalSymbol& a, const ClassicalSymbol& b) { return add(a, b); };
  auto pair = [&](int a, int b) -> const ClassicalSymbol& { return pairs[a * arity + b]; };
  const ClassicalSymbol unit = identity_symbol(d, 0);
  const ClassicalSymbol total =
      alternating_pair_product<ClassicalSymbol>(arity, pair, unit, multiply, plus, scale(unit, 0.0));
  const double norm = 1.0 / (std::pow(2.0, k) * factorial(k));
  return symbol_trace(f, scale(total, norm));
}

CMatrix LeftInvariantConnection::operator()(const CVector& x) const {
  if (generators.empty()) throw DomainError("LeftInvariantConnection: no generators");
  if (x.size() != static_cast<Eigen::Index>(generators.size())) {
    throw DomainError("LeftInvariantConnection: vector has the wrong dimension");
  }
  CMatrix out = CMatrix::Zero(generators.front().rows(), generators.front().cols());
  for (std::size_t i = 0; i < generators.size(); ++i) out += x(static_cast<Eigen::Index>(i)) * generators[i];
  return out;
}

LeftInvariantConnection LeftInvariantConnection::operator+(const LeftInvariantConnection& rhs) const {
  if (generators.size() != rhs.generators.size()) {
    throw DomainError("LeftInvariantConnection: generator counts differ");
  }
  LeftInvariantConnection out = *this;
  for (std::size_t i = 0; i < generators.size(); ++i) out.generators[i] += rhs.generators[i];
  return out;
}

LeftInvariantConnection LeftInvariantConnection::scaled(Complex factor) const {
  LeftInvariantConnection out = *this;
  for (auto& g : out.generators) g *= factor;
  return out;
}

AlgebraValued2Form left_invariant_curvature(const LieAlgebra& g, const LeftInvariantConnection& theta) {
  const int m = g.dim();
  if (static_cast<int>(theta.generators.size()) != m) {
    throw DomainError("left_invariant_curvature: one generator per basis vector is required");
  }
  const int d = static_cast<int>(theta.generators.front().rows());
  AlgebraValued2Form omega(m, d);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const CMatrix& a = theta.generators[i];
      const CMatrix& b = theta.generators[j];
      CMatrix value = a * b - b * a;
      for (int k = 0; k < m; ++k) value -= g.structure_constant(i, j, k) * theta.generators[k];
      omega.set(i, j, value);
    }
  }
  return omega;
}

MatrixForm as_form(const AlgebraValued2Form& omega) {
  return {2, [omega](std::span<const CVector> x) { return omega(x[0], x[1]); }};
}

MatrixForm as_form(const LeftInvariantConnection& theta) {
  return {1, [theta](std::span<const CVector> x) { return theta(x[0]); }};
}

namespace {

/// Shuffle sum of factors[first..] on the vectors listed in `slots`.
CMatrix wedge_on(const std::vector<MatrixForm>& factors, std::size_t first, std::span<const CVector> vectors,
                 const std::vector<int>& slots) {
  const MatrixForm& head = factors[first];
  if (first + 1 == factors.size()) {
    std::vector<CVector> args;
    args.reserve(slots.size());
    for (int s : slots) args.push_back(vectors[s]);
    return head.evaluate(args);
  }
  const int n = static_cast<int>(slots.size());
  const int p = head.degree;
  // Enumerate increasing p-subsets of positions via a selection mask.
  std::vector<char> chosen(n, 0);
  std::fill(chosen.begin(), chosen.begin() + p, 1);
  CMatrix total;
  bool started = false;
  do {
    std::vector<int> picked;
    std::vector<int> rest;
    int displacement = 0;
    for (int i = 0; i < n; ++i) {
      if (chosen[i]) {
        displacement += i - static_cast<int>(picked.size());
        picked.push_back(slots[i]);
      } else {
        rest.push_back(slots[i]);
      }
    }
    std::vector<CVector> args;
    args.reserve(picked.size());
    for (int s : picked) args.push_back(vectors[s]);
    CMatrix term = head.evaluate(args) * wedge_on(factors, first + 1, vectors, rest);
    if (displacement % 2) term = -term;
    if (!started) {
      total = term;
      started = true;
    } else {
      total += term;
    }
  } while (std::prev_permutation(chosen.begin(), chosen.end()));
  return total;
}

}  // namespace

MatrixForm wedge(const std::vector<MatrixForm>& factors) {
  if (factors.empty()) throw DomainError("wedge: no factors");
  int degree = 0;
  for (const auto& f : factors) {
    if (f.degree < 0 || !f.evaluate) throw DomainError("wedge: invalid factor");
    degree += f.degree;
  }
  return {degree, [factors, degree](std::span<const CVector> x) {
            if (static_cast<int>(x.size()) != degree) throw DomainError("wedge: wrong number of vectors");
            std::vector<int> slots(degree);
            std::iota(slots.begin(), slots.end(), 0);
            return wedge_on(factors, 0, x, slots);
          }};
}

Complex ce_differential(const LieAlgebra& g, const ScalarForm& beta, int degree,
                        std::span<const CVector> vectors) {
  if (degree < 0) throw DomainError("ce_differential: negative degree");
  check_vectors(vectors, static_cast<std::size_t>(degree + 1), g.dim(), "ce_differential");
  Complex total = 0.0;
  for (int i = 0; i <= degree; ++i) {
    for (int j = i + 1; j <= degree; ++j) {
      std::vector<CVector> args;
      args.reserve(static_cast<std::size_t>(degree));
      args.push_back(g.bracket(vectors[i], vectors[j]));
      for (int l = 0; l <= degree; ++l) {
        if (l != i && l != j) args.push_back(vectors[l]);
      }
      const Complex term = beta(args);
      total += ((i + j) % 2 == 0) ? term : -term;
    }
  }
  return total;
}

namespace {

struct StencilEstimate {
  Complex lhs;
  Complex rhs;
};

StencilEstimate transgression_sides(const LieAlgebra& g, const std::vector<LeftInvariantConnection>& family,
                                    double step, const std::function<Complex(const CMatrix&)>& lambda, int k,
                                    std::span<const CVector> vectors, int points) {
  const int c = static_cast<int>(family.size()) / 2;
  auto value = [&](int idx) {
    return lambda(wedge_power_evaluate(left_invariant_curvature(g, family[idx]), k, vectors));
  };
  LeftInvariantConnection velocity;
  Complex lhs;
  if (points == 3) {
    velocity = (family[c + 1] + family[c - 1].scaled(-1.0)).scaled(1.0 / (2.0 * step));
    lhs = (value(c + 1) - value(c - 1)) / (2.0 * step);
  } else {
    velocity = (family[c + 1].scaled(8.0) + family[c - 1].scaled(-8.0) + family[c + 2].scaled(-1.0) +
                family[c - 2])
                   .scaled(1.0 / (12.0 * step));
    lhs = (8.0 * (value(c + 1) - value(c - 1)) - (value(c + 2) - value(c - 2))) / (12.0 * step);
  }

  const MatrixForm omega = as_form(left_invariant_curvature(g, family[c]));
  const MatrixForm theta_dot = as_form(velocity);
  std::vector<MatrixForm> terms;
  for (int j = 1; j <= k; ++j) {
    std::vector<MatrixForm> factors;
    for (int i = 0; i < k - j; ++i) factors.push_back(omega);
    factors.push_back(theta_dot);
    for (int i = 0; i < j - 1; ++i) factors.push_back(omega);
    terms.push_back(wedge(factors));
  }
  const double norm = 1.0 / factorial(k);
  const ScalarForm transgression = [&](std::span<const CVector> x) {
    Complex total = 0.0;
    for (const auto& t : terms) total += lambda(t.evaluate(x));
    return norm * total;
  };
  const Complex rhs = ce_differential(g, transgression, 2 * k - 1, vectors);
  return {lhs, rhs};
}

}  // namespace

TransgressionResult transgression_check(const LieAlgebra& g, const std::vector<LeftInvariantConnection>& family,
                                        double step, const std::function<Complex(const CMatrix&)>& lambda, int k,
                                        std::span<const CVector> vectors, double coarse_tolerance) {
  const std::size_t n = family.size();
  if (n != 3 && n != 5) throw DomainError("transgression_check: the family must have 3 or 5 points");
  if (!(step > 0.0)) throw DomainError("transgression_check: step must be positive");
  if (k < 1 || k > 4) throw DomainError("transgression_check: k must lie in 1..4");
  for (const auto& theta : family) {
    if (static_cast<int>(theta.generators.size()) != g.dim()) {
      throw DomainError("transgression_check: one generator per basis vector is required");
    }
  }
  check_vectors(vectors, static_cast<std::size_t>(2 * k), g.dim(), "transgression_check");

  const StencilEstimate coarse = transgression_sides(g, family, step, lambda, k, vectors, 3);
  TransgressionResult result;
  StencilEstimate best = coarse;
  if (n == 5) {
    best = transgression_sides(g, family, step, lambda, k, vectors, 5);
    result.richardson_gap = std::max(std::abs(best.lhs - coarse.lhs), std::abs(best.rhs - coarse.rhs));
    const double scale = std::max({1.0, std::abs(best.lhs), std::abs(best.rhs)});
    result.grid_too_coarse = result.richardson_gap > coarse_tolerance * scale;
  }
  result.lhs = std::abs(best.lhs);
  result.rhs = std::abs(best.rhs);
  result.residual = std::abs(best.lhs - best.rhs);
  return result;
}

}  // namespace symcalc
