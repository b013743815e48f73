#include "sqso/operators.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sqso/error.hpp"

namespace sqso {

namespace {

std::vector<double> to_double_rowmajor(const RationalMatrix& m) {
  std::vector<double> out;
  out.reserve(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& x : m.row(i)) out.push_back(to_double(x));
  return out;
}

void require_dimension(std::size_t expected, const SimplexPoint& x) {
  if (x.size() != expected) {
    throw std::invalid_argument("point has " + std::to_string(x.size()) + " coordinates, operator expects " +
                                std::to_string(expected));
  }
}

double coordinate_sum(std::span<const double> x) { return std::accumulate(x.begin(), x.end(), 0.0); }

}  // namespace

// ---------------------------------------------------------------------------

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw SimplexViolation("simplex point has no coordinates");
  double sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double c = coords_[i];
    if (!std::isfinite(c) || c < -kNegativeSlack) {
      std::ostringstream os;
      os.precision(17);
      os << "coordinate " << i + 1 << " = " << c << " is outside the simplex";
      throw SimplexViolation(os.str());
    }
    sum += c;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "coordinates sum to " << sum << ", not 1";
    throw SimplexViolation(os.str());
  }
}

SimplexPoint SimplexPoint::from_exact(std::span<const Rational> coords) {
  return SimplexPoint(to_double(coords));
}

bool SimplexPoint::admissible(std::span<const double> coords) {
  if (coords.empty()) return false;
  double sum = 0.0;
  for (double c : coords) {
    if (!std::isfinite(c) || c < -kNegativeSlack) return false;
    sum += c;
  }
  return std::abs(sum - 1.0) <= kSumTolerance;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("l1_distance: length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// ---------------------------------------------------------------------------

CubicTensor::CubicTensor(std::size_t m) : m_(m), p_(m * m * m) {}

bool is_stochastic(const CubicTensor& t) {
  const std::size_t m = t.m();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rational sum = 0;
      for (std::size_t k = 0; k < m; ++k) {
        if (t(i, j, k) < 0) return false;
        sum += t(i, j, k);
      }
      if (sum != 1) return false;
    }
  return true;
}

bool is_volterra(const CubicTensor& t) {
  const std::size_t m = t.m();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (k != i && k != j && t(i, j, k) != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::string_view to_string(Admissibility a) {
  switch (a) {
    case Admissibility::Strict: return "Strict";
    case Admissibility::Weak: return "Weak";
    case Admissibility::Invalid: return "Invalid";
  }
  return "?";
}

bool SqsoPair::in_admissible_family() const {
  return admissibility_ == Admissibility::Strict && det_a_ == 0 && det_b_ == 0 && !a_rows_identical_ &&
         !b_rows_identical_;
}

SqsoPair validate_pair(RationalMatrix a, RationalMatrix b) {
  if (!a.square() || !b.square() || a.rows() != b.rows() || a.rows() == 0) {
    throw std::invalid_argument("A and B must be nonempty square matrices of the same size (got " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()) + "x" + std::to_string(b.cols()) + ")");
  }
  const std::size_t m = a.rows();

  // Row products a^(i) . b^(j) are the entries of A B^T.
  const RationalMatrix abt = a * b.transpose();

  bool strict = true;
  bool weak = true;
  for (std::size_t i = 0; i < m && (strict || weak); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (abt(i, j) != 1) strict = false;
      if (abt(i, j) + abt(j, i) != 2) weak = false;
      for (std::size_t k = 0; k < m; ++k) {
        const Rational pijk = a(i, k) * b(j, k);
        if (pijk < 0) strict = false;
        if (pijk + a(j, k) * b(i, k) < 0) weak = false;
      }
    }
  }

  SqsoPair pair;
  pair.admissibility_ = strict ? Admissibility::Strict : weak ? Admissibility::Weak : Admissibility::Invalid;
  pair.det_a_ = mat_det(a);
  pair.det_b_ = mat_det(b);
  pair.a_rows_identical_ = rows_identical(a);
  pair.b_rows_identical_ = rows_identical(b);
  pair.a_ = std::move(a);
  pair.b_ = std::move(b);
  return pair;
}

CubicTensor build_tensor(const SqsoPair& pair) {
  if (pair.admissibility() != Admissibility::Strict) {
    throw DomainError(std::string("build_tensor needs a Strict pair, got ") +
                      std::string(to_string(pair.admissibility())));
  }
  const std::size_t m = pair.m();
  CubicTensor t(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) t(i, j, k) = pair.a()(i, k) * pair.b()(j, k);
  return t;
}

bool pair_matches_tensor(const SqsoPair& pair, const CubicTensor& t) {
  if (pair.m() != t.m()) throw std::invalid_argument("pair and tensor sizes differ");
  const auto& a = pair.a();
  const auto& b = pair.b();
  const std::size_t m = pair.m();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (t(i, j, k) + t(j, i, k) != a(i, k) * b(j, k) + a(j, k) * b(i, k)) return false;
  return true;
}

// ---------------------------------------------------------------------------

std::string_view to_string(OperatorClass c) {
  switch (c) {
    case OperatorClass::Constant: return "Constant";
    case OperatorClass::Linear: return "Linear";
    case OperatorClass::Nonlinear: return "Nonlinear";
  }
  return "?";
}

bool is_row_stochastic(const RationalMatrix& p) {
  for (std::size_t i = 0; i < p.rows(); ++i) {
    Rational sum = 0;
    for (const auto& x : p.row(i)) {
      if (x < 0) return false;
      sum += x;
    }
    if (sum != 1) return false;
  }
  return true;
}

Classification classify(const SqsoPair& pair) {
  if (pair.admissibility() != Admissibility::Strict) {
    throw DomainError(std::string("classification is defined for Strict pairs, got ") +
                      std::string(to_string(pair.admissibility())));
  }
  const auto& a = pair.a();
  const auto& b = pair.b();
  const std::size_t m = pair.m();

  Classification c;
  if (pair.a_rows_identical() && pair.b_rows_identical()) {
    c.kind = OperatorClass::Constant;
    c.constant_point.resize(m);
    for (std::size_t k = 0; k < m; ++k) c.constant_point[k] = a(0, k) * b(0, k);
    return c;
  }
  if (pair.det_a() != 0) {
    if (!pair.b_rows_identical()) {
      throw std::logic_error("inconsistent strict pair: det A != 0 but the rows of B differ");
    }
    c.kind = OperatorClass::Linear;
    c.stochastic_matrix = RationalMatrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) c.stochastic_matrix(i, k) = b(0, k) * a(i, k);
    return c;
  }
  if (pair.det_b() != 0) {
    if (!pair.a_rows_identical()) {
      throw std::logic_error("inconsistent strict pair: det B != 0 but the rows of A differ");
    }
    c.kind = OperatorClass::Linear;
    c.stochastic_matrix = RationalMatrix(m, m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) c.stochastic_matrix(j, k) = a(0, k) * b(j, k);
    return c;
  }
  c.kind = OperatorClass::Nonlinear;
  return c;
}

// ---------------------------------------------------------------------------

SqsoMap::SqsoMap(const SqsoPair& pair) : m_(pair.m()) {
  if (pair.admissibility() == Admissibility::Invalid) {
    throw DomainError("cannot apply an Invalid pair");
  }
  a_ = to_double_rowmajor(pair.a());
  b_ = to_double_rowmajor(pair.b());
}

SimplexPoint SqsoMap::operator()(const SimplexPoint& x) const {
  require_dimension(m_, x);
  const double s = coordinate_sum(x.coords());
  std::vector<double> out(m_);
  for (std::size_t k = 0; k < m_; ++k) {
    double ax = 0.0;
    double bx = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      ax += a_[i * m_ + k] * x[i];
      bx += b_[i * m_ + k] * x[i];
    }
    out[k] = ax * bx / s;
  }
  return SimplexPoint(std::move(out));
}

TensorMap::TensorMap(const CubicTensor& t) : m_(t.m()) {
  if (!is_stochastic(t)) throw DomainError("tensor is not stochastic");
  p_.reserve(m_ * m_ * m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j)
      for (std::size_t k = 0; k < m_; ++k) p_.push_back(to_double(t(i, j, k)));
}

SimplexPoint TensorMap::operator()(const SimplexPoint& x) const {
  require_dimension(m_, x);
  const double s = coordinate_sum(x.coords());
  std::vector<double> out(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) {
      const double w = x[i] * x[j];
      if (w == 0.0) continue;
      const double* p = &p_[(i * m_ + j) * m_];
      for (std::size_t k = 0; k < m_; ++k) out[k] += p[k] * w;
    }
  for (auto& v : out) v /= s;
  return SimplexPoint(std::move(out));
}

LinearMap::LinearMap(const RationalMatrix& p) : m_(p.rows()) {
  if (!p.square() || !is_row_stochastic(p)) throw DomainError("matrix is not square row-stochastic");
  p_ = to_double_rowmajor(p);
}

SimplexPoint LinearMap::operator()(const SimplexPoint& x) const {
  require_dimension(m_, x);
  std::vector<double> out(m_, 0.0);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t k = 0; k < m_; ++k) out[k] += p_[i * m_ + k] * x[i];
  return SimplexPoint(std::move(out));
}

VolterraOperator::VolterraOperator(std::size_t m, std::vector<double> skew) : m_(m), a_(std::move(skew)) {
  if (a_.size() != m * m) throw std::invalid_argument("Volterra matrix must be m x m");
  for (std::size_t k = 0; k < m; ++k) {
    if (a(k, k) != 0.0) throw std::invalid_argument("Volterra matrix must have a zero diagonal");
    for (std::size_t i = 0; i < m; ++i) {
      if (!(std::abs(a(k, i)) <= 1.0)) throw std::invalid_argument("Volterra entries must lie in [-1, 1]");
      if (a(k, i) != -a(i, k)) throw std::invalid_argument("Volterra matrix must be skew-symmetric");
    }
  }
}

SimplexPoint VolterraOperator::operator()(const SimplexPoint& x) const {
  require_dimension(m_, x);
  std::vector<double> out(m_);
  for (std::size_t k = 0; k < m_; ++k) {
    double growth = 1.0;
    for (std::size_t i = 0; i < m_; ++i) growth += a(k, i) * x[i];
    out[k] = x[k] * growth;
  }
  return SimplexPoint(std::move(out));
}

SimplexPoint apply_sqso(const SqsoPair& pair, const SimplexPoint& x) { return SqsoMap(pair)(x); }

SimplexPoint apply_tensor(const CubicTensor& t, const SimplexPoint& x) { return TensorMap(t)(x); }

SimplexPoint apply_volterra(const VolterraOperator& v, const SimplexPoint& x) { return v(x); }

VolterraOperator volterra_from_tensor(const CubicTensor& t) {
  if (!is_stochastic(t)) throw DomainError("tensor is not stochastic");
  if (!is_volterra(t)) throw DomainError("tensor is not of Volterra type");
  const std::size_t m = t.m();
  std::vector<double> a(m * m, 0.0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (i != k) a[k * m + i] = to_double(t(i, k, k) + t(k, i, k) - 1);
  return VolterraOperator(m, std::move(a));
}

}  // namespace sqso
