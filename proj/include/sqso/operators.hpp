#pragma once

// Quadratic stochastic operators on the simplex S^{m-1}.
//
// A general QSO is given by a cubic stochastic tensor P:
//     x'_k = sum_{i,j} P[i][j][k] x_i x_j.
// A separable QSO is given by a matrix pair (A, B) with P[i][j][k] = a_ik b_jk:
//     x'_k = (sum_i a_ik x_i) * (sum_j b_jk x_j).
// Note the columns of A and B act on x. Every entry is exact; only the
// dynamics (apply_*) switch to binary floating point.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqso/numerics.hpp"

namespace sqso {

class SimplexPoint {
 public:
  static constexpr double kNegativeSlack = 1e-15;
  static constexpr double kSumTolerance = 1e-12;

  /// Throws SimplexViolation if a coordinate is below -kNegativeSlack, is not
  /// finite, or the coordinates do not sum to 1 within kSumTolerance.
  explicit SimplexPoint(std::vector<double> coords);

  /// Exact point converted with round-to-nearest.
  static SimplexPoint from_exact(std::span<const Rational> coords);

  static bool admissible(std::span<const double> coords);

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  std::vector<double> coords_;
};

double l1_distance(std::span<const double> a, std::span<const double> b);
inline double l1_distance(const SimplexPoint& a, const SimplexPoint& b) {
  return l1_distance(a.coords(), b.coords());
}

// ---------------------------------------------------------------------------
// Cubic tensors.

class CubicTensor {
 public:
  /// Zero tensor of size m x m x m. Not stochastic until filled in.
  explicit CubicTensor(std::size_t m);

  std::size_t m() const { return m_; }

  Rational& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return p_[(i * m_ + j) * m_ + k];
  }
  const Rational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return p_[(i * m_ + j) * m_ + k];
  }

  friend bool operator==(const CubicTensor&, const CubicTensor&) = default;

 private:
  std::size_t m_;
  std::vector<Rational> p_;
};

/// P >= 0 and sum_k P[i][j][k] = 1 for every (i, j), exactly.
bool is_stochastic(const CubicTensor& t);

/// True iff P[i][j][k] = 0 whenever k is neither i nor j.
bool is_volterra(const CubicTensor& t);

// ---------------------------------------------------------------------------
// Separable pairs.

enum class Admissibility { Strict, Weak, Invalid };

std::string_view to_string(Admissibility a);

class SqsoPair {
 public:
  std::size_t m() const { return a_.rows(); }
  const RationalMatrix& a() const { return a_; }
  const RationalMatrix& b() const { return b_; }
  Admissibility admissibility() const { return admissibility_; }
  const Rational& det_a() const { return det_a_; }
  const Rational& det_b() const { return det_b_; }
  bool a_rows_identical() const { return a_rows_identical_; }
  bool b_rows_identical() const { return b_rows_identical_; }

  /// Strict, det A = det B = 0, and neither matrix has all rows identical.
  bool in_admissible_family() const;

 private:
  friend SqsoPair validate_pair(RationalMatrix a, RationalMatrix b);
  SqsoPair() = default;

  RationalMatrix a_;
  RationalMatrix b_;
  Admissibility admissibility_ = Admissibility::Invalid;
  Rational det_a_;
  Rational det_b_;
  bool a_rows_identical_ = false;
  bool b_rows_identical_ = false;
};

/// Strict: a_ik b_jk >= 0 for all i, j, k and A B^T = 1 (all-ones).
/// Weak: not Strict, but a_ik b_jk + a_jk b_ik >= 0 and (A B^T + B A^T)/2 = 1.
/// Invalid otherwise. Throws std::invalid_argument unless A and B are square
/// of the same size.
SqsoPair validate_pair(RationalMatrix a, RationalMatrix b);

/// P[i][j][k] = a_ik b_jk. Throws DomainError unless the pair is Strict.
CubicTensor build_tensor(const SqsoPair& pair);

/// P[i][j][k] + P[j][i][k] == a_ik b_jk + a_jk b_ik for all i, j, k.
bool pair_matches_tensor(const SqsoPair& pair, const CubicTensor& t);

// ---------------------------------------------------------------------------
// Classification of strict pairs.

enum class OperatorClass { Constant, Linear, Nonlinear };

std::string_view to_string(OperatorClass c);

struct Classification {
  OperatorClass kind = OperatorClass::Nonlinear;
  /// Constant: the image point (a_1k b_1k)_k.
  RationalVector constant_point;
  /// Linear: row-stochastic matrix P with x'_k = sum_i P[i][k] x_i.
  RationalMatrix stochastic_matrix;
};

/// Throws DomainError for non-Strict pairs and std::logic_error if a strict
/// pair has det A != 0 while B has distinct rows (or the mirror case).
Classification classify(const SqsoPair& pair);

/// Nonnegative with unit row sums, exactly.
bool is_row_stochastic(const RationalMatrix& p);

// ---------------------------------------------------------------------------
// Floating-point maps.
//
// The quadratic maps are evaluated as V(x) / sum(x). On the simplex this is
// V(x) itself; off the simplex it is degree-1 homogeneous, so rounding error
// in sum(x) is carried forward instead of being squared at every step.

class SqsoMap {
 public:
  /// Throws DomainError for Invalid pairs.
  explicit SqsoMap(const SqsoPair& pair);
  std::size_t m() const { return m_; }
  SimplexPoint operator()(const SimplexPoint& x) const;

 private:
  std::size_t m_;
  std::vector<double> a_;  // row-major
  std::vector<double> b_;
};

class TensorMap {
 public:
  /// Throws DomainError if the tensor is not stochastic.
  explicit TensorMap(const CubicTensor& t);
  std::size_t m() const { return m_; }
  SimplexPoint operator()(const SimplexPoint& x) const;

 private:
  std::size_t m_;
  std::vector<double> p_;
};

/// x'_k = sum_i P[i][k] x_i for a row-stochastic P.
class LinearMap {
 public:
  /// Throws DomainError unless P is square and row-stochastic.
  explicit LinearMap(const RationalMatrix& p);
  std::size_t m() const { return m_; }
  SimplexPoint operator()(const SimplexPoint& x) const;

 private:
  std::size_t m_;
  std::vector<double> p_;
};

/// Volterra normal form x'_k = x_k (1 + sum_i a_ki x_i) with a skew-symmetric
/// and |a_ki| <= 1.
class VolterraOperator {
 public:
  /// `skew` is m x m row-major. Throws std::invalid_argument if it is not
  /// skew-symmetric with entries in [-1, 1].
  VolterraOperator(std::size_t m, std::vector<double> skew);

  std::size_t m() const { return m_; }
  double a(std::size_t k, std::size_t i) const { return a_[k * m_ + i]; }
  SimplexPoint operator()(const SimplexPoint& x) const;

 private:
  std::size_t m_;
  std::vector<double> a_;
};

SimplexPoint apply_sqso(const SqsoPair& pair, const SimplexPoint& x);
SimplexPoint apply_tensor(const CubicTensor& t, const SimplexPoint& x);
SimplexPoint apply_volterra(const VolterraOperator& v, const SimplexPoint& x);

/// a_ki = P[i][k][k] + P[k][i][k] - 1 for i != k (the symmetric-tensor value
/// 2 P[i][k][k] - 1 when P[i][k][k] = P[k][i][k]). Throws DomainError if the
/// tensor is not a stochastic Volterra tensor.
VolterraOperator volterra_from_tensor(const CubicTensor& t);

}  // namespace sqso
