#pragma once

// Exact rational scalars and dense matrices.
//
// Rational is GMP's mpq_class, which keeps every value in canonical form
// (positive denominator, coprime numerator and denominator) after each
// arithmetic operation. Determinant and rank use fraction-free (Bareiss)
// elimination on integer rows obtained by clearing denominators.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sqso {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

/// Parses "p/q", a decimal literal ("-0.25", ".5", "3.") or an integer.
/// Decimals are converted exactly through powers of ten. Surrounding
/// whitespace is ignored. Throws std::invalid_argument on malformed text or
/// a zero denominator.
Rational rat_parse(std::string_view text);

/// "p" for integers, "p/q" otherwise. rat_parse(rat_format(r)) == r.
std::string rat_format(const Rational& r);

/// Nearest binary64 value (ties to even).
double to_double(const Rational& r);

std::vector<double> to_double(std::span<const Rational> v);

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix ones(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Rational> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }
  RationalVector column(std::size_t j) const;

  RationalMatrix transpose() const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator*(const Rational& s, const RationalMatrix& a);
RationalVector operator*(const RationalMatrix& a, std::span<const Rational> v);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);

/// Exact determinant. Throws std::invalid_argument for non-square input.
Rational mat_det(const RationalMatrix& m);

/// Exact rank over the rationals.
std::size_t mat_rank(const RationalMatrix& m);

/// True iff every row equals the first row. Vacuously true for 0 or 1 rows.
bool rows_identical(const RationalMatrix& m);

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray (positive multiple, gcd of entries 1). The zero vector maps to
/// zeros.
IntegerVector primitive_integer(std::span<const Rational> v);

std::string format_matrix(const RationalMatrix& m);

}  // namespace sqso
