#include "sqso/fixtures.hpp"

#include <stdexcept>

namespace sqso::fixtures {

RationalMatrix nonlinear_family_a() {
  return {{1, 0, 0}, {Rational(1, 3), Rational(1, 2), Rational(1, 4)}, {Rational(2, 3), Rational(1, 4), Rational(1, 8)}};
}

RationalMatrix nonlinear_family_b(const std::array<Rational, 3>& b) {
  RationalMatrix m(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    if (b[j] < Rational(2, 3) || b[j] > 1) {
      throw std::invalid_argument("b_j must lie in [2/3, 1], got " + rat_format(b[j]));
    }
    m(j, 0) = 1;
    m(j, 1) = (8 - 3 * b[j]) / 6;
    m(j, 2) = b[j];
  }
  return m;
}

SqsoPair nonlinear_family(const std::array<Rational, 3>& b) {
  return validate_pair(nonlinear_family_a(), nonlinear_family_b(b));
}

SqsoPair singular_family(const Rational& b, const std::array<Rational, 3>& y) {
  if (b <= 0) throw std::invalid_argument("b must be positive");
  RationalMatrix a(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    if (y[i] < 0 || y[i] > 1) throw std::invalid_argument("y_i must lie in [0, 1]");
    a(i, 0) = b;
    a(i, 1) = y[i];
    a(i, 2) = 1 - y[i];
  }
  const Rational half(1, 2);
  RationalMatrix bm{{0, 1, 1}, {0, 1, 1}, {1 / (2 * b), half, half}};
  return validate_pair(std::move(a), std::move(bm));
}

SqsoPair weak_example() {
  return validate_pair({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}, {{0, 1, 0}, {1, 2, 2}, {0, 2, 1}});
}

CubicTensor weak_example_tensor() {
  CubicTensor t(3);
  // 1-based (i, j, k) entries equal to one.
  constexpr int ones[][3] = {{1, 3, 2}, {3, 1, 2}, {2, 2, 1}, {1, 1, 2}, {1, 2, 2},
                             {2, 1, 2}, {2, 3, 3}, {3, 2, 3}, {3, 3, 3}};
  for (const auto& e : ones) t(e[0] - 1, e[1] - 1, e[2] - 1) = 1;
  return t;
}

SqsoPair constant_example() {
  const Rational h(1, 2);
  return validate_pair({{1, 1}, {1, 1}}, {{h, h}, {h, h}});
}

SqsoPair cyclic_example() {
  return validate_pair({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, RationalMatrix::ones(3, 3));
}

SqsoPair identity_example(std::size_t m) {
  return validate_pair(RationalMatrix::identity(m), RationalMatrix::ones(m, m));
}

}  // namespace sqso::fixtures
