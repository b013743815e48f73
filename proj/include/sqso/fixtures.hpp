#pragma once

// Worked examples from the separable-operator literature, as exact pairs.

#include <array>

#include "sqso/numerics.hpp"
#include "sqso/operators.hpp"

namespace sqso::fixtures {

/// A = [[1,0,0],[1/3,1/2,1/4],[2/3,1/4,1/8]], B rows (1, (8-3b_j)/6, b_j).
/// Throws std::invalid_argument unless every b_j lies in [2/3, 1].
SqsoPair nonlinear_family(const std::array<Rational, 3>& b);
RationalMatrix nonlinear_family_a();
RationalMatrix nonlinear_family_b(const std::array<Rational, 3>& b);

/// A rows (b, y_i, 1 - y_i), B rows (0,1,1), (0,1,1), (1/(2b), 1/2, 1/2).
/// Throws std::invalid_argument unless b > 0 and every y_i lies in [0, 1].
SqsoPair singular_family(const Rational& b, const std::array<Rational, 3>& y);

/// A = [[0,1,0],[1,0,0],[0,0,1]], B = [[0,1,0],[1,2,2],[0,2,1]]: only the
/// symmetrized factorization holds.
SqsoPair weak_example();

/// A tensor realising weak_example(): P_{13,2} = P_{31,2} = 1 and so on.
CubicTensor weak_example_tensor();

/// A = [[1,1],[1,1]], B = [[1/2,1/2],[1/2,1/2]]: constant map to (1/2, 1/2).
SqsoPair constant_example();

/// A = 3x3 cyclic permutation (x'_1 = x_3, x'_2 = x_1, x'_3 = x_2), B = ones.
SqsoPair cyclic_example();

/// A = I, B = ones: the identity map.
SqsoPair identity_example(std::size_t m);

}  // namespace sqso::fixtures
