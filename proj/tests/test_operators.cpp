#include <doctest.h>

#include <cmath>

#include "sqso/error.hpp"
#include "sqso/fixtures.hpp"
#include "sqso/operators.hpp"
#include "support.hpp"

using namespace sqso;
using sqso::testing::random_rational;
using sqso::testing::random_simplex_point;
using sqso::testing::Rng;

namespace {

const std::array<Rational, 3> kDefaultB = {Rational(2, 3), Rational(5, 6), Rational(1)};

SimplexPoint pt(std::vector<double> v) { return SimplexPoint(std::move(v)); }

// Strict pairs covering all three classes.
std::vector<SqsoPair> strict_fixtures(Rng& rng) {
  std::vector<SqsoPair> out;
  out.push_back(fixtures::nonlinear_family(kDefaultB));
  out.push_back(fixtures::singular_family(1, {Rational(0), Rational(1, 2), Rational(1)}));
  out.push_back(fixtures::constant_example());
  out.push_back(fixtures::cyclic_example());
  out.push_back(fixtures::identity_example(4));
  for (int t = 0; t < 6; ++t) {
    std::array<Rational, 3> b;
    for (auto& x : b) x = random_rational(rng, Rational(2, 3), 1);
    out.push_back(fixtures::nonlinear_family(b));
    std::array<Rational, 3> y;
    for (auto& x : y) x = random_rational(rng, 0, 1);
    out.push_back(fixtures::singular_family(random_rational(rng, Rational(1, 4), 3), y));
  }
  // Linear: row-stochastic A with B = ones.
  for (int t = 0; t < 4; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t);
    RationalMatrix a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      Rational s = 0;
      for (std::size_t k = 0; k < m; ++k) s += (a(i, k) = random_rational(rng, 0, 1) + Rational(1, 10));
      for (std::size_t k = 0; k < m; ++k) a(i, k) /= s;
    }
    out.push_back(validate_pair(a, RationalMatrix::ones(m, m)));
  }
  // Constant: identical rows a, b with a . b = 1.
  for (int t = 0; t < 3; ++t) {
    const std::size_t m = 2 + static_cast<std::size_t>(t);
    RationalVector a(m), w(m);
    for (auto& x : a) x = random_rational(rng, Rational(1, 5), 2);
    for (auto& x : w) x = random_rational(rng, Rational(1, 5), 2);
    const Rational aw = dot(a, w);
    RationalMatrix am(m, m), bm(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        am(i, k) = a[k];
        bm(i, k) = w[k] / aw;
      }
    out.push_back(validate_pair(am, bm));
  }
  return out;
}

}  // namespace

TEST_CASE("SimplexPoint invariants") {
  CHECK_NOTHROW(pt({0.5, 0.5}));
  CHECK_NOTHROW(pt({1.0, -1e-16}));
  CHECK_THROWS_AS(pt({1.1, -0.1}), SimplexViolation);
  CHECK_THROWS_AS(pt({0.5, 0.4}), SimplexViolation);
  CHECK_THROWS_AS(pt({}), SimplexViolation);
  CHECK_THROWS_AS(pt({NAN, 1.0}), SimplexViolation);
}

TEST_CASE("validate_pair admissibility") {
  SUBCASE("singular family with b = 1, y = (0, 1/2, 1) is strict") {
    const SqsoPair p = fixtures::singular_family(1, {Rational(0), Rational(1, 2), Rational(1)});
    CHECK(p.admissibility() == Admissibility::Strict);
    CHECK(p.det_a() == 0);
    CHECK(p.det_b() == 0);
    CHECK_FALSE(p.a_rows_identical());
    CHECK_FALSE(p.b_rows_identical());
    CHECK(p.in_admissible_family());
  }
  SUBCASE("the weak example is weak") {
    CHECK(fixtures::weak_example().admissibility() == Admissibility::Weak);
  }
  SUBCASE("A = B = I is invalid") {
    CHECK(validate_pair(RationalMatrix::identity(3), RationalMatrix::identity(3)).admissibility() ==
          Admissibility::Invalid);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(validate_pair(RationalMatrix::identity(3), RationalMatrix::identity(2)), std::invalid_argument);
    CHECK_THROWS_AS(validate_pair(RationalMatrix(2, 3), RationalMatrix(2, 3)), std::invalid_argument);
  }
  SUBCASE("nonlinear family is in the admissible family") {
    const SqsoPair p = fixtures::nonlinear_family(kDefaultB);
    CHECK(p.admissibility() == Admissibility::Strict);
    CHECK(p.in_admissible_family());
  }
  SUBCASE("negative products make a pair invalid even with A B^T = 1") {
    // a^(i) . b^(j) = 1 but a_12 b_12 < 0.
    const SqsoPair p = validate_pair({{2, -1}, {2, -1}}, {{1, 1}, {1, 1}});
    CHECK(p.admissibility() == Admissibility::Invalid);
  }
  CHECK_THROWS_AS(fixtures::nonlinear_family({Rational(1, 2), Rational(1), Rational(1)}), std::invalid_argument);
}

TEST_CASE("build_tensor") {
  const CubicTensor t = build_tensor(fixtures::nonlinear_family(kDefaultB));
  CHECK(t(0, 0, 0) == 1);
  CHECK(t(1, 1, 0) == Rational(1, 3));
  CHECK(is_stochastic(t));

  const SqsoPair cyc = fixtures::cyclic_example();
  const CubicTensor tc = build_tensor(cyc);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t k = 0; k < 3; ++k) CHECK(tc(i, j, k) == cyc.a()(i, k));

  const SqsoPair weak = fixtures::weak_example();
  CHECK(dot(weak.a().row(0), weak.b().row(1)) == 2);
  CHECK_THROWS_AS(build_tensor(weak), DomainError);
}

TEST_CASE("pair_matches_tensor") {
  const SqsoPair weak = fixtures::weak_example();
  const CubicTensor wt = fixtures::weak_example_tensor();
  CHECK(is_stochastic(wt));
  CHECK(pair_matches_tensor(weak, wt));

  const SqsoPair strict = fixtures::nonlinear_family(kDefaultB);
  CHECK(pair_matches_tensor(strict, build_tensor(strict)));
  CHECK_FALSE(pair_matches_tensor(weak, build_tensor(strict)));
}

TEST_CASE("classify worked cases") {
  const Classification c = classify(fixtures::constant_example());
  CHECK(c.kind == OperatorClass::Constant);
  CHECK(c.constant_point == RationalVector{Rational(1, 2), Rational(1, 2)});

  const SqsoPair cyc = fixtures::cyclic_example();
  const Classification l = classify(cyc);
  CHECK(l.kind == OperatorClass::Linear);
  CHECK(l.stochastic_matrix == cyc.a());
  CHECK(is_row_stochastic(l.stochastic_matrix));

  CHECK(classify(fixtures::nonlinear_family(kDefaultB)).kind == OperatorClass::Nonlinear);
  CHECK_THROWS_AS(classify(fixtures::weak_example()), DomainError);
}

TEST_CASE("classify uses B as the linear part when det B != 0") {
  // A has identical rows, B invertible with a . b^(j) = 1.
  const SqsoPair p = validate_pair({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}},
                                   {{Rational(3, 2), Rational(1, 2)}, {Rational(1, 2), Rational(3, 2)}});
  REQUIRE(p.admissibility() == Admissibility::Strict);
  const Classification c = classify(p);
  CHECK(c.kind == OperatorClass::Linear);
  CHECK(is_row_stochastic(c.stochastic_matrix));
  CHECK(c.stochastic_matrix(0, 0) == Rational(3, 4));
}

TEST_CASE("apply_sqso") {
  const SimplexPoint third = pt({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const SimplexPoint y = apply_sqso(fixtures::weak_example(), third);
  CHECK(y[0] == doctest::Approx(1.0 / 9).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(5.0 / 9).epsilon(1e-15));
  CHECK(y[2] == doctest::Approx(3.0 / 9).epsilon(1e-15));

  Rng rng(5);
  const SqsoPair id = fixtures::identity_example(3);
  for (int t = 0; t < 20; ++t) {
    const SimplexPoint x = random_simplex_point(rng, 3);
    CHECK(l1_distance(apply_sqso(id, x), x) <= 1e-15);
  }

  const SimplexPoint e1 = pt({1, 0, 0});
  CHECK(apply_sqso(fixtures::nonlinear_family(kDefaultB), e1) == e1);

  CHECK_THROWS_AS(apply_sqso(validate_pair(RationalMatrix::identity(2), RationalMatrix::identity(2)), pt({0.5, 0.5})),
                  DomainError);
  CHECK_THROWS_AS(apply_sqso(id, pt({0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("apply_tensor") {
  const SqsoPair p = fixtures::nonlinear_family(kDefaultB);
  const CubicTensor t = build_tensor(p);
  const SimplexPoint e1 = apply_tensor(t, pt({1, 0, 0}));
  for (std::size_t k = 0; k < 3; ++k) CHECK(e1[k] == to_double(t(0, 0, k)));

  const SimplexPoint y = apply_tensor(fixtures::weak_example_tensor(), pt({1.0 / 3, 1.0 / 3, 1.0 / 3}));
  CHECK(l1_distance(y.coords(), std::vector<double>{1.0 / 9, 5.0 / 9, 1.0 / 3}) <= 1e-15);

  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const SimplexPoint x = random_simplex_point(rng, 3);
    const SimplexPoint y = apply_tensor(t, x);
    double s = 0;
    for (double v : y.coords()) s += v;
    CHECK(std::abs(s - 1.0) <= 1e-13);
  }

  CubicTensor bad(2);
  bad(0, 0, 0) = 1;
  CHECK_THROWS_AS(apply_tensor(bad, pt({0.5, 0.5})), DomainError);
}

TEST_CASE("is_volterra") {
  CHECK_FALSE(is_volterra(fixtures::weak_example_tensor()));
  CHECK(is_volterra(build_tensor(fixtures::identity_example(3))));
  const CubicTensor t = build_tensor(fixtures::nonlinear_family(kDefaultB));
  CHECK(t(1, 1, 0) == Rational(1, 3));
  CHECK_FALSE(is_volterra(t));
}

TEST_CASE("volterra_from_tensor") {
  SUBCASE("neutral interbreeding gives a = 0") {
    CubicTensor t(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) {
        if (i == j) {
          t(i, i, i) = 1;
        } else {
          t(i, j, i) = Rational(1, 2);
          t(i, j, j) = Rational(1, 2);
        }
      }
    const VolterraOperator v = volterra_from_tensor(t);
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i) CHECK(v.a(k, i) == 0.0);
  }
  SUBCASE("identity pair gives a = 0") {
    const VolterraOperator v = volterra_from_tensor(build_tensor(fixtures::identity_example(3)));
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i) CHECK(v.a(k, i) == 0.0);
  }
  SUBCASE("random symmetric Volterra tensors give skew matrices that reproduce the tensor map") {
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t m = 2 + static_cast<std::size_t>(trial % 4);
      CubicTensor t(m);
      for (std::size_t i = 0; i < m; ++i) {
        t(i, i, i) = 1;
        for (std::size_t j = i + 1; j < m; ++j) {
          const Rational w = random_rational(rng, 0, 1);
          t(i, j, i) = t(j, i, i) = w;
          t(i, j, j) = t(j, i, j) = 1 - w;
        }
      }
      REQUIRE(is_stochastic(t));
      REQUIRE(is_volterra(t));
      const VolterraOperator v = volterra_from_tensor(t);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t i = 0; i < m; ++i) CHECK(v.a(k, i) + v.a(i, k) == 0.0);
      for (int s = 0; s < 5; ++s) {
        const SimplexPoint x = random_simplex_point(rng, m);
        CHECK(l1_distance(apply_volterra(v, x), apply_tensor(t, x)) <= 1e-13);
      }
    }
  }
  CHECK_THROWS_AS(volterra_from_tensor(fixtures::weak_example_tensor()), DomainError);
}

TEST_CASE("apply_volterra") {
  Rng rng(4);
  const VolterraOperator zero(3, std::vector<double>(9, 0.0));
  for (int t = 0; t < 10; ++t) {
    const SimplexPoint x = random_simplex_point(rng, 3);
    CHECK(apply_volterra(zero, x) == x);
  }
  const VolterraOperator v2(2, {0, 1, -1, 0});
  const SimplexPoint y = apply_volterra(v2, pt({0.5, 0.5}));
  CHECK(y[0] == 0.75);
  CHECK(y[1] == 0.25);

  CHECK_THROWS_AS(VolterraOperator(2, {0, 1, 1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(VolterraOperator(2, {0, 2, -2, 0}), std::invalid_argument);
  CHECK_THROWS_AS(VolterraOperator(2, {1, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("property: strict pairs preserve the simplex and agree with their tensor") {
  Rng rng(2024);
  for (const SqsoPair& p : strict_fixtures(rng)) {
    REQUIRE(p.admissibility() == Admissibility::Strict);
    const CubicTensor t = build_tensor(p);
    REQUIRE(is_stochastic(t));
    const SqsoMap map(p);
    const TensorMap tmap(t);
    for (int s = 0; s < 20; ++s) {
      const SimplexPoint x = random_simplex_point(rng, p.m());
      const SimplexPoint y = map(x);
      CHECK(SimplexPoint::admissible(y.coords()));
      CHECK(l1_distance(y, tmap(x)) <= 1e-13);
    }
  }
}

TEST_CASE("property: apply_tensor is invariant under symmetrization") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t m = 2 + static_cast<std::size_t>(trial % 3);
    CubicTensor t(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        Rational s = 0;
        for (std::size_t k = 0; k < m; ++k) s += (t(i, j, k) = random_rational(rng, 0, 1) + Rational(1, 7));
        for (std::size_t k = 0; k < m; ++k) t(i, j, k) /= s;
      }
    CubicTensor sym(m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) sym(i, j, k) = (t(i, j, k) + t(j, i, k)) / 2;
    for (int s = 0; s < 10; ++s) {
      const SimplexPoint x = random_simplex_point(rng, m);
      CHECK(l1_distance(apply_tensor(t, x), apply_tensor(sym, x)) <= 1e-14);
    }
  }
}

TEST_CASE("property: weak pairs preserve the simplex") {
  Rng rng(8);
  const SqsoPair weak = fixtures::weak_example();
  for (int s = 0; s < 100; ++s) {
    const SimplexPoint x = random_simplex_point(rng, 3);
    CHECK(SimplexPoint::admissible(apply_sqso(weak, x).coords()));
  }
}

TEST_CASE("property: classification soundness") {
  Rng rng(99);
  int constant = 0, linear = 0, nonlinear = 0;
  for (const SqsoPair& p : strict_fixtures(rng)) {
    const Classification c = classify(p);
    const SqsoMap map(p);
    if (c.kind == OperatorClass::Constant) {
      ++constant;
      const std::vector<double> target = to_double(c.constant_point);
      for (int s = 0; s < 50; ++s) CHECK(l1_distance(map(random_simplex_point(rng, p.m())).coords(), target) <= 1e-13);
    } else if (c.kind == OperatorClass::Linear) {
      ++linear;
      REQUIRE(is_row_stochastic(c.stochastic_matrix));
      const LinearMap lin(c.stochastic_matrix);
      for (int s = 0; s < 50; ++s) {
        const SimplexPoint x = random_simplex_point(rng, p.m());
        CHECK(l1_distance(map(x), lin(x)) <= 1e-13);
      }
    } else {
      ++nonlinear;
    }
  }
  CHECK(constant >= 3);
  CHECK(linear >= 5);
  CHECK(nonlinear >= 10);
}

TEST_CASE("property: strict implies the symmetrized conditions and the determinant dichotomy") {
  Rng rng(31);
  for (const SqsoPair& p : strict_fixtures(rng)) {
    const RationalMatrix abt = p.a() * p.b().transpose();
    const RationalMatrix sym = Rational(1, 2) * (abt + abt.transpose());
    CHECK(sym == RationalMatrix::ones(p.m(), p.m()));
    if (p.det_a() != 0) CHECK(p.b_rows_identical());
    if (p.det_b() != 0) CHECK(p.a_rows_identical());
  }
}
