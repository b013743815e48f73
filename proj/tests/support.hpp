#pragma once

// Test-only oracles and generators. Nothing here calls the elimination or
// double-description code it is used to check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "sqso/numerics.hpp"
#include "sqso/operators.hpp"

namespace sqso::testing {

using Rng = std::mt19937_64;

/// Laplace expansion along the first row.
inline Rational cofactor_det(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational det = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j) == 0) continue;
    RationalMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    const Rational term = m(0, j) * cofactor_det(minor);
    det += (j % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

/// Uniform rational p/q with q in [1, max_den] and p/q in [lo, hi].
inline Rational random_rational(Rng& rng, const Rational& lo, const Rational& hi, long max_den = 12) {
  std::uniform_int_distribution<long> den_dist(1, max_den);
  const long q = den_dist(rng);
  Rational lo_q = lo * q;
  Rational hi_q = hi * q;
  Integer lo_n = lo_q.get_num();
  mpz_cdiv_q(lo_n.get_mpz_t(), lo_q.get_num_mpz_t(), lo_q.get_den_mpz_t());
  Integer hi_n;
  mpz_fdiv_q(hi_n.get_mpz_t(), hi_q.get_num_mpz_t(), hi_q.get_den_mpz_t());
  if (hi_n < lo_n) return lo;
  std::uniform_int_distribution<long> num_dist(lo_n.get_si(), hi_n.get_si());
  Rational r(num_dist(rng), q);
  r.canonicalize();
  return r;
}

inline RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, const Rational& lo,
                                    const Rational& hi, long max_den = 12) {
  RationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng, lo, hi, max_den);
  return m;
}

/// Uniform point on the simplex (normalized exponentials).
inline SimplexPoint random_simplex_point(Rng& rng, std::size_t m) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(m);
  double s = 0.0;
  for (auto& v : x) {
    v = e(rng);
    s += v;
  }
  for (auto& v : x) v /= s;
  return SimplexPoint(std::move(x));
}

namespace detail {

inline IntegerVector primitive(std::vector<Rational> v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntegerVector out;
  Integer g = 0;
  for (const auto& x : v) {
    out.push_back(x.get_num() * (l / x.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  for (auto& x : out) x /= g;
  return out;
}

}  // namespace detail

/// Brute-force extreme rays of {c >= 0 : (M - I) c <= 0} for m <= 3: every
/// choice of m - 1 constraints with a one-dimensional solution space gives a
/// candidate direction; keep the feasible ones.
inline std::vector<IntegerVector> brute_force_extreme_rays(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<RationalVector> constraints;
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector h(n, Rational(0));
    h[i] = -1;
    constraints.push_back(h);
  }
  for (std::size_t i = 0; i < n; ++i) {
    RationalVector h(m.row(i).begin(), m.row(i).end());
    h[i] -= 1;
    constraints.push_back(h);
  }

  auto feasible = [&](const RationalVector& v) {
    for (const auto& h : constraints) {
      Rational s = 0;
      for (std::size_t k = 0; k < n; ++k) s += h[k] * v[k];
      if (s > 0) return false;
    }
    return true;
  };

  std::vector<RationalVector> directions;
  if (n == 1) {
    directions.push_back({Rational(1)});
  } else if (n == 2) {
    for (const auto& h : constraints) directions.push_back({-h[1], h[0]});
  } else if (n == 3) {
    for (std::size_t a = 0; a < constraints.size(); ++a)
      for (std::size_t b = a + 1; b < constraints.size(); ++b) {
        const auto& u = constraints[a];
        const auto& w = constraints[b];
        directions.push_back({u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]});
      }
  }

  std::set<IntegerVector> rays;
  for (auto d : directions) {
    if (std::all_of(d.begin(), d.end(), [](const Rational& x) { return x == 0; })) continue;
    for (int sign : {1, -1}) {
      RationalVector v = d;
      if (sign < 0)
        for (auto& x : v) x = -x;
      if (feasible(v)) rays.insert(detail::primitive(v));
    }
  }
  return {rays.begin(), rays.end()};
}

inline RationalVector to_rational(const IntegerVector& v) { return {v.begin(), v.end()}; }

}  // namespace sqso::testing
