#include "sqso/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqso {

namespace {

// Constraint h . c <= 0 together with, for every current ray, whether the
// constraint is tight.
struct Ray {
  IntegerVector v;
  std::vector<bool> tight;  // indexed by processed constraint
};

Integer dot(const IntegerVector& a, const IntegerVector& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_subset(const std::vector<bool>& small, const std::vector<bool>& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] && !big[i]) return false;
  return true;
}

std::vector<bool> intersect(const std::vector<bool>& a, const std::vector<bool>& b) {
  std::vector<bool> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

void make_primitive(IntegerVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

bool unit_interval(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (const auto& x : m.row(i))
      if (x < 0 || x > 1) return false;
  return true;
}

RationalVector to_rational(std::span<const Integer> v) {
  RationalVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

void require_nonnegative(std::span<const Rational> c, const char* what) {
  if (c.empty()) throw std::invalid_argument(std::string(what) + " has no coefficients");
  Rational sum = 0;
  for (const auto& x : c) {
    if (x < 0) throw std::invalid_argument(std::string(what) + " has a negative coefficient");
    sum += x;
  }
  if (sum == 0) throw std::invalid_argument(std::string(what) + " is the zero vector");
}

double form_value(const RationalVector& c, const SimplexPoint& x) {
  if (c.size() != x.size()) throw std::invalid_argument("certificate and point dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) s += to_double(c[i]) * x[i];
  return s;
}

}  // namespace

std::string_view to_string(RaySource s) { return s == RaySource::FromA ? "A" : "B"; }

RayBasis cone_extreme_rays(const RationalMatrix& m, RaySource source) {
  if (!m.square()) throw std::invalid_argument("cone_extreme_rays needs a square matrix");
  const std::size_t n = m.rows();

  RayBasis basis;
  basis.m = n;
  basis.source = source;
  if (n == 0) return basis;

  // Nonnegative orthant: constraints -c_i <= 0, i = 0..n-1; ray e_i is tight
  // at every constraint except i.
  std::vector<Ray> rays;
  for (std::size_t i = 0; i < n; ++i) {
    Ray r{IntegerVector(n, 0), std::vector<bool>(n, true)};
    r.v[i] = 1;
    r.tight[i] = false;
    rays.push_back(std::move(r));
  }

  const RationalMatrix shifted = m - RationalMatrix::identity(n);
  for (std::size_t row = 0; row < n && !rays.empty(); ++row) {
    const IntegerVector h = primitive_integer(shifted.row(row));
    if (std::all_of(h.begin(), h.end(), [](const Integer& x) { return x == 0; })) continue;

    std::vector<Integer> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = dot(h, rays[r].v);
      if (value[r] > 0) pos.push_back(r);
      if (value[r] < 0) neg.push_back(r);
    }

    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (value[r] > 0) continue;
      Ray kept = rays[r];
      kept.tight.push_back(value[r] == 0);
      next.push_back(std::move(kept));
    }

    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        // Combinatorial adjacency: no third ray is tight wherever both are.
        const std::vector<bool> common = intersect(rays[p].tight, rays[q].tight);
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r != p && r != q && is_subset(common, rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;

        Ray fresh{IntegerVector(n), common};
        for (std::size_t i = 0; i < n; ++i) fresh.v[i] = value[p] * rays[q].v[i] - value[q] * rays[p].v[i];
        make_primitive(fresh.v);
        fresh.tight.push_back(true);
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
  }

  basis.rays.reserve(rays.size());
  for (auto& r : rays) basis.rays.push_back(std::move(r.v));
  std::sort(basis.rays.begin(), basis.rays.end());
  return basis;
}

bool cone_membership(const RationalMatrix& m, std::span<const Rational> c) {
  if (!m.square() || m.rows() != c.size()) throw std::invalid_argument("cone_membership: dimension mismatch");
  for (const auto& x : c)
    if (x < 0) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (dot(m.row(i), c) > c[i]) return false;
  return true;
}

std::optional<RationalVector> rowsum_candidate(const RationalMatrix& a) {
  RationalVector sums(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& x : a.row(i)) sums[i] += x;
    if (sums[i] > 1) return std::nullopt;
  }
  return sums;
}

PreconditionReport check_certificate_preconditions(const SqsoPair& pair) {
  PreconditionReport report;
  report.a_entries_in_unit_interval = unit_interval(pair.a());
  report.b_entries_in_unit_interval = unit_interval(pair.b());
  report.strict = pair.admissibility() == Admissibility::Strict;
  report.in_admissible_family = pair.in_admissible_family();
  return report;
}

LyapunovCertificate LyapunovCertificate::linear(RationalVector c) {
  require_nonnegative(c, "linear form");
  return LyapunovCertificate(LinearForm{std::move(c)});
}

LyapunovCertificate LyapunovCertificate::linear(std::span<const Integer> c) { return linear(to_rational(c)); }

LyapunovCertificate LyapunovCertificate::product(std::vector<RationalVector> forms, std::vector<double> exponents) {
  if (forms.empty()) throw std::invalid_argument("product form needs at least one factor");
  if (forms.size() != exponents.size()) throw std::invalid_argument("product form: one exponent per factor");
  for (const auto& f : forms) {
    if (f.size() != forms.front().size()) throw std::invalid_argument("product form: factor lengths differ");
    require_nonnegative(f, "product factor");
  }
  for (double p : exponents)
    if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("product form: exponents must be >= 0");
  return LyapunovCertificate(ProductForm{std::move(forms), std::move(exponents)});
}

std::size_t LyapunovCertificate::m() const {
  return is_linear() ? as_linear().c.size() : as_product().forms.front().size();
}

std::vector<RationalVector> LyapunovCertificate::vectors() const {
  if (is_linear()) return {as_linear().c};
  return as_product().forms;
}

double lyapunov_value(const LyapunovCertificate& cert, const SimplexPoint& x) {
  if (cert.is_linear()) return form_value(cert.as_linear().c, x);
  const auto& prod = cert.as_product();
  double value = 1.0;
  for (std::size_t k = 0; k < prod.forms.size(); ++k) {
    const double p = prod.exponents[k];
    if (p == 0.0) continue;
    const double base = std::max(0.0, form_value(prod.forms[k], x));
    if (base == 0.0) return 0.0;
    value *= std::pow(base, p);
  }
  return value;
}

bool certifies(const SqsoPair& pair, const LyapunovCertificate& cert) {
  if (!check_certificate_preconditions(pair).certified()) return false;
  if (cert.m() != pair.m()) return false;
  for (const auto& c : cert.vectors()) {
    if (!cone_membership(pair.a(), c) && !cone_membership(pair.b(), c)) return false;
  }
  return true;
}

MonotoneReport verify_monotone(const LyapunovCertificate& cert, const TrajectoryRecord& traj, double slack) {
  if (traj.points.empty()) throw std::invalid_argument("verify_monotone needs a nonempty trajectory");
  MonotoneReport report;

  double prev = lyapunov_value(cert, traj.points.front());
  report.min_value = prev;
  report.max_value = prev;
  for (std::size_t n = 0; n + 1 < traj.points.size(); ++n) {
    const double next = lyapunov_value(cert, traj.points[n + 1]);
    const double allowance =
        cert.is_linear() ? slack : slack * std::max(std::abs(prev), std::abs(next));
    const double increase = next - prev;
    report.max_increase = std::max(report.max_increase, increase);
    if (increase > allowance && report.monotone) {
      report.monotone = false;
      report.first_violation = n;
    }
    report.min_value = std::min(report.min_value, next);
    report.max_value = std::max(report.max_value, next);
    prev = next;
  }

  if (cert.is_linear()) {
    const auto& c = cert.as_linear().c;
    const double lo = to_double(*std::min_element(c.begin(), c.end()));
    const double hi = to_double(*std::max_element(c.begin(), c.end()));
    report.within_bounds = report.min_value >= lo - slack && report.max_value <= hi + slack;
  }
  return report;
}

TrajectoryRecord with_trace(TrajectoryRecord traj, const std::string& name, const LyapunovCertificate& cert) {
  std::vector<double> series;
  series.reserve(traj.points.size());
  for (const auto& x : traj.points) series.push_back(lyapunov_value(cert, x));
  traj.lyapunov_traces[name] = std::move(series);
  return traj;
}

}  // namespace sqso
