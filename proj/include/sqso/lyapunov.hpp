#pragma once

// Linear Lyapunov certificates psi_c(x) = sum_k c_k x_k for separable
// operators, and their product forms.
//
// For a pair with entries in [0, 1] every c >= 0 with M c <= c (M = A or B)
// gives a non-increasing psi_c along all trajectories. The admissible c form
// the polyhedral cone {c >= 0 : (M - I) c <= 0}; cone_extreme_rays returns
// its generators exactly.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqso/dynamics.hpp"
#include "sqso/numerics.hpp"
#include "sqso/operators.hpp"

namespace sqso {

enum class RaySource { FromA, FromB };

std::string_view to_string(RaySource s);

struct RayBasis {
  std::size_t m = 0;
  RaySource source = RaySource::FromA;
  /// Primitive nonnegative integer vectors, sorted lexicographically.
  std::vector<IntegerVector> rays;

  bool empty() const { return rays.empty(); }
};

/// Extreme rays of {c : c >= 0, (M - I) c <= 0} by the double description
/// method, starting from the nonnegative orthant and adding one row of M - I
/// at a time. Zero rows of M - I are skipped. Throws std::invalid_argument for
/// non-square M.
RayBasis cone_extreme_rays(const RationalMatrix& m, RaySource source = RaySource::FromA);

/// c >= 0 and (M - I) c <= 0, exactly.
bool cone_membership(const RationalMatrix& m, std::span<const Rational> c);

/// (a_1, ..., a_m) with a_i the i-th row sum of A, when every a_i <= 1.
std::optional<RationalVector> rowsum_candidate(const RationalMatrix& a);

struct PreconditionReport {
  bool a_entries_in_unit_interval = false;
  bool b_entries_in_unit_interval = false;
  bool strict = false;
  bool in_admissible_family = false;

  bool certified() const {
    return a_entries_in_unit_interval && b_entries_in_unit_interval && strict && in_admissible_family;
  }
};

PreconditionReport check_certificate_preconditions(const SqsoPair& pair);

struct LinearForm {
  RationalVector c;
};

/// prod_k (sum_i forms[k][i] x_i)^exponents[k]
struct ProductForm {
  std::vector<RationalVector> forms;
  std::vector<double> exponents;
};

class LyapunovCertificate {
 public:
  /// Throws std::invalid_argument unless c >= 0 with a positive sum.
  static LyapunovCertificate linear(RationalVector c);
  static LyapunovCertificate linear(std::span<const Integer> c);
  /// Throws std::invalid_argument on negative coefficients or exponents,
  /// mismatched lengths, or no forms.
  static LyapunovCertificate product(std::vector<RationalVector> forms, std::vector<double> exponents);

  bool is_linear() const { return std::holds_alternative<LinearForm>(form_); }
  const LinearForm& as_linear() const { return std::get<LinearForm>(form_); }
  const ProductForm& as_product() const { return std::get<ProductForm>(form_); }
  std::size_t m() const;

  /// Every coefficient vector involved (one for a linear form).
  std::vector<RationalVector> vectors() const;

 private:
  explicit LyapunovCertificate(std::variant<LinearForm, ProductForm> f) : form_(std::move(f)) {}
  std::variant<LinearForm, ProductForm> form_;
};

/// Linear: sum_k c_k x_k. Product: prod_k (c^(k) . x)^p_k with 0^0 = 1.
double lyapunov_value(const LyapunovCertificate& cert, const SimplexPoint& x);

/// The certificate preconditions hold and every coefficient vector of the
/// certificate lies in the A-side or the B-side cone.
bool certifies(const SqsoPair& pair, const LyapunovCertificate& cert);

struct MonotoneReport {
  bool monotone = true;
  /// First n with psi(x^(n+1)) > psi(x^(n)) + allowance.
  std::optional<std::size_t> first_violation;
  double max_increase = 0.0;
  double min_value = 0.0;
  double max_value = 0.0;
  /// Linear forms only: min c <= psi <= max c (within the slack) everywhere.
  std::optional<bool> within_bounds;
};

/// Checks psi(x^(n+1)) <= psi(x^(n)) + allowance along the trajectory. The
/// allowance is `slack` for linear forms and slack * max(|psi(x^(n))|,
/// |psi(x^(n+1))|) for product forms.
MonotoneReport verify_monotone(const LyapunovCertificate& cert, const TrajectoryRecord& traj, double slack);

/// Copy of `traj` with the series psi(x^(n)) stored under `name`.
TrajectoryRecord with_trace(TrajectoryRecord traj, const std::string& name, const LyapunovCertificate& cert);

}  // namespace sqso
