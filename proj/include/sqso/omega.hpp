#pragma once

// Upper estimates of omega-limit sets from Lyapunov level sets.
//
// Along a trajectory each certified psi_c is non-increasing and bounded, so it
// has a limit lambda_c(x0), and the omega-limit set lies in the intersection
// of the level sets {psi_c = lambda_c} over the simplex. When the rays and
// the all-ones vector span R^m that intersection is a single point.
// lambda_c is only estimated numerically: the stopped value is an upper bound
// of the true limit.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqso/dynamics.hpp"
#include "sqso/lyapunov.hpp"
#include "sqso/operators.hpp"

namespace sqso {

struct StoppingConfig {
  std::size_t max_steps = 10000;
  /// Trajectory convergence tolerance (see iterate).
  double conv_tol = 1e-12;
  /// lambda estimation stops once |psi(x^(n)) - psi(x^(n+1))| < decrement_tol
  /// for `patience` consecutive steps.
  double decrement_tol = 1e-13;
  std::size_t patience = 10;
};

enum class Certification {
  /// Refuse certificates whose preconditions fail (throws DomainError).
  Required,
  /// Run anyway; the result carries certified = false.
  Exploratory,
};

struct LambdaEstimate {
  double value = 0.0;
  /// psi(x^(N-1)) - psi(x^(N)) at the stopping step (0 when N = 0).
  double last_decrement = 0.0;
  /// Stopping step N.
  std::size_t steps = 0;
  /// True when the decrement criterion fired, false when the trajectory ran out.
  bool stabilized = false;
  bool certified = false;
};

/// Lambda estimate from an already computed series psi(x^(0)), psi(x^(1)), ...
LambdaEstimate lambda_from_series(std::span<const double> values, const StoppingConfig& stop);

LambdaEstimate estimate_lambda(const SqsoPair& pair, const LyapunovCertificate& cert, const SimplexPoint& x0,
                               const StoppingConfig& stop = {},
                               Certification certification = Certification::Required);

struct RayLambda {
  RaySource source = RaySource::FromA;
  IntegerVector ray;
  LambdaEstimate estimate;
};

struct OmegaOptions {
  StoppingConfig stop;
  Certification certification = Certification::Required;
  /// Trajectory tail used for empirical clustering; 0 means min(500, N/2).
  std::size_t tail = 0;
  double cluster_radius = 1e-6;
};

/// Tolerance on the level equations and simplex membership of a resolved point.
inline constexpr double kResolvedTolerance = 1e-8;

struct OmegaEstimate {
  std::vector<RayLambda> lambda_values;
  /// Rank of the ray matrix C stacked with the all-ones row (exact).
  std::size_t ray_matrix_rank = 0;
  std::optional<std::vector<double>> resolved_point;
  /// Largest |psi_c(x*) - lambda_c| (and |sum x* - 1|) of the resolved point.
  double solve_residual = 0.0;
  /// (c, lambda_c) level constraints when the point is not resolved.
  std::vector<RayLambda> level_set;
  std::vector<SimplexPoint> empirical_points;
  std::size_t trajectory_steps = 0;
  StopReason trajectory_stop = StopReason::MaxStepsReached;
  bool certified = false;
  std::string note;
};

/// Estimates lambda for every ray of every basis from one shared trajectory,
/// then either solves the level equations plus sum(x) = 1 (least squares,
/// when their rank is m) or reports them as a level-set description. An
/// empty ray set is reported through `note`, not as an error.
OmegaEstimate omega_upper_set(const SqsoPair& pair, std::span<const RayBasis> bases, const SimplexPoint& x0,
                              const OmegaOptions& options = {});

inline OmegaEstimate omega_upper_set(const SqsoPair& pair, const RayBasis& basis, const SimplexPoint& x0,
                                     const OmegaOptions& options = {}) {
  return omega_upper_set(pair, std::span<const RayBasis>(&basis, 1), x0, options);
}

/// Greedy l1 clustering of the last `tail` points: each point joins the first
/// representative within `radius`, otherwise it becomes one. Throws
/// std::invalid_argument if tail is 0 or exceeds the trajectory length.
std::vector<SimplexPoint> empirical_omega(const TrajectoryRecord& traj, std::size_t tail, double radius);

std::size_t default_tail(const TrajectoryRecord& traj);

}  // namespace sqso
