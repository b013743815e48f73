#pragma once

// Trajectories x^(n+1) = V(x^(n)) of simplex operators, with convergence and
// period detection.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqso/operators.hpp"

namespace sqso {

/// Any operator the dynamics can iterate.
class Operator {
 public:
  using Map = std::variant<SqsoMap, TensorMap, LinearMap, VolterraOperator>;

  explicit Operator(Map map) : map_(std::move(map)) {}

  static Operator from_pair(const SqsoPair& pair) { return Operator(SqsoMap(pair)); }
  static Operator from_tensor(const CubicTensor& t) { return Operator(TensorMap(t)); }
  static Operator from_stochastic_matrix(const RationalMatrix& p) { return Operator(LinearMap(p)); }
  static Operator from_volterra(VolterraOperator v) { return Operator(std::move(v)); }

  SimplexPoint operator()(const SimplexPoint& x) const;
  std::size_t m() const;
  std::string_view kind() const;

 private:
  Map map_;
};

struct IterateOptions {
  std::size_t max_steps = 10000;
  double conv_tol = 1e-12;
};

/// Consecutive sub-tolerance steps required before declaring convergence.
inline constexpr std::size_t kConvergencePatience = 10;
/// Revisit search looks back at most this many steps.
inline constexpr std::size_t kMaxCycleLag = 50;
/// A revisit with lag p must persist for this many multiples of p.
inline constexpr std::size_t kCyclePersistence = 3;

/// Points of a detected cycle must be pairwise farther apart than this
/// multiple of conv_tol.
inline constexpr double kCycleSeparation = 1e3;

enum class StopReason { Converged, PeriodDetected, MaxStepsReached };

std::string_view to_string(StopReason r);

struct TrajectoryRecord {
  std::vector<SimplexPoint> points;
  /// step_deltas[n] = |points[n+1] - points[n]|_1.
  std::vector<double> step_deltas;
  std::map<std::string, std::vector<double>> lyapunov_traces;
  StopReason stop_reason = StopReason::MaxStepsReached;
  /// Detected period when stop_reason == PeriodDetected, else 0.
  std::size_t period = 0;

  std::size_t steps() const { return step_deltas.size(); }
  const SimplexPoint& last() const { return points.back(); }
};

/// Runs until convergence (kConvergencePatience consecutive l1 steps below
/// conv_tol), a persistent revisit with lag p >= 2 (kCyclePersistence * p
/// steps) whose last p points are pairwise separated, or max_steps. Iterates are never renormalized: an iterate leaving
/// the simplex throws SimplexViolation.
TrajectoryRecord iterate(const Operator& op, const SimplexPoint& x0, const IterateOptions& options = {});

enum class LimitKind { FixedPoint, Cycle, Undecided };

std::string_view to_string(LimitKind k);

struct LimitReport {
  LimitKind kind = LimitKind::Undecided;
  /// FixedPoint: {x*}. Cycle: one period of the orbit, in visiting order.
  std::vector<SimplexPoint> points;
  std::size_t period = 0;
  /// |V(x*) - x*|_1 for FixedPoint, the largest |V^p(y) - y|_1 over the cycle
  /// for Cycle, 0 otherwise.
  double residual = 0.0;
};

LimitReport detect_limit(const TrajectoryRecord& traj, const Operator& op, double fp_tol = 1e-9);

}  // namespace sqso
