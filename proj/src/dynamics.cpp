#include "sqso/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

namespace sqso {

SimplexPoint Operator::operator()(const SimplexPoint& x) const {
  return std::visit([&](const auto& map) { return map(x); }, map_);
}

std::size_t Operator::m() const {
  return std::visit([](const auto& map) { return map.m(); }, map_);
}

std::string_view Operator::kind() const {
  switch (map_.index()) {
    case 0: return "sqso";
    case 1: return "tensor";
    case 2: return "linear";
    case 3: return "volterra";
  }
  return "?";
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "Converged";
    case StopReason::PeriodDetected: return "PeriodDetected";
    case StopReason::MaxStepsReached: return "MaxStepsReached";
  }
  return "?";
}

std::string_view to_string(LimitKind k) {
  switch (k) {
    case LimitKind::FixedPoint: return "FixedPoint";
    case LimitKind::Cycle: return "Cycle";
    case LimitKind::Undecided: return "Undecided";
  }
  return "?";
}

namespace {

bool separated(const std::vector<SimplexPoint>& pts, std::size_t n, std::size_t p, double min_gap) {
  for (std::size_t i = n - p + 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (l1_distance(pts[i], pts[j]) <= min_gap) return false;
  return true;
}

}  // namespace

TrajectoryRecord iterate(const Operator& op, const SimplexPoint& x0, const IterateOptions& options) {
  if (options.max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (!(options.conv_tol > 0.0)) throw std::invalid_argument("conv_tol must be positive");
  if (x0.size() != op.m()) throw std::invalid_argument("initial point has the wrong dimension");

  TrajectoryRecord traj;
  traj.points.reserve(std::min<std::size_t>(options.max_steps + 1, 4096));
  traj.points.push_back(x0);

  std::size_t calm_steps = 0;
  std::size_t candidate_lag = 0;
  std::size_t candidate_hits = 0;

  for (std::size_t n = 1; n <= options.max_steps; ++n) {
    traj.points.push_back(op(traj.points.back()));
    const SimplexPoint& x = traj.points.back();
    traj.step_deltas.push_back(l1_distance(x, traj.points[n - 1]));

    // Smallest lag whose earlier point lies within tolerance of x.
    std::size_t lag = 0;
    const std::size_t max_lag = std::min(kMaxCycleLag, n);
    for (std::size_t p = 1; p <= max_lag; ++p) {
      if (l1_distance(x, traj.points[n - p]) < options.conv_tol) {
        lag = p;
        break;
      }
    }
    // A damped oscillation around a fixed point revisits at lag 2 long before
    // its steps fall below tolerance; only well separated orbits are cycles.
    if (lag >= 2 && !separated(traj.points, n, lag, kCycleSeparation * options.conv_tol)) lag = 0;

    if (lag == 1) {
      candidate_lag = 0;
      candidate_hits = 0;
      if (++calm_steps >= kConvergencePatience) {
        traj.stop_reason = StopReason::Converged;
        return traj;
      }
      continue;
    }
    calm_steps = 0;
    if (lag == 0) {
      candidate_lag = 0;
      candidate_hits = 0;
      continue;
    }
    if (lag == candidate_lag) {
      ++candidate_hits;
    } else {
      candidate_lag = lag;
      candidate_hits = 1;
    }
    if (candidate_hits >= kCyclePersistence * lag) {
      traj.stop_reason = StopReason::PeriodDetected;
      traj.period = lag;
      return traj;
    }
  }
  traj.stop_reason = StopReason::MaxStepsReached;
  return traj;
}

LimitReport detect_limit(const TrajectoryRecord& traj, const Operator& op, double fp_tol) {
  LimitReport report;
  if (traj.points.empty()) return report;

  if (traj.stop_reason == StopReason::Converged) {
    const SimplexPoint& x = traj.last();
    const double residual = l1_distance(op(x), x);
    if (residual <= fp_tol) {
      report.kind = LimitKind::FixedPoint;
      report.points = {x};
      report.residual = residual;
    }
    return report;
  }

  if (traj.stop_reason == StopReason::PeriodDetected && traj.period >= 2 && traj.points.size() > traj.period) {
    const std::size_t p = traj.period;
    report.kind = LimitKind::Cycle;
    report.period = p;
    report.points.assign(traj.points.end() - static_cast<std::ptrdiff_t>(p), traj.points.end());
    for (const auto& y : report.points) {
      SimplexPoint z = y;
      for (std::size_t s = 0; s < p; ++s) z = op(z);
      report.residual = std::max(report.residual, l1_distance(z, y));
    }
  }
  return report;
}

}  // namespace sqso
