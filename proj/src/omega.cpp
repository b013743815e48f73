#include "sqso/omega.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqso/error.hpp"

namespace sqso {

namespace {

std::vector<double> series(const LyapunovCertificate& cert, const TrajectoryRecord& traj) {
  std::vector<double> values;
  values.reserve(traj.points.size());
  for (const auto& x : traj.points) values.push_back(lyapunov_value(cert, x));
  return values;
}

// |psi(x) - psi(y)| <= max_k c_k |x - y|_1 for a linear form, so a trajectory
// step below decrement_tol / max c cannot stop before the lambda criterion
// has seen `patience` small decrements.
IterateOptions iterate_options(const StoppingConfig& stop, const std::vector<RationalVector>& linear_forms) {
  double tol = stop.conv_tol;
  for (const auto& c : linear_forms) {
    const double top = to_double(*std::max_element(c.begin(), c.end()));
    if (top > 0) tol = std::min(tol, stop.decrement_tol / top);
  }
  return {stop.max_steps, tol};
}

}  // namespace

LambdaEstimate lambda_from_series(std::span<const double> values, const StoppingConfig& stop) {
  if (values.empty()) throw std::invalid_argument("lambda_from_series: empty series");
  LambdaEstimate est;
  std::size_t run = 0;
  for (std::size_t n = 1; n < values.size(); ++n) {
    const double dec = values[n - 1] - values[n];
    run = std::abs(dec) < stop.decrement_tol ? run + 1 : 0;
    est.value = values[n];
    est.last_decrement = dec;
    est.steps = n;
    if (run >= stop.patience) {
      est.stabilized = true;
      return est;
    }
  }
  est.value = values.back();
  return est;
}

LambdaEstimate estimate_lambda(const SqsoPair& pair, const LyapunovCertificate& cert, const SimplexPoint& x0,
                               const StoppingConfig& stop, Certification certification) {
  const bool certified = certifies(pair, cert);
  if (!certified && certification == Certification::Required) {
    throw DomainError("certificate preconditions fail for this pair");
  }
  std::vector<RationalVector> forms;
  if (cert.is_linear()) forms.push_back(cert.as_linear().c);
  const TrajectoryRecord traj = iterate(Operator::from_pair(pair), x0, iterate_options(stop, forms));
  LambdaEstimate est = lambda_from_series(series(cert, traj), stop);
  est.certified = certified;
  return est;
}

std::size_t default_tail(const TrajectoryRecord& traj) {
  return std::max<std::size_t>(1, std::min<std::size_t>(500, traj.points.size() / 2));
}

std::vector<SimplexPoint> empirical_omega(const TrajectoryRecord& traj, std::size_t tail, double radius) {
  if (tail == 0 || tail > traj.points.size()) {
    throw std::invalid_argument("empirical_omega: tail must be in [1, trajectory length]");
  }
  std::vector<SimplexPoint> reps;
  for (auto it = traj.points.end() - static_cast<std::ptrdiff_t>(tail); it != traj.points.end(); ++it) {
    const bool covered =
        std::any_of(reps.begin(), reps.end(), [&](const SimplexPoint& r) { return l1_distance(r, *it) <= radius; });
    if (!covered) reps.push_back(*it);
  }
  return reps;
}

OmegaEstimate omega_upper_set(const SqsoPair& pair, std::span<const RayBasis> bases, const SimplexPoint& x0,
                              const OmegaOptions& options) {
  const std::size_t m = pair.m();
  OmegaEstimate out;

  bool certified = check_certificate_preconditions(pair).certified();
  for (const auto& basis : bases) {
    if (basis.m != m) throw std::invalid_argument("ray basis dimension differs from the pair");
    const RationalMatrix& side = basis.source == RaySource::FromA ? pair.a() : pair.b();
    for (const auto& ray : basis.rays) {
      RationalVector c(ray.begin(), ray.end());
      certified = certified && cone_membership(side, c);
    }
  }
  if (!certified && options.certification == Certification::Required) {
    throw DomainError("rays are not certified Lyapunov directions for this pair");
  }
  out.certified = certified;

  std::vector<RationalVector> forms;
  for (const auto& basis : bases)
    for (const auto& ray : basis.rays) forms.emplace_back(ray.begin(), ray.end());
  const TrajectoryRecord traj = iterate(Operator::from_pair(pair), x0, iterate_options(options.stop, forms));
  out.trajectory_steps = traj.steps();
  out.trajectory_stop = traj.stop_reason;

  std::vector<RationalVector> rows;
  for (const auto& basis : bases) {
    for (const auto& ray : basis.rays) {
      RayLambda rl;
      rl.source = basis.source;
      rl.ray = ray;
      rl.estimate = lambda_from_series(series(LyapunovCertificate::linear(ray), traj), options.stop);
      rl.estimate.certified = certified;
      out.lambda_values.push_back(std::move(rl));
      rows.emplace_back(ray.begin(), ray.end());
    }
  }
  if (out.lambda_values.empty()) {
    out.note = "no rays available; the omega-limit set is only known to be nonempty";
  }
  rows.emplace_back(m, Rational(1));
  out.ray_matrix_rank = mat_rank(RationalMatrix::from_rows(rows));

  if (out.ray_matrix_rank == m) {
    const auto q = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd c(q, static_cast<Eigen::Index>(m));
    Eigen::VectorXd rhs(q);
    for (Eigen::Index i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < m; ++j) c(i, static_cast<Eigen::Index>(j)) = to_double(rows[i][j]);
      rhs(i) = i + 1 < q ? out.lambda_values[static_cast<std::size_t>(i)].estimate.value : 1.0;
    }
    const Eigen::VectorXd x = c.colPivHouseholderQr().solve(rhs);
    out.solve_residual = (c * x - rhs).cwiseAbs().maxCoeff();

    std::vector<double> point(x.data(), x.data() + x.size());
    const bool inside = std::all_of(point.begin(), point.end(), [](double v) { return v >= -kResolvedTolerance; });
    if (out.solve_residual > kResolvedTolerance || !inside) {
      if (certified) {
        throw std::runtime_error("level equations are infeasible on the simplex (residual " +
                                 std::to_string(out.solve_residual) + ")");
      }
      out.note = "level equations are infeasible on the simplex; rays are not certified";
    }
    out.resolved_point = std::move(point);
  } else {
    out.level_set = out.lambda_values;
  }

  const std::size_t tail = options.tail == 0 ? default_tail(traj) : std::min(options.tail, traj.points.size());
  out.empirical_points = empirical_omega(traj, tail, options.cluster_radius);
  return out;
}

}  // namespace sqso
