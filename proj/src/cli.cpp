#include "sqso/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sqso/dynamics.hpp"
#include "sqso/error.hpp"
#include "sqso/lyapunov.hpp"
#include "sqso/omega.hpp"

namespace sqso::cli {

namespace {

RationalMatrix parse_matrix(const Json& rows, std::size_t m, const char* name) {
  if (!rows.is_array() || rows.size() != m) {
    throw std::invalid_argument(std::string("model: ") + name + " must be an array of " + std::to_string(m) + " rows");
  }
  RationalMatrix out(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    const Json& row = rows[i];
    if (!row.is_array() || row.size() != m) {
      throw std::invalid_argument(std::string("model: ") + name + " row " + std::to_string(i + 1) + " must have " +
                                  std::to_string(m) + " entries");
    }
    for (std::size_t j = 0; j < m; ++j) {
      const Json& e = row[j];
      if (e.is_string()) {
        out(i, j) = rat_parse(e.get<std::string>());
      } else if (e.is_number_integer()) {
        out(i, j) = rat_parse(e.dump());
      } else {
        throw std::invalid_argument(std::string("model: ") + name + "[" + std::to_string(i + 1) + "][" +
                                    std::to_string(j + 1) + "] must be a rational string");
      }
    }
  }
  return out;
}

Json rational_json(const Rational& r) { return rat_format(r); }

Json rational_row(std::span<const Rational> v) {
  Json arr = Json::array();
  for (const auto& x : v) arr.push_back(rat_format(x));
  return arr;
}

Json matrix_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(rational_row(m.row(i)));
  return rows;
}

Json integer_row(std::span<const Integer> v) {
  Json arr = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p()) {
      arr.push_back(x.get_si());
    } else {
      arr.push_back(x.get_str());
    }
  }
  return arr;
}

Json point_json(const SimplexPoint& x) { return to_json(x.coords()); }

Json points_json(const std::vector<SimplexPoint>& pts) {
  Json arr = Json::array();
  for (const auto& p : pts) arr.push_back(point_json(p));
  return arr;
}

Json preconditions_json(const PreconditionReport& r) {
  return Json{{"entries_in_unit_interval_A", r.a_entries_in_unit_interval},
              {"entries_in_unit_interval_B", r.b_entries_in_unit_interval},
              {"strict", r.strict},
              {"in_admissible_family", r.in_admissible_family},
              {"certified", r.certified()}};
}

Json lambda_json(const RayLambda& rl) {
  return Json{{"side", std::string(to_string(rl.source))},
              {"ray", integer_row(rl.ray)},
              {"lambda", rl.estimate.value},
              {"last_decrement", rl.estimate.last_decrement},
              {"steps", rl.estimate.steps},
              {"stabilized", rl.estimate.stabilized}};
}

struct Context {
  std::string command;
  std::string model_path;
  ModelFile model;
  Json inputs = Json::object();
};

Json envelope(const Context& ctx, Json result, int exit_code) {
  Json model = Json::object();
  model["path"] = ctx.model_path;
  if (ctx.model.label) model["label"] = *ctx.model.label;
  model["m"] = ctx.model.m;
  return Json{{"command", ctx.command},
              {"model", model},
              {"inputs", ctx.inputs},
              {"result", std::move(result)},
              {"exit_status", exit_code}};
}

int emit(const Context& ctx, Json result, int exit_code, std::ostream& out) {
  write_json(envelope(ctx, std::move(result), exit_code), out);
  return exit_code;
}

Json admissibility_json(const SqsoPair& pair) {
  return Json{{"admissibility", std::string(to_string(pair.admissibility()))},
              {"det_A", rational_json(pair.det_a())},
              {"det_B", rational_json(pair.det_b())},
              {"rows_identical_A", pair.a_rows_identical()},
              {"rows_identical_B", pair.b_rows_identical()},
              {"in_admissible_family", pair.in_admissible_family()}};
}

int cmd_validate(const Context& ctx, const SqsoPair& pair, std::ostream& out) {
  const int code = pair.admissibility() == Admissibility::Invalid ? kExitDomain : kExitOk;
  return emit(ctx, admissibility_json(pair), code, out);
}

int cmd_classify(const Context& ctx, const SqsoPair& pair, std::ostream& out) {
  if (pair.admissibility() != Admissibility::Strict) {
    Json result{{"case", nullptr},
                {"admissibility", std::string(to_string(pair.admissibility()))},
                {"note", "classification is defined for strictly separable pairs only"}};
    return emit(ctx, std::move(result), kExitDomain, out);
  }
  const Classification c = classify(pair);
  Json result{{"case", std::string(to_string(c.kind))}};
  if (c.kind == OperatorClass::Constant) {
    result["point"] = rational_row(c.constant_point);
  } else if (c.kind == OperatorClass::Linear) {
    result["stochastic_matrix"] = matrix_json(c.stochastic_matrix);
  }
  return emit(ctx, std::move(result), kExitOk, out);
}

Json x0_inputs(const std::string& text, const InitialPoint& x0) {
  Json j{{"x0", text}, {"x0_point", point_json(x0.point)}};
  if (x0.rescaled_from) j["x0_rescaled_from_sum"] = rat_format(*x0.rescaled_from);
  return j;
}

int cmd_simulate(Context& ctx, const SqsoPair& pair, const std::string& x0_text, std::size_t steps, double tol,
                 const std::string& csv_path, std::ostream& out) {
  const InitialPoint x0 = parse_initial_point(x0_text, pair.m());
  ctx.inputs = x0_inputs(x0_text, x0);
  ctx.inputs["steps"] = steps;
  ctx.inputs["tol"] = tol;
  ctx.inputs["out"] = csv_path.empty() ? Json(nullptr) : Json(csv_path);
  if (pair.admissibility() == Admissibility::Invalid) {
    return emit(ctx, Json{{"admissibility", "Invalid"}, {"note", "an Invalid pair does not define an operator"}},
                kExitDomain, out);
  }

  const Operator op = Operator::from_pair(pair);
  const TrajectoryRecord traj = iterate(op, x0.point, {steps, tol});
  const LimitReport limit = detect_limit(traj, op);

  if (!csv_path.empty()) {
    std::ofstream f(csv_path);
    if (!f) throw std::runtime_error("cannot open " + csv_path + " for writing");
    write_trajectory_csv(traj, f);
    if (!f) throw std::runtime_error("failed writing " + csv_path);
  }

  Json limit_json{{"kind", std::string(to_string(limit.kind))},
                  {"points", points_json(limit.points)},
                  {"period", limit.period},
                  {"residual", limit.residual}};
  Json result{{"steps", traj.steps()},
              {"stop_reason", std::string(to_string(traj.stop_reason))},
              {"period", traj.period},
              {"final_point", point_json(traj.last())},
              {"final_delta", traj.step_deltas.empty() ? 0.0 : traj.step_deltas.back()},
              {"limit", std::move(limit_json)}};
  return emit(ctx, std::move(result), kExitOk, out);
}

int cmd_lyapunov(Context& ctx, const SqsoPair& pair, const std::string& side, std::ostream& out) {
  ctx.inputs["side"] = side;
  const PreconditionReport pre = check_certificate_preconditions(pair);
  Json result{{"admissibility", std::string(to_string(pair.admissibility()))},
              {"preconditions", preconditions_json(pre)}};
  if (!pre.certified()) {
    result["note"] = "certificate preconditions fail: rays below are exploratory, not certified";
  }

  Json sides = Json::array();
  auto add_side = [&](RaySource source) {
    const RationalMatrix& m = source == RaySource::FromA ? pair.a() : pair.b();
    const RayBasis basis = cone_extreme_rays(m, source);
    Json rays = Json::array();
    for (const auto& r : basis.rays) rays.push_back(integer_row(r));
    Json entry{{"side", std::string(to_string(source))}, {"rays", std::move(rays)}};
    if (basis.empty()) {
      entry["note"] = std::string("no nonzero solution of ") + std::string(to_string(source)) + "c <= c";
    }
    const auto candidate = rowsum_candidate(m);
    entry["rowsum_candidate"] = candidate ? rational_row(*candidate) : Json(nullptr);
    sides.push_back(std::move(entry));
  };
  if (side == "A" || side == "both") add_side(RaySource::FromA);
  if (side == "B" || side == "both") add_side(RaySource::FromB);
  result["sides"] = std::move(sides);

  const int code = pair.admissibility() == Admissibility::Invalid ? kExitDomain : kExitOk;
  return emit(ctx, std::move(result), code, out);
}

int cmd_omega(Context& ctx, const SqsoPair& pair, const std::string& x0_text, std::size_t steps, std::ostream& out) {
  const InitialPoint x0 = parse_initial_point(x0_text, pair.m());
  ctx.inputs = x0_inputs(x0_text, x0);
  ctx.inputs["steps"] = steps;

  const PreconditionReport pre = check_certificate_preconditions(pair);
  if (!pre.certified()) {
    Json result{{"preconditions", preconditions_json(pre)},
                {"note", "certificate preconditions fail; no certified omega-limit estimate"}};
    return emit(ctx, std::move(result), kExitDomain, out);
  }

  const std::vector<RayBasis> bases = {cone_extreme_rays(pair.a(), RaySource::FromA),
                                       cone_extreme_rays(pair.b(), RaySource::FromB)};
  OmegaOptions options;
  options.stop.max_steps = steps;
  const OmegaEstimate est = omega_upper_set(pair, bases, x0.point, options);

  Json lambdas = Json::array();
  for (const auto& rl : est.lambda_values) lambdas.push_back(lambda_json(rl));
  Json level = Json::array();
  for (const auto& rl : est.level_set) {
    level.push_back(Json{{"c", integer_row(rl.ray)}, {"lambda", rl.estimate.value}});
  }
  Json result{{"preconditions", preconditions_json(pre)},
              {"lambda", std::move(lambdas)},
              {"ray_matrix_rank", est.ray_matrix_rank},
              {"resolved_point", est.resolved_point ? to_json(*est.resolved_point) : Json(nullptr)},
              {"solve_residual", est.solve_residual},
              {"level_set", std::move(level)},
              {"empirical_points", points_json(est.empirical_points)},
              {"trajectory", Json{{"steps", est.trajectory_steps},
                                  {"stop_reason", std::string(to_string(est.trajectory_stop))}}}};
  if (!est.note.empty()) result["note"] = est.note;
  return emit(ctx, std::move(result), kExitOk, out);
}

}  // namespace

ModelFile parse_model(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("model: top level must be an object");
  for (const char* key : {"m", "A", "B"}) {
    if (!doc.contains(key)) throw std::invalid_argument(std::string("model: missing \"") + key + "\"");
  }
  if (!doc["m"].is_number_unsigned() || doc["m"].get<std::size_t>() == 0) {
    throw std::invalid_argument("model: \"m\" must be a positive integer");
  }
  ModelFile model;
  model.m = doc["m"].get<std::size_t>();
  model.a = parse_matrix(doc["A"], model.m, "A");
  model.b = parse_matrix(doc["B"], model.m, "B");
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw std::invalid_argument("model: \"label\" must be a string");
    model.label = doc["label"].get<std::string>();
  }
  return model;
}

ModelFile load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("model file " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_model(doc);
}

Json model_to_json(const ModelFile& model) {
  Json j{{"m", model.m}, {"A", matrix_json(model.a)}, {"B", matrix_json(model.b)}};
  if (model.label) j["label"] = *model.label;
  return j;
}

InitialPoint parse_initial_point(std::string_view csv, std::size_t m) {
  RationalVector coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = csv.find(',', start);
    coords.push_back(rat_parse(csv.substr(start, comma == std::string_view::npos ? csv.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (coords.size() != m) {
    throw std::invalid_argument("x0 has " + std::to_string(coords.size()) + " coordinates, model has m = " +
                                std::to_string(m));
  }
  Rational sum = 0;
  for (const auto& c : coords) {
    if (c < 0) throw std::invalid_argument("x0 coordinates must be nonnegative");
    sum += c;
  }
  const Rational tolerance(1, 1000000000);
  if (abs(sum - 1) > tolerance) {
    throw std::invalid_argument("x0 coordinates sum to " + rat_format(sum) + ", not 1 (tolerance 1e-9)");
  }
  std::optional<Rational> rescaled;
  if (sum != 1) {
    for (auto& c : coords) c /= sum;
    rescaled = sum;
  }
  return {SimplexPoint::from_exact(coords), rescaled};
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separable quadratic stochastic operators", "sqso"};
  app.require_subcommand(1);

  std::string model_path;
  std::string x0_text;
  std::size_t steps = 10000;
  double tol = 1e-12;
  std::string csv_path;
  std::string side = "both";

  auto* validate = app.add_subcommand("validate", "Admissibility of the matrix pair");
  validate->add_option("model", model_path, "Model JSON file")->required();
  auto* classify_cmd = app.add_subcommand("classify", "Constant / Linear / Nonlinear classification");
  classify_cmd->add_option("model", model_path, "Model JSON file")->required();

  auto* simulate = app.add_subcommand("simulate", "Iterate the operator from x0");
  simulate->add_option("model", model_path, "Model JSON file")->required();
  simulate->add_option("--x0", x0_text, "Initial point, comma-separated")->required();
  simulate->add_option("--steps", steps, "Maximum number of steps")->check(CLI::PositiveNumber);
  simulate->add_option("--tol", tol, "Convergence tolerance (l1)")->check(CLI::PositiveNumber);
  simulate->add_option("--out", csv_path, "Trajectory CSV path");

  auto* lyapunov = app.add_subcommand("lyapunov", "Extreme rays of the linear Lyapunov cones");
  lyapunov->add_option("model", model_path, "Model JSON file")->required();
  lyapunov->add_option("--side", side, "A, B or both")->check(CLI::IsMember({"A", "B", "both"}));

  auto* omega = app.add_subcommand("omega", "Upper estimate of the omega-limit set of x0");
  omega->add_option("model", model_path, "Model JSON file")->required();
  omega->add_option("--x0", x0_text, "Initial point, comma-separated")->required();
  omega->add_option("--steps", steps, "Maximum number of steps")->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  Context ctx;
  ctx.command = app.get_subcommands().front()->get_name();
  ctx.model_path = model_path;
  try {
    ctx.model = load_model(model_path);
    const SqsoPair pair = validate_pair(ctx.model.a, ctx.model.b);
    if (validate->parsed()) return cmd_validate(ctx, pair, out);
    if (classify_cmd->parsed()) return cmd_classify(ctx, pair, out);
    if (simulate->parsed()) return cmd_simulate(ctx, pair, x0_text, steps, tol, csv_path, out);
    if (lyapunov->parsed()) return cmd_lyapunov(ctx, pair, side, out);
    if (omega->parsed()) return cmd_omega(ctx, pair, x0_text, steps, out);
  } catch (const DomainError& e) {
    err << "rejected: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace sqso::cli
