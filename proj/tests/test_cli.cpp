#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sqso/cli.hpp"

using namespace sqso;
namespace fs = std::filesystem;

namespace {

const std::string kModels = SQSO_MODELS_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string model(const std::string& name) { return kModels + "/" + name + ".json"; }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "sqso_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("validate") {
  const Run r = run({"validate", model("weak")});
  CHECK(r.code == cli::kExitOk);
  const Json j = r.json();
  CHECK(j["command"] == "validate");
  CHECK(j["result"]["admissibility"] == "Weak");
  CHECK(j["exit_status"] == 0);

  CHECK(run({"validate", model("nonlinear")}).json()["result"]["admissibility"] == "Strict");
}

TEST_CASE("classify") {
  const Run r = run({"classify", model("nonlinear")});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.json()["result"]["case"] == "Nonlinear");

  const Json c = run({"classify", model("constant2")}).json();
  CHECK(c["result"]["case"] == "Constant");
  CHECK(c["result"]["point"] == Json::parse(R"(["1/2", "1/2"])"));

  CHECK(run({"classify", model("cyclic3")}).json()["result"]["case"] == "Linear");

  const Run weak = run({"classify", model("weak")});
  CHECK(weak.code == cli::kExitDomain);
  CHECK(weak.json()["result"]["case"].is_null());
}

TEST_CASE("lyapunov") {
  const Run a = run({"lyapunov", model("nonlinear"), "--side", "A"});
  CHECK(a.code == cli::kExitOk);
  const Json ja = a.json();
  REQUIRE(ja["result"]["sides"].size() == 1);
  CHECK(ja["result"]["sides"][0]["rays"] == Json::parse("[[0, 1, 2], [0, 7, 2], [9, 11, 10]]"));
  CHECK(ja["result"]["sides"][0]["rowsum_candidate"].is_null());

  const Run b = run({"lyapunov", model("nonlinear"), "--side", "B"});
  CHECK(b.code == cli::kExitOk);
  const Json jb = b.json()["result"]["sides"][0];
  CHECK(jb["rays"].empty());
  CHECK(jb.contains("note"));

  CHECK(run({"lyapunov", model("nonlinear")}).json()["result"]["sides"].size() == 2);
  CHECK(run({"lyapunov", model("nonlinear"), "--side", "C"}).code == cli::kExitUsage);
}

TEST_CASE("simulate") {
  const fs::path csv = scratch("cyclic.csv");
  const Run r = run({"simulate", model("cyclic3"), "--x0", "0.6,0.3,0.1", "--out", csv.string()});
  CHECK(r.code == cli::kExitOk);
  const Json j = r.json();
  CHECK(j["result"]["stop_reason"] == "PeriodDetected");
  CHECK(j["result"]["period"] == 3);
  CHECK(j["result"]["limit"]["kind"] == "Cycle");

  std::ifstream in(csv);
  std::string header, first, second;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  CHECK(header == "step,x_1,x_2,x_3,delta");
  CHECK(first.rfind("0,", 0) == 0);
  CHECK(first.back() == ',');
  CHECK(second.rfind("1,", 0) == 0);
  std::size_t rows = 2;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == j["result"]["steps"].get<std::size_t>() + 1);
}

TEST_CASE("omega") {
  const Run r = run({"omega", model("nonlinear"), "--x0", "1/3,1/3,1/3"});
  CHECK(r.code == cli::kExitOk);
  const Json res = r.json()["result"];
  CHECK(res["ray_matrix_rank"] == 3);
  REQUIRE(res["resolved_point"].is_array());
  CHECK(res["resolved_point"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-8));

  CHECK(run({"omega", model("constant2"), "--x0", "1/2,1/2"}).code == cli::kExitDomain);
}

TEST_CASE("reports are byte-identical across reruns") {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"validate", model("nonlinear")},
           {"classify", model("singular")},
           {"lyapunov", model("nonlinear")},
           {"simulate", model("nonlinear"), "--x0", "0.2,0.3,0.5", "--steps", "400"},
           {"omega", model("nonlinear"), "--x0", "1/3,1/3,1/3"}}) {
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("every subcommand handles the bundled fixtures") {
  for (const std::string name : {"nonlinear", "singular", "weak"}) {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"validate", model(name)},
             {"classify", model(name)},
             {"lyapunov", model(name)},
             {"simulate", model(name), "--x0", "1/3,1/3,1/3"},
             {"omega", model(name), "--x0", "1/3,1/3,1/3"}}) {
      CAPTURE(args[0]);
      CAPTURE(name);
      const Run r = run(args);
      CHECK(r.code != cli::kExitUsage);
      CHECK_NOTHROW((void)r.json());
    }
  }
}

TEST_CASE("usage and input errors exit with 1") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"validate", scratch("missing.json").string()}).code == cli::kExitUsage);

  const fs::path broken = scratch("broken.json");
  write_file(broken, "{ not json");
  CHECK(run({"validate", broken.string()}).code == cli::kExitUsage);

  const fs::path floats = scratch("floats.json");
  write_file(floats, R"({"m": 2, "A": [[0.5, 0.5], [0.5, 0.5]], "B": [[1, 1], [1, 1]]})");
  const Run f = run({"validate", floats.string()});
  CHECK(f.code == cli::kExitUsage);
  CHECK_FALSE(f.err.empty());

  const fs::path shape = scratch("shape.json");
  write_file(shape, R"({"m": 2, "A": [["1", "0"]], "B": [["1", "1"], ["1", "1"]]})");
  CHECK(run({"validate", shape.string()}).code == cli::kExitUsage);

  CHECK(run({"simulate", model("nonlinear"), "--x0", "0.5,0.5"}).code == cli::kExitUsage);
  CHECK(run({"simulate", model("nonlinear"), "--x0", "0.5,0.6,-0.1"}).code == cli::kExitUsage);
  CHECK(run({"simulate", model("nonlinear"), "--x0", "1/3,1/3,1/3", "--steps", "0"}).code == cli::kExitUsage);
}

TEST_CASE("parse_model") {
  const cli::ModelFile m = cli::parse_model(
      Json::parse(R"({"m": 2, "A": [["1/2", 1], ["0.25", "3"]], "B": [[0, 0], [0, 0]], "label": "x"})"));
  CHECK(m.m == 2);
  CHECK(m.a(0, 0) == Rational(1, 2));
  CHECK(m.a(0, 1) == 1);
  CHECK(m.a(1, 0) == Rational(1, 4));
  CHECK(m.label == "x");
  CHECK(cli::parse_model(cli::model_to_json(m)).a == m.a);
  CHECK_THROWS_AS(cli::parse_model(Json::parse(R"({"m": 0, "A": [], "B": []})")), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_model(Json::parse(R"({"m": 1, "A": [["x"]], "B": [["1"]]})")), std::invalid_argument);
}

TEST_CASE("parse_initial_point") {
  const cli::InitialPoint exact = cli::parse_initial_point("1/3, 1/3, 1/3", 3);
  CHECK_FALSE(exact.rescaled_from.has_value());
  CHECK(exact.point[0] == 1.0 / 3);

  const cli::InitialPoint close = cli::parse_initial_point("0.3333333333,0.3333333333,0.3333333333", 3);
  REQUIRE(close.rescaled_from.has_value());
  CHECK(*close.rescaled_from == Rational(9999999999, 10000000000));
  CHECK(close.point[0] == 1.0 / 3);

  CHECK_THROWS_AS(cli::parse_initial_point("0.3,0.3,0.3", 3), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_initial_point("1,0", 3), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_initial_point("1,0,x", 3), std::invalid_argument);
  CHECK_THROWS_AS(cli::parse_initial_point("1.5,-0.5", 2), std::invalid_argument);
}
