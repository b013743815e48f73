#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqso/numerics.hpp"
#include "sqso/operators.hpp"
#include "sqso/report.hpp"

namespace sqso::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;

/// {"m": 3, "A": [["1","0","0"], ...], "B": [...], "label": "..."}.
/// Entries are rational strings ("1/3", "0.25", "2"); JSON integers are also
/// accepted, JSON floats are not.
struct ModelFile {
  std::size_t m = 0;
  RationalMatrix a;
  RationalMatrix b;
  std::optional<std::string> label;
};

/// Throws std::invalid_argument on schema errors.
ModelFile parse_model(const Json& doc);
/// Throws std::runtime_error when the file cannot be read or parsed.
ModelFile load_model(const std::filesystem::path& path);

Json model_to_json(const ModelFile& model);

/// Comma-separated exact coordinates ("0.2,0.3,0.5" or "1/3,1/3,1/3").
/// Coordinates must be nonnegative and sum to 1 within 1e-9; a sum that is
/// not exactly 1 is rescaled and reported through `rescaled_from`.
struct InitialPoint {
  SimplexPoint point;
  std::optional<Rational> rescaled_from;
};
InitialPoint parse_initial_point(std::string_view csv, std::size_t m);

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, one-line diagnostics to `err`. Returns the process exit code.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sqso::cli
