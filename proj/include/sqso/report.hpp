#pragma once

// Deterministic JSON and CSV emission. Objects keep insertion order and every
// floating value is printed with 17 significant digits, so identical runs
// produce byte-identical reports.

#include <json.hpp>

#include <ostream>
#include <span>
#include <string>

#include "sqso/dynamics.hpp"

namespace sqso {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

/// Two-space indented JSON; arrays holding only scalars stay on one line.
void write_json(const Json& value, std::ostream& os);
std::string dump_json(const Json& value);

/// Header `step,x_1,...,x_m,delta`; the delta field of step 0 is empty.
void write_trajectory_csv(const TrajectoryRecord& traj, std::ostream& os);

Json to_json(std::span<const double> v);

}  // namespace sqso
