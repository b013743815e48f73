#include "sqso/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace sqso {

namespace {

bool is_scalar(const Json& v) { return !v.is_object() && !v.is_array(); }

void write_scalar(const Json& v, std::ostream& os) {
  if (v.is_number_float()) {
    const double d = v.get<double>();
    os << (std::isfinite(d) ? format_double(d) : "null");
  } else {
    os << v.dump();
  }
}

void write_value(const Json& v, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    if (v.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = v.begin(); it != v.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(it.key()).dump() << ": ";
      write_value(it.value(), os, indent + 2);
    }
    os << "\n" << close_pad << "}";
  } else if (v.is_array()) {
    if (v.empty()) {
      os << "[]";
      return;
    }
    bool flat = true;
    for (const auto& e : v) flat = flat && is_scalar(e);
    if (flat) {
      os << "[";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        write_scalar(v[i], os);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",\n";
      os << pad;
      write_value(v[i], os, indent + 2);
    }
    os << "\n" << close_pad << "]";
  } else {
    write_scalar(v, os);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(const Json& value, std::ostream& os) {
  write_value(value, os, 0);
  os << "\n";
}

std::string dump_json(const Json& value) {
  std::ostringstream os;
  write_json(value, os);
  return os.str();
}

void write_trajectory_csv(const TrajectoryRecord& traj, std::ostream& os) {
  const std::size_t m = traj.points.empty() ? 0 : traj.points.front().size();
  os << "step";
  for (std::size_t i = 1; i <= m; ++i) os << ",x_" << i;
  os << ",delta\n";
  for (std::size_t n = 0; n < traj.points.size(); ++n) {
    os << n;
    for (double c : traj.points[n].coords()) os << ',' << format_double(c);
    os << ',';
    if (n > 0) os << format_double(traj.step_deltas[n - 1]);
    os << '\n';
  }
}

Json to_json(std::span<const double> v) {
  Json arr = Json::array();
  for (double x : v) arr.push_back(x);
  return arr;
}

}  // namespace sqso
