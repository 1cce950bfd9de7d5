#include "monotraj/primitives.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

namespace monotraj {

std::string_view class_name(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::LeftTurn: return "LeftTurn";
    case TrajectoryClass::LeftForward: return "LeftForward";
    case TrajectoryClass::Straight: return "Straight";
    case TrajectoryClass::RightForward: return "RightForward";
    case TrajectoryClass::RightTurn: return "RightTurn";
  }
  return "?";
}

std::optional<TrajectoryClass> parse_class(std::string_view text) {
  for (TrajectoryClass c : kAllClasses) {
    if (class_name(c) == text) return c;
  }
  int id = -1;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), id);
  if (ec == std::errc() && ptr == text.data() + text.size() && id >= 0 && id < kNumClasses) {
    return static_cast<TrajectoryClass>(id);
  }
  return std::nullopt;
}

TrajectoryClass mirror_class(TrajectoryClass c) { return static_cast<TrajectoryClass>(kNumClasses - 1 - class_index(c)); }

double terminal_heading_change(TrajectoryClass c) {
  constexpr double quarter = std::numbers::pi / 2.0;
  switch (c) {
    case TrajectoryClass::LeftTurn: return quarter;
    case TrajectoryClass::LeftForward: return quarter / 2.0;
    case TrajectoryClass::Straight: return 0.0;
    case TrajectoryClass::RightForward: return -quarter / 2.0;
    case TrajectoryClass::RightTurn: return -quarter;
  }
  return 0.0;
}

namespace {

Trajectory left_arc(TrajectoryClass c, double arc_length, int n) {
  Trajectory t;
  t.class_id = c;
  t.arc_length = arc_length;
  t.waypoints.resize(static_cast<std::size_t>(n));
  t.headings.resize(static_cast<std::size_t>(n));
  const double turn = terminal_heading_change(c);
  const double last = static_cast<double>(n - 1);
  for (int k = 0; k < n; ++k) {
    const double frac = k / last;
    if (turn == 0.0) {
      t.waypoints[static_cast<std::size_t>(k)] = {0.0, 0.0, arc_length * frac};
      t.headings[static_cast<std::size_t>(k)] = 0.0;
      continue;
    }
    const double radius = arc_length / turn;
    const double psi = turn * frac;
    // chord form of the arc integral, stable for small psi
    const double half = 0.5 * psi;
    const double chord = 2.0 * radius * std::sin(half);
    t.waypoints[static_cast<std::size_t>(k)] = {-chord * std::sin(half), 0.0, chord * std::cos(half)};
    t.headings[static_cast<std::size_t>(k)] = psi;
  }
  return t;
}

// Cumulative arc length at each waypoint, rescaled so the last entry equals
// traj.arc_length exactly.
std::vector<double> stations(const Trajectory& traj) {
  std::vector<double> s(traj.size(), 0.0);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) s[i + 1] = s[i] + segment_length(traj, i);
  const double total = s.back();
  if (total > 0.0) {
    for (double& v : s) v *= traj.arc_length / total;
  }
  s.back() = traj.arc_length;
  return s;
}

CurvePoint point_on_segment(const Trajectory& traj, std::size_t i, double sigma, double length) {
  const Vec3& p0 = traj.waypoints[i];
  const Vec3& p1 = traj.waypoints[i + 1];
  const double h0 = traj.headings[i];
  const double h1 = traj.headings[i + 1];
  if (sigma <= 0.0 || length <= 0.0) return {p0, h0};
  if (sigma >= length) return {p1, h1};
  const double frac = sigma / length;
  const double dpsi = h1 - h0;
  const double y = p0.y + (p1.y - p0.y) * frac;
  if (std::fabs(dpsi) < 1e-12) {
    return {{p0.x + (p1.x - p0.x) * frac, y, p0.z + (p1.z - p0.z) * frac}, h0 + dpsi * frac};
  }
  const double turned = dpsi * frac;
  const double curvature = dpsi / length;
  const double half = 0.5 * turned;
  const double chord = 2.0 * std::sin(half) / curvature;
  const double mid = h0 + half;
  return {{p0.x - chord * std::sin(mid), y, p0.z + chord * std::cos(mid)}, h0 + turned};
}

CurvePoint point_at_stations(const Trajectory& traj, const std::vector<double>& s, double at) {
  if (at <= 0.0) return {traj.waypoints.front(), traj.headings.front()};
  if (at >= s.back()) return {traj.waypoints.back(), traj.headings.back()};
  const auto it = std::upper_bound(s.begin(), s.end(), at);
  const auto i = static_cast<std::size_t>(std::distance(s.begin(), it)) - 1;
  return point_on_segment(traj, i, at - s[i], s[i + 1] - s[i]);
}

Trajectory restation(const Trajectory& traj, double length, int n) {
  const std::vector<double> s = stations(traj);
  Trajectory out;
  out.class_id = traj.class_id;
  out.arc_length = length;
  out.waypoints.resize(static_cast<std::size_t>(n));
  out.headings.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double at = k == n - 1 ? length : length * (static_cast<double>(k) / (n - 1));
    const CurvePoint cp = point_at_stations(traj, s, at);
    out.waypoints[static_cast<std::size_t>(k)] = cp.position;
    out.headings[static_cast<std::size_t>(k)] = cp.heading;
  }
  return out;
}

}  // namespace

PrimitiveSet generate_primitives(double arc_length, int n_samples) {
  if (!(arc_length > 0.0)) throw InputError("generate_primitives: arc_length must be positive");
  if (n_samples < 2) throw InputError("generate_primitives: n_samples must be >= 2");
  PrimitiveSet set;
  for (TrajectoryClass c : {TrajectoryClass::LeftTurn, TrajectoryClass::LeftForward, TrajectoryClass::Straight}) {
    set.trajectories[class_index(c)] = left_arc(c, arc_length, n_samples);
  }
  set.trajectories[class_index(TrajectoryClass::RightForward)] = mirror(set[TrajectoryClass::LeftForward]);
  set.trajectories[class_index(TrajectoryClass::RightTurn)] = mirror(set[TrajectoryClass::LeftTurn]);
  return set;
}

double segment_length(const Trajectory& traj, std::size_t i) {
  const double chord = (traj.waypoints[i + 1] - traj.waypoints[i]).norm();
  const double half = 0.5 * (traj.headings[i + 1] - traj.headings[i]);
  if (std::fabs(half) < 1e-12) return chord;
  return chord * half / std::sin(half);
}

CurvePoint point_at(const Trajectory& traj, double s) { return point_at_stations(traj, stations(traj), s); }

Trajectory resample(const Trajectory& traj, int n) {
  if (n < 2) throw InputError("resample: n must be >= 2");
  if (static_cast<std::size_t>(n) == traj.size()) return traj;
  return restation(traj, traj.arc_length, n);
}

Trajectory mirror(const Trajectory& traj) {
  Trajectory out = traj;
  out.class_id = mirror_class(traj.class_id);
  for (Vec3& p : out.waypoints) p.x = -p.x;
  for (double& h : out.headings) h = -h;
  return out;
}

Trajectory truncate(const Trajectory& traj, double horizon) {
  if (!(horizon > 0.0)) throw InputError("truncate: horizon must be positive");
  if (horizon >= traj.arc_length) return traj;
  const double spacing = traj.spacing();
  const int segments = std::max(1, static_cast<int>(std::ceil(horizon / spacing - 1e-9)));
  return restation(traj, horizon, segments + 1);
}

}  // namespace monotraj
