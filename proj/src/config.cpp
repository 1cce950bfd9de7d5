#include "monotraj/config.hpp"

#include <set>
#include <sstream>

#include "monotraj/label_io.hpp"

namespace monotraj {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

double to_double(const KeyValues& kv, const std::string& key) {
  const std::string& text = kv.at(key);
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("config: '" + key + "' is not a number: " + text);
}

long long to_integer(const KeyValues& kv, const std::string& key) {
  const std::string& text = kv.at(key);
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("config: '" + key + "' is not an integer: " + text);
}

const std::set<std::string> kKnownKeys = {
    "fx",           "fy",       "cx",           "cy",           "width",     "height",
    "d_max",        "w",        "robot_radius", "safety_horizon", "voxel_size", "bounds_margin",
    "arc_length",   "n_samples", "advance",     "max_steps",    "max_range", "seed",
};

}  // namespace

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string key;
    std::string value;
    if (const auto eq = line.find('='); eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    } else {
      const auto space = line.find_first_of(" \t");
      if (space == std::string::npos) throw InputError("config line " + std::to_string(line_no) + ": missing value");
      key = trim(line.substr(0, space));
      value = trim(line.substr(space));
    }
    if (key.empty() || value.empty()) throw InputError("config line " + std::to_string(line_no) + ": malformed");
    kv[key] = value;
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) { return parse_key_values(io::read_text_file(path)); }

void RunConfig::validate() const {
  intrinsics.validate();
  labeler.cost.validate();
  if (!(labeler.voxel_size > 0.0)) throw InputError("config: voxel_size must be positive");
  if (!(arc_length > 0.0)) throw InputError("config: arc_length must be positive");
  if (n_samples < 2) throw InputError("config: n_samples must be >= 2");
  sim_config().validate();
}

sim::SimConfig RunConfig::sim_config() const {
  sim::SimConfig s;
  s.intrinsics = intrinsics;
  s.labeler = labeler;
  s.arc_length = arc_length;
  s.n_samples = n_samples;
  s.advance = advance;
  s.max_steps = max_steps;
  s.max_range = max_range;
  return s;
}

RunConfig resolve_config(const KeyValues& file, const Overrides& o) {
  for (const auto& [key, value] : file) {
    if (!kKnownKeys.contains(key)) throw InputError("config: unknown key '" + key + "'");
  }
  RunConfig rc;
  auto num = [&](const char* key, double& dst) {
    if (file.contains(key)) dst = to_double(file, key);
  };
  auto integer = [&](const char* key, auto& dst) {
    if (file.contains(key)) dst = static_cast<std::remove_reference_t<decltype(dst)>>(to_integer(file, key));
  };

  const bool any_intrinsics = file.contains("fx") || file.contains("fy") || file.contains("cx") ||
                              file.contains("cy") || file.contains("width") || file.contains("height");
  if (any_intrinsics) {
    for (const char* key : {"fx", "fy", "width", "height"}) {
      if (!file.contains(key)) throw InputError(std::string("config: intrinsics need '") + key + "'");
    }
    CameraIntrinsics k;
    num("fx", k.fx);
    num("fy", k.fy);
    integer("width", k.width);
    integer("height", k.height);
    k.cx = 0.5 * (k.width - 1);
    k.cy = 0.5 * (k.height - 1);
    num("cx", k.cx);
    num("cy", k.cy);
    rc.intrinsics = k;
  }
  num("d_max", rc.labeler.cost.d_max);
  num("w", rc.labeler.cost.w);
  num("robot_radius", rc.labeler.cost.robot_radius);
  num("safety_horizon", rc.labeler.cost.safety_horizon);
  num("voxel_size", rc.labeler.voxel_size);
  num("bounds_margin", rc.labeler.bounds_margin);
  num("arc_length", rc.arc_length);
  integer("n_samples", rc.n_samples);
  num("advance", rc.advance);
  integer("max_steps", rc.max_steps);
  num("max_range", rc.max_range);
  integer("seed", rc.seed);

  if (o.voxel_size) rc.labeler.voxel_size = *o.voxel_size;
  if (o.d_max) rc.labeler.cost.d_max = *o.d_max;
  if (o.w) rc.labeler.cost.w = *o.w;
  if (o.robot_radius) rc.labeler.cost.robot_radius = *o.robot_radius;
  if (o.horizon) rc.labeler.cost.safety_horizon = *o.horizon;
  if (o.advance) rc.advance = *o.advance;
  if (o.max_steps) rc.max_steps = *o.max_steps;
  if (o.seed) rc.seed = *o.seed;
  rc.validate();
  return rc;
}

}  // namespace monotraj
