#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "monotraj/cost.hpp"
#include "monotraj/geometry.hpp"
#include "monotraj/simulator.hpp"

namespace monotraj {

using KeyValues = std::map<std::string, std::string>;

// "key = value" or "key value" per line; '#' comments; blank lines ignored.
KeyValues parse_key_values(const std::string& text);
KeyValues read_key_values(const std::filesystem::path& path);

// Values given on the command line; unset members defer to the config file,
// then to built-in defaults.
struct Overrides {
  std::optional<double> voxel_size;
  std::optional<double> d_max;
  std::optional<double> w;
  std::optional<double> robot_radius;
  std::optional<double> horizon;
  std::optional<double> advance;
  std::optional<int> max_steps;
  std::optional<std::uint64_t> seed;
};

struct RunConfig {
  CameraIntrinsics intrinsics = CameraIntrinsics::centered(320, 240, 260.0);
  LabelerConfig labeler;
  double arc_length = kDefaultArcLength;
  int n_samples = kDefaultSamples;
  double advance = 0.5;
  int max_steps = 200;
  double max_range = 10.0;
  std::uint64_t seed = 12345;

  void validate() const;
  sim::SimConfig sim_config() const;
};

// Merge order: built-in default < file < overrides. Unknown file keys are
// rejected.
RunConfig resolve_config(const KeyValues& file, const Overrides& overrides);

}  // namespace monotraj
