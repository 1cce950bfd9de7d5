#include <doctest.h>

#include "monotraj/config.hpp"

using namespace monotraj;

TEST_CASE("key-value parsing") {
  const auto kv = parse_key_values("# comment\nfx = 100\n  w 0.25  \n\nd_max=2 # trailing\n");
  CHECK(kv.at("fx") == "100");
  CHECK(kv.at("w") == "0.25");
  CHECK(kv.at("d_max") == "2");
  CHECK_THROWS_AS(parse_key_values("lonely\n"), InputError);
  CHECK_THROWS_AS(read_key_values("/nonexistent/monotraj.cfg"), InputError);
}

TEST_CASE("precedence: default < file < flag") {
  const RunConfig def = resolve_config({}, {});
  CHECK(def.labeler.cost.d_max == 3.5);
  CHECK(def.labeler.cost.w == 0.5);
  CHECK(def.labeler.cost.robot_radius == 0.30);
  CHECK(def.labeler.cost.safety_horizon == 2.0);
  CHECK(def.labeler.voxel_size == 0.10);
  CHECK(def.advance == 0.5);

  struct Row {
    bool in_file;
    bool on_cli;
    double expected;
  };
  // Each parameter is checked in all four file/flag combinations.
  const Row rows[] = {{false, false, 0.0}, {true, false, 1.0}, {false, true, 2.0}, {true, true, 2.0}};
  const char* keys[] = {"voxel_size", "d_max", "w", "robot_radius", "safety_horizon", "advance"};
  for (const char* key : keys) {
    for (const Row& r : rows) {
      KeyValues file;
      Overrides o;
      const std::string k = key;
      auto file_value = [&] { return k == "voxel_size" ? "0.2" : k == "advance" ? "0.25" : "1.5"; };
      auto cli_value = [&] { return k == "voxel_size" ? 0.05 : k == "advance" ? 0.75 : 1.75; };
      if (r.in_file) file[k] = file_value();
      if (r.on_cli) {
        const double v = cli_value();
        if (k == "voxel_size") o.voxel_size = v;
        if (k == "d_max") o.d_max = v;
        if (k == "w") o.w = v;
        if (k == "robot_radius") o.robot_radius = v;
        if (k == "safety_horizon") o.horizon = v;
        if (k == "advance") o.advance = v;
      }
      const RunConfig rc = resolve_config(file, o);
      const double got = k == "voxel_size"       ? rc.labeler.voxel_size
                         : k == "d_max"          ? rc.labeler.cost.d_max
                         : k == "w"              ? rc.labeler.cost.w
                         : k == "robot_radius"   ? rc.labeler.cost.robot_radius
                         : k == "safety_horizon" ? rc.labeler.cost.safety_horizon
                                                 : rc.advance;
      const double defv = k == "voxel_size"       ? def.labeler.voxel_size
                          : k == "d_max"          ? def.labeler.cost.d_max
                          : k == "w"              ? def.labeler.cost.w
                          : k == "robot_radius"   ? def.labeler.cost.robot_radius
                          : k == "safety_horizon" ? def.labeler.cost.safety_horizon
                                                  : def.advance;
      const double want = r.expected == 0.0 ? defv : r.expected == 1.0 ? std::stod(file_value()) : cli_value();
      CAPTURE(k);
      CAPTURE(r.in_file);
      CAPTURE(r.on_cli);
      CHECK(got == want);
    }
  }
  Overrides seed;
  seed.seed = 77;
  CHECK(resolve_config({{"seed", "5"}}, {}).seed == 5);
  CHECK(resolve_config({{"seed", "5"}}, seed).seed == 77);
  Overrides steps;
  steps.max_steps = 9;
  CHECK(resolve_config({{"max_steps", "20"}}, steps).max_steps == 9);
}

TEST_CASE("intrinsics from the file") {
  const auto rc = resolve_config({{"fx", "500"}, {"fy", "510"}, {"width", "640"}, {"height", "480"}}, {});
  CHECK(rc.intrinsics.fx == 500);
  CHECK(rc.intrinsics.fy == 510);
  CHECK(rc.intrinsics.cx == 319.5);
  CHECK(rc.intrinsics.cy == 239.5);
  const auto rc2 = resolve_config(
      {{"fx", "518.8"}, {"fy", "519.5"}, {"cx", "325.6"}, {"cy", "253.7"}, {"width", "640"}, {"height", "480"}}, {});
  CHECK(rc2.intrinsics.cx == 325.6);
  CHECK(rc2.sim_config().intrinsics.fy == 519.5);
  CHECK_THROWS_AS(resolve_config({{"fx", "500"}}, {}), InputError);
}

TEST_CASE("invalid configs are rejected") {
  CHECK_THROWS_AS(resolve_config({{"bogus", "1"}}, {}), InputError);
  CHECK_THROWS_AS(resolve_config({{"d_max", "abc"}}, {}), InputError);
  CHECK_THROWS_AS(resolve_config({{"d_max", "-1"}}, {}), InputError);
  CHECK_THROWS_AS(resolve_config({{"n_samples", "1.5"}}, {}), InputError);
  Overrides o;
  o.voxel_size = 0.0;
  CHECK_THROWS_AS(resolve_config({}, o), InputError);
  o = {};
  o.advance = 3.0;
  CHECK_THROWS_AS(resolve_config({}, o), InputError);
}
