// monotraj: label depth frames, evaluate predictors, inspect primitives,
// self-check the losses, and run closed-loop simulations.
#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "monotraj/config.hpp"
#include "monotraj/cost.hpp"
#include "monotraj/depth_io.hpp"
#include "monotraj/evaluation.hpp"
#include "monotraj/label_io.hpp"
#include "monotraj/losses.hpp"
#include "monotraj/primitives.hpp"
#include "monotraj/scene_io.hpp"
#include "monotraj/scenes.hpp"
#include "monotraj/simd/kernels.hpp"
#include "monotraj/simulator.hpp"

namespace fs = std::filesystem;
using namespace monotraj;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  Overrides overrides;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "Key-value config file (intrinsics, cost and sim parameters)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out_dir, "Output directory");
  cmd->add_option("--seed", f.overrides.seed, "Seed for randomized steps");
  cmd->add_option("--voxel-size", f.overrides.voxel_size, "Voxel edge length, meters");
  cmd->add_option("--dmax", f.overrides.d_max, "Obstacle cost cutoff, meters");
  cmd->add_option("--w", f.overrides.w, "Smoothness weight");
  cmd->add_option("--robot-radius", f.overrides.robot_radius, "Collision radius, meters");
  cmd->add_option("--horizon", f.overrides.horizon, "Truncated safety horizon, meters");
}

RunConfig load(const CommonFlags& f) {
  const KeyValues file = f.config_path.empty() ? KeyValues{} : read_key_values(f.config_path);
  return resolve_config(file, f.overrides);
}

fs::path ensure_dir(const std::string& dir) {
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

int cmd_label(const CommonFlags& f, const std::string& input) {
  const RunConfig rc = load(f);
  if (!fs::is_directory(input)) {
    std::cerr << "label: input directory " << input << " does not exist\n";
    return 2;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(input)) {
    if (entry.is_regular_file() && io::is_depth_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "label: no depth frames (.png, .f32) in directory " << input << '\n';
    return 2;
  }

  const PrimitiveSet prims = generate_primitives(rc.arc_length, rc.n_samples);
  std::vector<std::pair<std::string, DepthImage>> frames;
  std::vector<FrameFailure> failures;
  for (const fs::path& p : files) {
    try {
      frames.emplace_back(p.stem().string(), io::read_depth(p));
    } catch (const InputError& e) {
      failures.push_back({p.stem().string(), e.what()});
    }
  }
  DatasetLabels labels;
  if (!frames.empty()) labels = label_dataset(frames, rc.intrinsics, prims, rc.labeler);
  failures.insert(failures.end(), labels.failures.begin(), labels.failures.end());

  const fs::path out = ensure_dir(f.out_dir);
  io::write_file_atomic(out / "labels.csv", io::format_label_csv(labels.records));
  io::write_file_atomic(out / "distribution.txt",
                        io::format_distribution(labels.distribution, labels.records.size(), failures.size()));
  std::cout << io::format_distribution(labels.distribution, labels.records.size(), failures.size());
  if (!failures.empty()) {
    std::string report;
    for (const auto& fail : failures) report += fail.frame_id + ": " + fail.message + '\n';
    io::write_file_atomic(out / "errors.txt", report);
    std::cerr << report;
    return 1;
  }
  return 0;
}

int cmd_eval(const CommonFlags& f, const std::string& labels_path, const std::string& preds_path,
             bool random_baseline) {
  const RunConfig rc = load(f);
  const auto labels = io::parse_label_csv(io::read_text_file(labels_path));
  std::vector<std::pair<std::string, TrajectoryClass>> preds;
  if (random_baseline) {
    preds = random_predictions(labels, rc.seed);
  } else if (!preds_path.empty()) {
    preds = io::parse_predictions_csv(io::read_text_file(preds_path));
  } else {
    std::cerr << "eval: pass --predictions PATH or --random-baseline\n";
    return 2;
  }
  PredictionSet set = join_predictions(labels, preds);
  if (set.empty()) {
    std::cerr << "eval: no prediction matches a labeled frame\n";
    return 1;
  }
  const MetricsReport report = evaluate(set);
  const fs::path out = ensure_dir(f.out_dir);
  const std::string text = format_report_text(report);
  io::write_file_atomic(out / "metrics.txt", text);
  io::write_file_atomic(out / "metrics.kv", format_report_kv(report));
  std::cout << text;
  return 0;
}

int cmd_simulate(const CommonFlags& f, const std::vector<std::string>& scene_files,
                 const std::vector<std::string>& builtins, bool dump_frames, std::optional<double> advance,
                 std::optional<int> max_steps) {
  CommonFlags merged = f;
  merged.overrides.advance = advance;
  merged.overrides.max_steps = max_steps;
  const RunConfig rc = load(merged);
  std::vector<std::pair<std::string, sim::Episode>> episodes;
  for (const std::string& path : scene_files) episodes.emplace_back(fs::path(path).stem().string(), io::read_scene(path));
  for (const std::string& name : builtins) {
    if (name == "corridor") episodes.emplace_back(name, sim::scenes::corridor());
    else if (name == "door") episodes.emplace_back(name, sim::scenes::door());
    else if (name == "dead_end") episodes.emplace_back(name, sim::scenes::dead_end());
    else {
      std::cerr << "simulate: unknown builtin scene '" << name << "'\n";
      return 2;
    }
  }
  if (episodes.empty()) {
    std::cerr << "simulate: pass --scene PATH or --builtin NAME\n";
    return 2;
  }
  const fs::path out = ensure_dir(f.out_dir);
  int status = 0;
  for (const auto& [name, episode] : episodes) {
    sim::EpisodeOptions options;
    if (dump_frames) options.dump_frames_dir = out / (name + "_frames");
    const sim::SimLog log = sim::run_episode(episode, rc.sim_config(), options);
    io::write_file_atomic(out / (name + "_log.csv"), sim::format_log_csv(log));
    io::write_file_atomic(out / (name + "_summary.kv"), sim::format_log_summary(log));
    std::cout << "[" << name << "]\n" << sim::format_log_summary(log);
    if (log.collided) status = 1;
  }
  return status;
}

int cmd_primitives(const CommonFlags& f, const std::string& csv_path) {
  const RunConfig rc = load(f);
  const PrimitiveSet prims = generate_primitives(rc.arc_length, rc.n_samples);
  std::string csv = "class_id,index,x,y,z,heading\n";
  char line[160];
  for (const Trajectory& t : prims.trajectories) {
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::snprintf(line, sizeof line, "%s,%zu,%.10g,%.10g,%.10g,%.10g\n", std::string(class_name(t.class_id)).c_str(),
                    i, t.waypoints[i].x, t.waypoints[i].y, t.waypoints[i].z, t.headings[i]);
      csv += line;
    }
  }
  if (csv_path.empty() || csv_path == "-") {
    std::cout << csv;
  } else {
    io::write_file_atomic(csv_path, csv);
  }
  return 0;
}

int cmd_losses_check(const CommonFlags& f, int cases, double tolerance) {
  const RunConfig rc = load(f);
  const auto s = losses::run_gradient_checks(static_cast<unsigned>(rc.seed), cases, tolerance);
  auto line = [](const char* name, const losses::GradientCheckReport& r) {
    std::printf("%-22s %s  %d/%d  worst rel err %.3e\n", name, r.passed == r.cases ? "PASS" : "FAIL", r.passed,
                r.cases, r.worst_relative_error);
  };
  line("depth_loss", s.depth);
  line("normal_loss", s.normal);
  line("softmax_cross_entropy", s.cross_entropy);
  const int passed = s.depth.passed + s.normal.passed + s.cross_entropy.passed;
  const int total = s.depth.cases + s.normal.cases + s.cross_entropy.cases;
  std::printf("%d/%d checks passed (simd backend: %s)\n", passed, total,
              std::string(simd::backend_name(simd::active().backend)).c_str());
  return s.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trajectory labels from depth via distance-field costs, predictor metrics, closed-loop simulation"};
  app.require_subcommand(1);

  CommonFlags label_flags;
  std::string label_input;
  auto* label = app.add_subcommand("label", "Label a directory of depth frames");
  add_common(label, label_flags);
  label->add_option("--input", label_input, "Directory of .png (16-bit mm) or .f32 depth frames")->required();

  CommonFlags eval_flags;
  std::string eval_labels;
  std::string eval_preds;
  bool eval_random = false;
  auto* eval = app.add_subcommand("eval", "Score predictions against a label CSV");
  add_common(eval, eval_flags);
  eval->add_option("--labels", eval_labels, "Label CSV from `label`")->required()->check(CLI::ExistingFile);
  eval->add_option("--predictions", eval_preds, "Predictions CSV (frame_id,class)")->check(CLI::ExistingFile);
  eval->add_flag("--random-baseline", eval_random, "Score a uniform random predictor (uses --seed)");

  CommonFlags sim_flags;
  std::vector<std::string> sim_scenes;
  std::vector<std::string> sim_builtins;
  bool sim_dump = false;
  std::optional<double> sim_advance;
  std::optional<int> sim_steps;
  auto* simulate = app.add_subcommand("simulate", "Run closed-loop episodes");
  add_common(simulate, sim_flags);
  simulate->add_option("--scene", sim_scenes, "Scene description file (repeatable)")->check(CLI::ExistingFile);
  simulate->add_option("--builtin", sim_builtins, "Built-in scene: corridor, door, dead_end (repeatable)");
  simulate->add_option("--advance", sim_advance, "Meters flown per replanning step");
  simulate->add_option("--max-steps", sim_steps, "Step limit per episode");
  simulate->add_flag("--dump-frames", sim_dump, "Write each rendered depth frame as .f32");

  CommonFlags prim_flags;
  std::string prim_csv;
  auto* primitives = app.add_subcommand("primitives", "Motion primitive tools");
  primitives->require_subcommand(1);
  auto* dump = primitives->add_subcommand("dump", "Write primitive waypoints as CSV");
  add_common(dump, prim_flags);
  dump->add_option("--csv", prim_csv, "Output CSV path (default stdout)");

  CommonFlags loss_flags;
  int loss_cases = 50;
  double loss_tol = 1e-5;
  auto* losses_cmd = app.add_subcommand("losses", "Loss function tools");
  losses_cmd->require_subcommand(1);
  auto* check = losses_cmd->add_subcommand("check", "Finite-difference gradient checks");
  add_common(check, loss_flags);
  check->add_option("--cases", loss_cases, "Random instances per loss")->check(CLI::PositiveNumber);
  check->add_option("--tolerance", loss_tol, "Relative error threshold");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*label) return cmd_label(label_flags, label_input);
    if (*eval) return cmd_eval(eval_flags, eval_labels, eval_preds, eval_random);
    if (*simulate) return cmd_simulate(sim_flags, sim_scenes, sim_builtins, sim_dump, sim_advance, sim_steps);
    if (*dump) return cmd_primitives(prim_flags, prim_csv);
    if (*check) return cmd_losses_check(loss_flags, loss_cases, loss_tol);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
