#include "monotraj/scene_io.hpp"

#include <cstdio>
#include <sstream>

#include "monotraj/label_io.hpp"

namespace monotraj::io {
namespace {

Box3 read_box(std::istringstream& in, int line_no) {
  Box3 b;
  if (!(in >> b.lo.x >> b.lo.y >> b.lo.z >> b.hi.x >> b.hi.y >> b.hi.z)) {
    throw InputError("scene line " + std::to_string(line_no) + ": expected six numbers");
  }
  return b;
}

}  // namespace

sim::Episode parse_scene(const std::string& text) {
  sim::Episode e;
  bool have_bounds = false;
  bool have_start = false;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string key;
    if (!(in >> key)) continue;
    if (key == "bounds") {
      e.world.bounds = read_box(in, line_no);
      have_bounds = true;
    } else if (key == "box") {
      e.world.boxes.push_back(read_box(in, line_no));
    } else if (key == "goal") {
      e.goal = read_box(in, line_no);
    } else if (key == "start") {
      if (!(in >> e.start.position.x >> e.start.position.y >> e.start.position.z >> e.start.yaw)) {
        throw InputError("scene line " + std::to_string(line_no) + ": expected x y z yaw");
      }
      have_start = true;
    } else {
      throw InputError("scene line " + std::to_string(line_no) + ": unknown keyword '" + key + "'");
    }
    std::string extra;
    if (in >> extra) throw InputError("scene line " + std::to_string(line_no) + ": trailing tokens");
  }
  if (!have_bounds) throw InputError("scene: missing bounds");
  if (!have_start) throw InputError("scene: missing start");
  e.world.validate();
  return e;
}

sim::Episode read_scene(const std::filesystem::path& path) { return parse_scene(read_text_file(path)); }

std::string format_scene(const sim::Episode& e) {
  std::ostringstream out;
  char line[256];
  auto box = [&](const char* key, const Box3& b) {
    std::snprintf(line, sizeof line, "%s %.17g %.17g %.17g %.17g %.17g %.17g\n", key, b.lo.x, b.lo.y, b.lo.z, b.hi.x,
                  b.hi.y, b.hi.z);
    out << line;
  };
  box("bounds", e.world.bounds);
  for (const Box3& b : e.world.boxes) box("box", b);
  std::snprintf(line, sizeof line, "start %.17g %.17g %.17g %.17g\n", e.start.position.x, e.start.position.y,
                e.start.position.z, e.start.yaw);
  out << line;
  if (e.goal) box("goal", *e.goal);
  return out.str();
}

}  // namespace monotraj::io
