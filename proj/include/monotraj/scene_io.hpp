#pragma once

#include <filesystem>
#include <string>

#include "monotraj/simulator.hpp"

namespace monotraj::io {

// Line-oriented scene description; '#' starts a comment.
//   bounds <xmin> <ymin> <zmin> <xmax> <ymax> <zmax>
//   box    <xmin> <ymin> <zmin> <xmax> <ymax> <zmax>
//   start  <x> <y> <z> <yaw_radians>
//   goal   <xmin> <ymin> <zmin> <xmax> <ymax> <zmax>     (optional)
sim::Episode parse_scene(const std::string& text);
sim::Episode read_scene(const std::filesystem::path& path);
std::string format_scene(const sim::Episode& episode);

}  // namespace monotraj::io
