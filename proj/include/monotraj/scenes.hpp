#pragma once

#include <cstdint>

#include "monotraj/simulator.hpp"

namespace monotraj::sim::scenes {

// Open-ended straight corridor along +z, robot on the center line.
Episode corridor(double length = 30.0, double width = 3.0);

// Hallway `width` meters wide blocked by a cross wall with a centered door
// of `gap` meters; goal region is the far side of the wall.
Episode door(double gap = 0.78, double width = 2.0);

// Closed rectangular room with the robot facing the far wall; the goal lies
// outside, so no path reaches it.
Episode dead_end();

// Three to six random boxes in front of a camera at the origin, all at
// least 1 m away and none covering the optical axis origin.
SceneWorld random_boxes(std::uint64_t seed);

}  // namespace monotraj::sim::scenes
