#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace monotraj {

// Raised for malformed or out-of-contract inputs (dimension mismatch, empty
// data, unreadable files). Callers at batch level catch it per item.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr bool operator==(const Vec3&) const = default;

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

// Axis-aligned box given by its min/max corners.
struct Box3 {
  Vec3 lo;
  Vec3 hi;

  bool operator==(const Box3&) const = default;

  bool non_degenerate() const { return lo.x < hi.x && lo.y < hi.y && lo.z < hi.z; }
  bool contains(const Vec3& p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z && p.z <= hi.z;
  }
  bool contains(const Box3& b) const { return contains(b.lo) && contains(b.hi); }

  // Euclidean distance from p to the closed box; zero inside.
  double distance_to(const Vec3& p) const {
    const double dx = std::fmax(0.0, std::fmax(lo.x - p.x, p.x - hi.x));
    const double dy = std::fmax(0.0, std::fmax(lo.y - p.y, p.y - hi.y));
    const double dz = std::fmax(0.0, std::fmax(lo.z - p.z, p.z - hi.z));
    return std::sqrt(dx * dx + dy * dy + dz * dz);
  }
};

}  // namespace monotraj
