#pragma once

#include <filesystem>

#include "monotraj/geometry.hpp"

namespace monotraj::io {

// 16-bit grayscale PNG, millimeters, 0 = invalid.
DepthImage read_depth_png(const std::filesystem::path& path);
void write_depth_png(const std::filesystem::path& path, const DepthImage& depth);

// Float32 raster: an ASCII header line "DEPTHF32 <width> <height> <scale>\n"
// followed by width*height little-endian float32 samples in row-major order.
// meters = sample * scale; zero or non-finite samples are invalid.
DepthImage read_depth_raster(const std::filesystem::path& path);
void write_depth_raster(const std::filesystem::path& path, const DepthImage& depth, double scale = 1.0);

// Dispatches on extension: ".png" or ".f32".
DepthImage read_depth(const std::filesystem::path& path);
bool is_depth_file(const std::filesystem::path& path);

}  // namespace monotraj::io
