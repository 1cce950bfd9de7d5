#include "monotraj/depth_io.hpp"

#include <png.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

namespace monotraj::io {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw InputError("cannot open " + path.string());
  return f;
}

float from_le(std::uint32_t bits) {
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
  return std::bit_cast<float>(bits);
}

std::uint32_t to_le(float value) {
  auto bits = std::bit_cast<std::uint32_t>(value);
  if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
  return bits;
}

}  // namespace

DepthImage read_depth_png(const std::filesystem::path& path) {
  FilePtr f = open_file(path, "rb");
  png_byte sig[8];
  if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw InputError(path.string() + ": not a PNG file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("libpng initialization failed");
  }
  std::vector<std::uint16_t> samples;
  std::vector<png_bytep> rows;
  int width = 0;
  int height = 0;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError(path.string() + ": corrupt PNG");
  }
  png_init_io(png, f.get());
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  width = static_cast<int>(png_get_image_width(png, info));
  height = static_cast<int>(png_get_image_height(png, info));
  const int depth_bits = png_get_bit_depth(png, info);
  const int color = png_get_color_type(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || depth_bits != 16) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError(path.string() + ": expected 16-bit grayscale PNG");
  }
  if constexpr (std::endian::native == std::endian::little) png_set_swap(png);
  samples.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  rows.resize(static_cast<std::size_t>(height));
  for (int v = 0; v < height; ++v) {
    rows[static_cast<std::size_t>(v)] =
        reinterpret_cast<png_bytep>(samples.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(width));
  }
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  std::vector<double> z(samples.size());
  std::vector<std::uint8_t> valid(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    valid[i] = samples[i] != 0;
    z[i] = samples[i] * 1e-3;
  }
  return DepthImage(width, height, std::move(z), std::move(valid));
}

void write_depth_png(const std::filesystem::path& path, const DepthImage& depth) {
  std::vector<std::uint16_t> samples(depth.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!depth.mask()[i]) continue;
    const double mm = std::round(depth.depth()[i] * 1e3);
    samples[i] = static_cast<std::uint16_t>(std::clamp(mm, 1.0, 65535.0));
  }
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw InputError("libpng initialization failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw InputError(path.string() + ": PNG write failed");
  }
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(depth.width()), static_cast<png_uint_32>(depth.height()), 16,
               PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if constexpr (std::endian::native == std::endian::little) png_set_swap(png);
  for (int v = 0; v < depth.height(); ++v) {
    png_write_row(png, reinterpret_cast<png_const_bytep>(samples.data() + static_cast<std::size_t>(v) *
                                                                               static_cast<std::size_t>(depth.width())));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

DepthImage read_depth_raster(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  int width = 0;
  int height = 0;
  double scale = 0.0;
  if (!(hs >> magic >> width >> height >> scale) || magic != "DEPTHF32" || width <= 0 || height <= 0 ||
      !(scale > 0.0)) {
    throw InputError(path.string() + ": bad raster header");
  }
  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint32_t> raw(n);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(n * sizeof(std::uint32_t)));
  if (static_cast<std::size_t>(in.gcount()) != n * sizeof(std::uint32_t)) {
    throw InputError(path.string() + ": truncated raster");
  }
  std::vector<double> z(n);
  std::vector<std::uint8_t> valid(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double value = static_cast<double>(from_le(raw[i])) * scale;
    valid[i] = std::isfinite(value) && value > 0.0;
    z[i] = valid[i] ? value : 0.0;
  }
  return DepthImage(width, height, std::move(z), std::move(valid));
}

void write_depth_raster(const std::filesystem::path& path, const DepthImage& depth, double scale) {
  if (!(scale > 0.0)) throw InputError("raster scale must be positive");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  char header[96];
  std::snprintf(header, sizeof header, "DEPTHF32 %d %d %.17g\n", depth.width(), depth.height(), scale);
  out << header;
  std::vector<std::uint32_t> raw(depth.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = to_le(depth.mask()[i] ? static_cast<float>(depth.depth()[i] / scale) : 0.0f);
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(std::uint32_t)));
  if (!out) throw InputError("write failed: " + path.string());
}

bool is_depth_file(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  return ext == ".png" || ext == ".f32";
}

DepthImage read_depth(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".png") return read_depth_png(path);
  if (ext == ".f32") return read_depth_raster(path);
  throw InputError(path.string() + ": unsupported depth format (expected .png or .f32)");
}

}  // namespace monotraj::io
