#include "monotraj/distance_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>

namespace monotraj {
namespace {

using Sq = std::int64_t;
constexpr Sq kNoSite = std::numeric_limits<Sq>::max() / 4;

// Exact rational used for parabola intersection abscissae (den > 0).
struct Abscissa {
  Sq num = 0;
  Sq den = 1;
  int inf = 0;  // -1: -infinity, +1: +infinity
};

// Lower envelope of parabolas y = f[q] + (x - q)^2 over sites with finite f,
// evaluated at every integer x in [0, n).
class Envelope {
 public:
  explicit Envelope(int n) : v_(static_cast<std::size_t>(n)), z_(static_cast<std::size_t>(n) + 1) {}

  // f and out are contiguous and may not alias.
  void run(const Sq* f, int n, Sq* out) {
    int k = -1;
    for (int q = 0; q < n; ++q) {
      const Sq fq = f[q];
      if (fq >= kNoSite) continue;
      Abscissa s{0, 1, -1};
      while (k >= 0) {
        const int p = v_[static_cast<std::size_t>(k)];
        const Sq fp = f[p];
        s = {(fq + Sq{q} * q) - (fp + Sq{p} * p), 2 * Sq{q - p}, 0};
        if (le(s, z_[static_cast<std::size_t>(k)])) {
          --k;
          s = {0, 1, -1};
        } else {
          break;
        }
      }
      ++k;
      v_[static_cast<std::size_t>(k)] = q;
      z_[static_cast<std::size_t>(k)] = s;
      z_[static_cast<std::size_t>(k) + 1] = {0, 1, 1};
    }
    if (k < 0) {
      for (int q = 0; q < n; ++q) out[q] = kNoSite;
      return;
    }
    int j = 0;
    for (int q = 0; q < n; ++q) {
      while (lt_int(z_[static_cast<std::size_t>(j) + 1], q)) ++j;
      const int p = v_[static_cast<std::size_t>(j)];
      const Sq d = q - p;
      out[q] = f[p] + d * d;
    }
  }

 private:
  static bool le(const Abscissa& a, const Abscissa& b) {
    if (a.inf != 0 || b.inf != 0) {
      if (a.inf == -1) return true;
      if (b.inf == 1) return true;
      return false;
    }
    return a.num * b.den <= b.num * a.den;
  }
  static bool lt_int(const Abscissa& a, int q) {
    if (a.inf != 0) return a.inf < 0;
    return a.num < Sq{q} * a.den;
  }

  std::vector<int> v_;
  std::vector<Abscissa> z_;
};

DistanceField from_squared(const LatticeSpec& lattice, const std::vector<Sq>& sq) {
  const double vs = lattice.voxel_size;
  std::vector<double> dist(sq.size());
  const double free_value = std::sqrt(static_cast<double>(lattice.nx) * lattice.nx +
                                      static_cast<double>(lattice.ny) * lattice.ny +
                                      static_cast<double>(lattice.nz) * lattice.nz) *
                            vs;
  for (std::size_t i = 0; i < sq.size(); ++i) {
    dist[i] = sq[i] >= kNoSite ? free_value : std::sqrt(static_cast<double>(sq[i])) * vs;
  }
  return DistanceField(lattice, std::move(dist));
}

}  // namespace

DistanceField::DistanceField(const LatticeSpec& lattice, std::vector<double> dist)
    : lattice_(lattice), dist_(std::move(dist)) {
  lattice_.validate();
  if (dist_.size() != lattice_.voxel_count()) throw InputError("distance field: value count != voxel count");
}

double DistanceField::free_space_value() const {
  const double nx = lattice_.nx;
  const double ny = lattice_.ny;
  const double nz = lattice_.nz;
  return std::sqrt(nx * nx + ny * ny + nz * nz) * lattice_.voxel_size;
}

namespace {

// Per-axis sampling position. Offsets are taken from the lattice center and
// mirrored onto the non-negative side, with the index map reversed for the
// negative side, so reflected queries on reflected fields repeat the same
// arithmetic on the same samples.
struct AxisSample {
  int lo = 0;
  int hi = 0;
  double t = 0.0;
};

AxisSample axis_sample(double p, double center, double voxel_size, int n) {
  const double s = (p - center) / voxel_size;
  const bool reversed = s < 0.0;
  double g = 0.5 * (n - 1) + std::fabs(s);
  g = std::clamp(g, 0.0, static_cast<double>(n - 1));
  int i0 = static_cast<int>(std::floor(g));
  double t = g - i0;
  // Queries computed as voxel centers land within rounding of a sample.
  constexpr double kSnap = 1e-9;
  if (t < kSnap) {
    t = 0.0;
  } else if (t > 1.0 - kSnap) {
    ++i0;
    t = 0.0;
  }
  if (i0 >= n - 1) {
    i0 = n - 1;
    t = 0.0;
  }
  const int i1 = std::min(i0 + 1, n - 1);
  if (reversed) return {n - 1 - i0, n - 1 - i1, t};
  return {i0, i1, t};
}

}  // namespace

double DistanceField::query(const Vec3& p) const {
  const Vec3 c = lattice_.center();
  const double vs = lattice_.voxel_size;
  const AxisSample ax = axis_sample(p.x, c.x, vs, lattice_.nx);
  const AxisSample ay = axis_sample(p.y, c.y, vs, lattice_.ny);
  const AxisSample az = axis_sample(p.z, c.z, vs, lattice_.nz);
  auto v = [&](int i, int j, int k) { return dist_[lattice_.linear(i, j, k)]; };
  auto lerp = [](double a, double b, double t) { return (a == b || t == 0.0) ? a : a * (1.0 - t) + b * t; };
  const double c00 = lerp(v(ax.lo, ay.lo, az.lo), v(ax.hi, ay.lo, az.lo), ax.t);
  const double c10 = lerp(v(ax.lo, ay.hi, az.lo), v(ax.hi, ay.hi, az.lo), ax.t);
  const double c01 = lerp(v(ax.lo, ay.lo, az.hi), v(ax.hi, ay.lo, az.hi), ax.t);
  const double c11 = lerp(v(ax.lo, ay.hi, az.hi), v(ax.hi, ay.hi, az.hi), ax.t);
  return lerp(lerp(c00, c10, ay.t), lerp(c01, c11, ay.t), az.t);
}

DistanceField compute_edt(const OccupancyGrid& grid) {
  const LatticeSpec& L = grid.lattice;
  const int nx = L.nx;
  const int ny = L.ny;
  const int nz = L.nz;
  std::vector<Sq> sq(L.voxel_count());

  // x: 1D distance to the nearest occupied voxel in each row.
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      Sq* row = sq.data() + L.linear(0, j, k);
      const std::uint8_t* occ = grid.occupied.data() + L.linear(0, j, k);
      Sq last = -1;
      for (int i = 0; i < nx; ++i) {
        if (occ[i]) last = i;
        row[i] = last < 0 ? kNoSite : i - last;
      }
      last = -1;
      for (int i = nx - 1; i >= 0; --i) {
        if (occ[i]) last = i;
        if (last >= 0 && last - i < row[i]) row[i] = last - i;
      }
      for (int i = 0; i < nx; ++i) {
        if (row[i] < kNoSite) row[i] *= row[i];
      }
    }
  }

  const std::size_t longest = static_cast<std::size_t>(std::max(ny, nz));
  std::vector<Sq> in(longest);
  std::vector<Sq> out(longest);
  Envelope env(std::max(ny, nz));

  // y
  for (int k = 0; k < nz; ++k) {
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) in[static_cast<std::size_t>(j)] = sq[L.linear(i, j, k)];
      env.run(in.data(), ny, out.data());
      for (int j = 0; j < ny; ++j) sq[L.linear(i, j, k)] = out[static_cast<std::size_t>(j)];
    }
  }
  // z
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      for (int k = 0; k < nz; ++k) in[static_cast<std::size_t>(k)] = sq[L.linear(i, j, k)];
      env.run(in.data(), nz, out.data());
      for (int k = 0; k < nz; ++k) sq[L.linear(i, j, k)] = out[static_cast<std::size_t>(k)];
    }
  }
  return from_squared(L, sq);
}

DistanceField brute_force_edt(const OccupancyGrid& grid) {
  const LatticeSpec& L = grid.lattice;
  std::vector<std::array<int, 3>> sites;
  for (int k = 0; k < L.nz; ++k)
    for (int j = 0; j < L.ny; ++j)
      for (int i = 0; i < L.nx; ++i)
        if (grid.at(i, j, k)) sites.push_back({i, j, k});
  std::vector<Sq> sq(L.voxel_count(), kNoSite);
  for (int k = 0; k < L.nz; ++k) {
    for (int j = 0; j < L.ny; ++j) {
      for (int i = 0; i < L.nx; ++i) {
        Sq best = kNoSite;
        for (const auto& s : sites) {
          const Sq dx = i - s[0];
          const Sq dy = j - s[1];
          const Sq dz = k - s[2];
          best = std::min(best, dx * dx + dy * dy + dz * dz);
        }
        sq[L.linear(i, j, k)] = best;
      }
    }
  }
  return from_squared(L, sq);
}

}  // namespace monotraj

namespace monotraj::io {

void write_distance_field(const std::filesystem::path& path, const DistanceField& field) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path.string() + " for writing");
  const LatticeSpec& L = field.lattice();
  char header[256];
  std::snprintf(header, sizeof header, "EDTF32 %d %d %d %.17g %.17g %.17g %.17g\n", L.nx, L.ny, L.nz, L.voxel_size,
                L.origin.x, L.origin.y, L.origin.z);
  out << header;
  for (double d : field.values()) {
    const float f = static_cast<float>(d);
    out.write(reinterpret_cast<const char*>(&f), sizeof f);
  }
}

}  // namespace monotraj::io
