#include "monotraj/losses.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "monotraj/simd/kernels.hpp"

namespace monotraj::losses {

ScalarField::ScalarField(int w, int h, std::vector<double> v) : width(w), height(h), values(std::move(v)) {
  if (w <= 0 || h <= 0 || values.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {
    throw InputError("scalar field: shape does not match value count");
  }
}

VectorField::VectorField(int w, int h, std::vector<Vec3> v) : width(w), height(h), values(std::move(v)) {
  if (w <= 0 || h <= 0 || values.size() != static_cast<std::size_t>(w) * static_cast<std::size_t>(h)) {
    throw InputError("vector field: shape does not match value count");
  }
}

Logits Logits::one_hot(const std::array<double, kLogitCount>& z, int target_class) {
  if (target_class < 0 || target_class >= kLogitCount) throw InputError("logits: target class out of range");
  Logits l;
  l.z = z;
  l.target[static_cast<std::size_t>(target_class)] = 1.0;
  return l;
}

ScalarLoss depth_loss(const ScalarField& pred_log, const ScalarField& gt_log) {
  if (pred_log.width != gt_log.width || pred_log.height != gt_log.height || pred_log.size() != gt_log.size()) {
    throw InputError("depth_loss: shape mismatch");
  }
  const std::size_t w = static_cast<std::size_t>(pred_log.width);
  const std::size_t h = static_cast<std::size_t>(pred_log.height);
  const std::size_t n = pred_log.size();
  const double nn = static_cast<double>(n);
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = pred_log.values[i] - gt_log.values[i];

  const simd::DepthLossSums sums = simd::active().depth_loss_sums(d.data(), w, h);
  ScalarLoss out;
  out.value = sums.sum_sq / nn - sums.sum * sums.sum / (2.0 * nn * nn) + sums.grad_sq / nn;

  // d/dd_i of each term; the gradient term couples each pixel with its
  // right and lower neighbors through the forward differences.
  std::vector<double> g(n);
  for (std::size_t v = 0; v < h; ++v) {
    for (std::size_t u = 0; u < w; ++u) {
      const std::size_t i = v * w + u;
      double acc = 2.0 * d[i] / nn - sums.sum / (nn * nn);
      double spatial = 0.0;
      if (u + 1 < w) spatial -= d[i + 1] - d[i];
      if (u > 0) spatial += d[i] - d[i - 1];
      if (v + 1 < h) spatial -= d[i + w] - d[i];
      if (v > 0) spatial += d[i] - d[i - w];
      acc += 2.0 * spatial / nn;
      g[i] = acc;
    }
  }
  out.gradient = ScalarField(pred_log.width, pred_log.height, std::move(g));
  return out;
}

VectorLoss normal_loss(const VectorField& pred, const VectorField& gt) {
  if (pred.width != gt.width || pred.height != gt.height || pred.size() != gt.size()) {
    throw InputError("normal_loss: shape mismatch");
  }
  const double n = static_cast<double>(pred.size());
  double dot = 0.0;
  std::vector<Vec3> g(pred.size());
  for (std::size_t i = 0; i < pred.size(); ++i) {
    dot += pred.values[i].dot(gt.values[i]);
    g[i] = gt.values[i] * (-1.0 / n);
  }
  return {-dot / n, VectorField(pred.width, pred.height, std::move(g))};
}

std::array<double, kLogitCount> softmax(const std::array<double, kLogitCount>& z) {
  const double m = *std::max_element(z.begin(), z.end());
  std::array<double, kLogitCount> p{};
  double total = 0.0;
  for (int c = 0; c < kLogitCount; ++c) {
    p[c] = std::exp(z[c] - m);
    total += p[c];
  }
  for (double& v : p) v /= total;
  return p;
}

LogitLoss softmax_cross_entropy(const Logits& logits) {
  for (double v : logits.z) {
    if (!std::isfinite(v)) throw InputError("softmax_cross_entropy: non-finite logit");
  }
  const auto& z = logits.z;
  const auto top = std::max_element(z.begin(), z.end());
  const double m = *top;
  // log-sum-exp = m + log1p(sum over the other classes of exp(z - m))
  double rest = 0.0;
  for (auto it = z.begin(); it != z.end(); ++it) {
    if (it != top) rest += std::exp(*it - m);
  }
  const double lse = m + std::log1p(rest);
  LogitLoss out;
  double target_mass = 0.0;
  for (int c = 0; c < kLogitCount; ++c) {
    target_mass += logits.target[c];
    out.value += logits.target[c] * (lse - z[c]);
  }
  const auto p = softmax(z);
  for (int c = 0; c < kLogitCount; ++c) out.gradient[c] = target_mass * p[c] - logits.target[c];
  return out;
}

BatchLoss batch_cross_entropy(std::span<const Logits> batch) {
  if (batch.empty()) throw InputError("batch_cross_entropy: empty batch");
  BatchLoss out;
  const double inv = 1.0 / static_cast<double>(batch.size());
  for (const Logits& l : batch) {
    LogitLoss one = softmax_cross_entropy(l);
    out.value += one.value * inv;
    for (double& g : one.gradient) g *= inv;
    out.gradients.push_back(one.gradient);
  }
  return out;
}

VectorField flip_normals_horizontal(const VectorField& normals) {
  std::vector<Vec3> out(normals.size());
  const auto w = static_cast<std::size_t>(normals.width);
  for (std::size_t v = 0; v < static_cast<std::size_t>(normals.height); ++v) {
    for (std::size_t u = 0; u < w; ++u) {
      Vec3 n = normals.values[v * w + (w - 1 - u)];
      n.x = -n.x;
      out[v * w + u] = n;
    }
  }
  return VectorField(normals.width, normals.height, std::move(out));
}

namespace {

double relative_error(const std::vector<double>& a, const std::vector<double>& b) {
  double diff = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  const double scale = std::max({std::sqrt(na), std::sqrt(nb), 1e-30});
  return std::sqrt(diff) / scale;
}

template <class F>
std::vector<double> central_differences(std::vector<double> x, F&& f, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = f(x);
    x[i] = keep - h;
    const double down = f(x);
    x[i] = keep;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

void record(GradientCheckReport& r, double err, double tolerance) {
  ++r.cases;
  if (err < tolerance) ++r.passed;
  r.worst_relative_error = std::max(r.worst_relative_error, err);
}

}  // namespace

GradientCheckSummary run_gradient_checks(unsigned seed, int cases, double tolerance) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_int_distribution<int> dim(3, 9);
  GradientCheckSummary summary;
  constexpr double h = 1e-5;

  for (int c = 0; c < cases; ++c) {
    const int w = dim(rng);
    const int hgt = dim(rng);
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(hgt);
    std::vector<double> pred(n);
    std::vector<double> gt(n);
    for (std::size_t i = 0; i < n; ++i) {
      gt[i] = std::log(0.5 + 4.5 * (0.5 * (uni(rng) + 1.0)));
      pred[i] = gt[i] + 0.3 * uni(rng);
    }
    const ScalarField gt_field(w, hgt, gt);
    const auto analytic = depth_loss(ScalarField(w, hgt, pred), gt_field).gradient.values;
    const auto numeric = central_differences(
        pred, [&](const std::vector<double>& x) { return depth_loss(ScalarField(w, hgt, x), gt_field).value; }, h);
    record(summary.depth, relative_error(analytic, numeric), tolerance);
  }

  for (int c = 0; c < cases; ++c) {
    const int w = dim(rng);
    const int hgt = dim(rng);
    const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(hgt);
    std::vector<Vec3> gt(n);
    std::vector<double> pred(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      Vec3 v{uni(rng), uni(rng), uni(rng) + 1.5};
      gt[i] = v * (1.0 / v.norm());
      pred[3 * i] = uni(rng);
      pred[3 * i + 1] = uni(rng);
      pred[3 * i + 2] = uni(rng);
    }
    auto unpack = [&](const std::vector<double>& x) {
      std::vector<Vec3> out(n);
      for (std::size_t i = 0; i < n; ++i) out[i] = {x[3 * i], x[3 * i + 1], x[3 * i + 2]};
      return VectorField(w, hgt, std::move(out));
    };
    const VectorField gt_field(w, hgt, gt);
    const auto g = normal_loss(unpack(pred), gt_field).gradient.values;
    std::vector<double> analytic(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      analytic[3 * i] = g[i].x;
      analytic[3 * i + 1] = g[i].y;
      analytic[3 * i + 2] = g[i].z;
    }
    const auto numeric = central_differences(
        pred, [&](const std::vector<double>& x) { return normal_loss(unpack(x), gt_field).value; }, h);
    record(summary.normal, relative_error(analytic, numeric), tolerance);
  }

  std::uniform_int_distribution<int> cls(0, kLogitCount - 1);
  for (int c = 0; c < cases; ++c) {
    std::array<double, kLogitCount> z{};
    for (double& v : z) v = 3.0 * uni(rng);
    const int target = cls(rng);
    const auto grad = softmax_cross_entropy(Logits::one_hot(z, target)).gradient;
    const std::vector<double> analytic(grad.begin(), grad.end());
    const auto numeric = central_differences(
        std::vector<double>(z.begin(), z.end()),
        [&](const std::vector<double>& x) {
          std::array<double, kLogitCount> zz{};
          std::copy(x.begin(), x.end(), zz.begin());
          return softmax_cross_entropy(Logits::one_hot(zz, target)).value;
        },
        h);
    record(summary.cross_entropy, relative_error(analytic, numeric), tolerance);
  }
  return summary;
}

}  // namespace monotraj::losses
