#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "monotraj/losses.hpp"

using namespace monotraj;
using namespace monotraj::losses;

namespace {

ScalarField random_scalar(std::mt19937_64& rng, int w, int h) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(w) * h);
  for (double& x : v) x = n(rng);
  return {w, h, v};
}

// Direct evaluation of the depth loss formula, written independently of the
// library's summation.
double depth_formula(const ScalarField& p, const ScalarField& g) {
  const int w = p.width, h = p.height;
  const double n = double(w) * h;
  auto d = [&](int u, int v) { return p.values[v * w + u] - g.values[v * w + u]; };
  double s = 0, s2 = 0, grad = 0;
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      s += d(u, v);
      s2 += d(u, v) * d(u, v);
      const double dx = u + 1 < w ? d(u + 1, v) - d(u, v) : 0.0;
      const double dy = v + 1 < h ? d(u, v + 1) - d(u, v) : 0.0;
      grad += dx * dx + dy * dy;
    }
  return s2 / n - s * s / (2 * n * n) + grad / n;
}

double rel_err(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0, den = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num) / std::max(std::sqrt(den), 1e-12);
}

}  // namespace

TEST_CASE("depth loss anchors") {
  std::mt19937_64 rng(1);
  const auto gt = random_scalar(rng, 6, 5);
  const auto same = depth_loss(gt, gt);
  CHECK(same.value == 0.0);
  for (double g : same.gradient.values) CHECK(g == 0.0);

  auto shifted = gt;
  for (double& v : shifted.values) v += 1.0;
  CHECK(depth_loss(shifted, gt).value == doctest::Approx(0.5).epsilon(1e-13));

  CHECK_THROWS_AS(depth_loss(random_scalar(rng, 3, 3), random_scalar(rng, 3, 4)), InputError);
}

TEST_CASE("depth loss matches the formula and is shift invariant and even in a constant offset") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_scalar(rng, 8, 8), g = random_scalar(rng, 8, 8);
    const double v = depth_loss(p, g).value;
    CHECK(v == doctest::Approx(depth_formula(p, g)).epsilon(1e-12));
    auto p2 = p, g2 = g;
    for (double& x : p2.values) x += 3.7;
    for (double& x : g2.values) x += 3.7;
    CHECK(depth_loss(p2, g2).value == doctest::Approx(v).epsilon(1e-10));
  }
  const auto g = random_scalar(rng, 5, 4);
  for (double c : {0.3, 1.0, 2.5}) {
    auto plus = g, minus = g;
    for (double& x : plus.values) x += c;
    for (double& x : minus.values) x -= c;
    CHECK(depth_loss(plus, g).value == doctest::Approx(0.5 * c * c).epsilon(1e-12));
    CHECK(depth_loss(minus, g).value == doctest::Approx(depth_loss(plus, g).value).epsilon(1e-12));
  }
}

TEST_CASE("depth loss gradient vs central differences") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    auto p = random_scalar(rng, 8, 8);
    const auto g = random_scalar(rng, 8, 8);
    const auto analytic = depth_loss(p, g).gradient.values;
    std::vector<double> numeric(analytic.size());
    const double h = 1e-5;
    for (std::size_t i = 0; i < p.values.size(); ++i) {
      const double x = p.values[i];
      p.values[i] = x + h;
      const double up = depth_formula(p, g);
      p.values[i] = x - h;
      const double dn = depth_formula(p, g);
      p.values[i] = x;
      numeric[i] = (up - dn) / (2 * h);
    }
    CHECK(rel_err(analytic, numeric) < 1e-5);
  }
}

TEST_CASE("normal loss") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Vec3> gt(12), orth(12), pred(12);
  for (int i = 0; i < 12; ++i) {
    Vec3 a{n(rng), n(rng), n(rng)};
    a = a * (1.0 / a.norm());
    gt[i] = a;
    Vec3 r{n(rng), n(rng), n(rng)};
    r = r - a * r.dot(a);
    orth[i] = r * (1.0 / r.norm());
    pred[i] = {n(rng), n(rng), n(rng)};
  }
  const VectorField g(4, 3, gt);
  CHECK(normal_loss(g, g).value == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(normal_loss(VectorField(4, 3, orth), g).value) < 1e-14);
  const auto r = normal_loss(VectorField(4, 3, pred), g);
  double want = 0;
  for (int i = 0; i < 12; ++i) want -= pred[i].dot(gt[i]) / 12.0;
  CHECK(r.value == doctest::Approx(want).epsilon(1e-13));
  for (int i = 0; i < 12; ++i) CHECK((r.gradient.values[i] - gt[i] * (-1.0 / 12.0)).norm() < 1e-15);
  CHECK_THROWS_AS(normal_loss(VectorField(3, 4, pred), g), InputError);
  const auto flipped = flip_normals_horizontal(g);
  CHECK(flipped.values[3].x == -gt[0].x);
  CHECK(flipped.values[3].y == gt[0].y);
  CHECK(flipped.values[3].z == gt[0].z);
}

TEST_CASE("softmax and cross-entropy") {
  const std::array<double, 5> zero{};
  for (int c = 0; c < 5; ++c) CHECK(std::abs(softmax_cross_entropy(Logits::one_hot(zero, c)).value - std::log(5.0)) < 1e-12);
  const std::array<double, 5> sat{0, 0, 50, 0, 0};
  const auto l = softmax_cross_entropy(Logits::one_hot(sat, 2));
  CHECK(l.value >= 0.0);
  CHECK(l.value < 1e-20);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::array<double, 5> z{};
    for (double& v : z) v = n(rng);
    const auto s = softmax(z);
    double sum = 0;
    for (double v : s) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-12);
    const auto lg = Logits::one_hot(z, trial % 5);
    const auto r = softmax_cross_entropy(lg);
    CHECK(r.value >= 0.0);
    CHECK(r.value == doctest::Approx(-std::log(s[trial % 5])).epsilon(1e-12));
    std::vector<double> analytic(r.gradient.begin(), r.gradient.end()), numeric(5);
    for (int i = 0; i < 5; ++i) {
      auto up = lg, dn = lg;
      up.z[i] += 1e-5;
      dn.z[i] -= 1e-5;
      numeric[i] = (softmax_cross_entropy(up).value - softmax_cross_entropy(dn).value) / 2e-5;
      CHECK(r.gradient[i] == doctest::Approx(s[i] - (i == trial % 5)).epsilon(1e-12));
    }
    CHECK(rel_err(analytic, numeric) < 1e-6);
  }
  const std::array<double, 5> huge{1000, -1000, 999, 0, 3};
  CHECK(std::isfinite(softmax_cross_entropy(Logits::one_hot(huge, 1)).value));
  CHECK_THROWS_AS(Logits::one_hot(zero, 5), InputError);
}

TEST_CASE("batch cross-entropy averages") {
  std::vector<Logits> batch = {Logits::one_hot({0, 0, 0, 0, 0}, 1), Logits::one_hot({1, 2, 3, 4, 5}, 4)};
  const auto b = batch_cross_entropy(batch);
  const double a0 = softmax_cross_entropy(batch[0]).value, a1 = softmax_cross_entropy(batch[1]).value;
  CHECK(b.value == doctest::Approx((a0 + a1) / 2).epsilon(1e-14));
  REQUIRE(b.gradients.size() == 2);
  CHECK(b.gradients[1][4] == doctest::Approx(softmax_cross_entropy(batch[1]).gradient[4] / 2).epsilon(1e-14));
  CHECK_THROWS_AS(batch_cross_entropy({}), InputError);
}

TEST_CASE("built-in gradient check suite passes") {
  const auto s = run_gradient_checks(7, 50, 1e-5);
  CHECK(s.all_passed());
  CHECK(s.depth.cases == 50);
  CHECK(s.depth.worst_relative_error < 1e-5);
  CHECK(s.normal.worst_relative_error < 1e-5);
  CHECK(s.cross_entropy.worst_relative_error < 1e-5);
}
