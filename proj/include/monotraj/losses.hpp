#pragma once

#include <array>
#include <span>
#include <vector>

#include "monotraj/core.hpp"

namespace monotraj::losses {

struct ScalarField {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(int w, int h, std::vector<double> v);
  std::size_t size() const { return values.size(); }
};

struct VectorField {
  int width = 0;
  int height = 0;
  std::vector<Vec3> values;

  VectorField() = default;
  VectorField(int w, int h, std::vector<Vec3> v);
  std::size_t size() const { return values.size(); }
};

struct ScalarLoss {
  double value = 0.0;
  ScalarField gradient;
};

struct VectorLoss {
  double value = 0.0;
  VectorField gradient;
};

inline constexpr int kLogitCount = 5;

struct Logits {
  std::array<double, kLogitCount> z{};
  std::array<double, kLogitCount> target{};

  static Logits one_hot(const std::array<double, kLogitCount>& z, int target_class);
};

struct LogitLoss {
  double value = 0.0;
  std::array<double, kLogitCount> gradient{};
};

// Scale-invariant log-depth loss with a spatial-gradient term:
//   (1/n) sum d^2 - (1/2n^2)(sum d)^2 + (1/n) sum (dx^2 + dy^2)
// where d = pred_log - gt_log and dx, dy are forward differences, taken as
// zero on the last column / last row.
ScalarLoss depth_loss(const ScalarField& pred_log, const ScalarField& gt_log);

// -(1/n) sum pred_i . gt_i. Predictions are used as given (no renormalization).
VectorLoss normal_loss(const VectorField& pred, const VectorField& gt);

std::array<double, kLogitCount> softmax(const std::array<double, kLogitCount>& z);

// -sum target_c log softmax(z)_c for one sample, via log-sum-exp.
LogitLoss softmax_cross_entropy(const Logits& logits);

// Mean of the per-sample losses; gradients are divided by the batch size.
struct BatchLoss {
  double value = 0.0;
  std::vector<std::array<double, kLogitCount>> gradients;
};
BatchLoss batch_cross_entropy(std::span<const Logits> batch);

// Horizontal flip of a normal map: columns mirrored and the horizontal
// component negated.
VectorField flip_normals_horizontal(const VectorField& normals);

// Finite-difference self test used by `monotraj losses check` and the tests.
struct GradientCheckReport {
  int cases = 0;
  int passed = 0;
  double worst_relative_error = 0.0;
};
struct GradientCheckSummary {
  GradientCheckReport depth;
  GradientCheckReport normal;
  GradientCheckReport cross_entropy;
  bool all_passed() const {
    return depth.passed == depth.cases && normal.passed == normal.cases &&
           cross_entropy.passed == cross_entropy.cases;
  }
};
GradientCheckSummary run_gradient_checks(unsigned seed, int cases, double tolerance);

}  // namespace monotraj::losses
