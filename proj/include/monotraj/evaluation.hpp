#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

#include "monotraj/cost.hpp"

namespace monotraj {

struct Prediction {
  std::string frame_id;
  TrajectoryClass predicted = TrajectoryClass::Straight;
  LabelRecord reference;
};

// Rejects duplicate frame ids.
class PredictionSet {
 public:
  PredictionSet() = default;
  explicit PredictionSet(std::vector<Prediction> items);

  void add(Prediction p);
  const std::vector<Prediction>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  std::size_t skipped = 0;

 private:
  std::vector<Prediction> items_;
  std::unordered_set<std::string> ids_;
};

enum class SafetyHorizon { Full, Truncated };

double accuracy(const PredictionSet& preds);
double top2_accuracy(const PredictionSet& preds);
double safe_prediction_rate(const PredictionSet& preds, SafetyHorizon horizon);

using ConfusionCounts = std::array<std::array<std::size_t, kNumClasses>, kNumClasses>;
using ConfusionMatrix = std::array<std::array<double, kNumClasses>, kNumClasses>;

// Row = true class, column = predicted class.
ConfusionCounts confusion_counts(const PredictionSet& preds);
// Row-normalized; rows of classes that never occur stay zero.
ConfusionMatrix confusion_matrix(const PredictionSet& preds);

struct MetricsReport {
  std::size_t frames = 0;
  std::size_t skipped = 0;
  double accuracy = 0.0;
  double top2_accuracy = 0.0;
  double safe_rate_full = 0.0;
  double safe_rate_truncated = 0.0;
  ConfusionCounts counts{};
  ConfusionMatrix confusion{};
};

MetricsReport evaluate(const PredictionSet& preds);
std::string format_report_text(const MetricsReport& report);
std::string format_report_kv(const MetricsReport& report);

// Joins labels with predicted classes by frame id; frames without a label
// count as skipped.
PredictionSet join_predictions(const std::vector<LabelRecord>& labels,
                               const std::vector<std::pair<std::string, TrajectoryClass>>& predicted);

// Uniform random class per label, drawn from a seeded engine.
std::vector<std::pair<std::string, TrajectoryClass>> random_predictions(const std::vector<LabelRecord>& labels,
                                                                        std::uint64_t seed);

}  // namespace monotraj
