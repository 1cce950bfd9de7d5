#include "monotraj/evaluation.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace monotraj {

PredictionSet::PredictionSet(std::vector<Prediction> items) {
  for (Prediction& p : items) add(std::move(p));
}

void PredictionSet::add(Prediction p) {
  if (!ids_.insert(p.frame_id).second) throw InputError("prediction set: duplicate frame id " + p.frame_id);
  items_.push_back(std::move(p));
}

namespace {

void require_frames(const PredictionSet& preds) {
  if (preds.empty()) throw InputError("metrics: empty prediction set");
}

template <class Pred>
double fraction(const PredictionSet& preds, Pred&& hit) {
  require_frames(preds);
  std::size_t count = 0;
  for (const Prediction& p : preds.items()) count += hit(p) ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(preds.size());
}

}  // namespace

double accuracy(const PredictionSet& preds) {
  return fraction(preds, [](const Prediction& p) { return p.predicted == p.reference.label; });
}

double top2_accuracy(const PredictionSet& preds) {
  return fraction(preds, [](const Prediction& p) {
    return p.predicted == p.reference.top2[0] || p.predicted == p.reference.top2[1];
  });
}

double safe_prediction_rate(const PredictionSet& preds, SafetyHorizon horizon) {
  return fraction(preds, [horizon](const Prediction& p) {
    const int c = class_index(p.predicted);
    return horizon == SafetyHorizon::Full ? p.reference.safe_full[c] : p.reference.safe_truncated[c];
  });
}

ConfusionCounts confusion_counts(const PredictionSet& preds) {
  ConfusionCounts counts{};
  for (const Prediction& p : preds.items()) ++counts[class_index(p.reference.label)][class_index(p.predicted)];
  return counts;
}

ConfusionMatrix confusion_matrix(const PredictionSet& preds) {
  const ConfusionCounts counts = confusion_counts(preds);
  ConfusionMatrix m{};
  for (int r = 0; r < kNumClasses; ++r) {
    std::size_t row_total = 0;
    for (std::size_t v : counts[r]) row_total += v;
    if (row_total == 0) continue;
    for (int c = 0; c < kNumClasses; ++c) m[r][c] = static_cast<double>(counts[r][c]) / static_cast<double>(row_total);
  }
  return m;
}

MetricsReport evaluate(const PredictionSet& preds) {
  MetricsReport r;
  r.frames = preds.size();
  r.skipped = preds.skipped;
  r.accuracy = accuracy(preds);
  r.top2_accuracy = top2_accuracy(preds);
  r.safe_rate_full = safe_prediction_rate(preds, SafetyHorizon::Full);
  r.safe_rate_truncated = safe_prediction_rate(preds, SafetyHorizon::Truncated);
  r.counts = confusion_counts(preds);
  r.confusion = confusion_matrix(preds);
  return r;
}

std::string format_report_text(const MetricsReport& r) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "frames evaluated : %zu (skipped %zu)\n", r.frames, r.skipped);
  out << line;
  std::snprintf(line, sizeof line, "accuracy         : %6.2f %%\n", 100.0 * r.accuracy);
  out << line;
  std::snprintf(line, sizeof line, "top-2 accuracy   : %6.2f %%\n", 100.0 * r.top2_accuracy);
  out << line;
  std::snprintf(line, sizeof line, "safe (full)      : %6.2f %%\n", 100.0 * r.safe_rate_full);
  out << line;
  std::snprintf(line, sizeof line, "safe (truncated) : %6.2f %%\n", 100.0 * r.safe_rate_truncated);
  out << line;
  out << "confusion (row = ground truth, column = prediction)\n";
  std::snprintf(line, sizeof line, "%-13s", "");
  out << line;
  for (TrajectoryClass c : kAllClasses) {
    std::snprintf(line, sizeof line, "%13s", std::string(class_name(c)).c_str());
    out << line;
  }
  out << '\n';
  for (TrajectoryClass row : kAllClasses) {
    std::snprintf(line, sizeof line, "%-13s", std::string(class_name(row)).c_str());
    out << line;
    for (int c = 0; c < kNumClasses; ++c) {
      std::snprintf(line, sizeof line, "%13.2f", r.confusion[class_index(row)][c]);
      out << line;
    }
    out << '\n';
  }
  return out.str();
}

std::string format_report_kv(const MetricsReport& r) {
  std::ostringstream out;
  char line[256];
  out << "frames=" << r.frames << '\n' << "skipped=" << r.skipped << '\n';
  std::snprintf(line, sizeof line, "accuracy=%.17g\ntop2_accuracy=%.17g\nsafe_rate_full=%.17g\nsafe_rate_truncated=%.17g\n",
                r.accuracy, r.top2_accuracy, r.safe_rate_full, r.safe_rate_truncated);
  out << line;
  for (TrajectoryClass row : kAllClasses) {
    for (TrajectoryClass col : kAllClasses) {
      std::snprintf(line, sizeof line, "confusion.%s.%s=%.17g\n", std::string(class_name(row)).c_str(),
                    std::string(class_name(col)).c_str(), r.confusion[class_index(row)][class_index(col)]);
      out << line;
    }
  }
  return out.str();
}

PredictionSet join_predictions(const std::vector<LabelRecord>& labels,
                               const std::vector<std::pair<std::string, TrajectoryClass>>& predicted) {
  std::map<std::string, const LabelRecord*> by_id;
  for (const LabelRecord& r : labels) by_id.emplace(r.frame_id, &r);
  PredictionSet set;
  std::set<std::string> seen;
  for (const auto& [id, cls] : predicted) {
    if (!seen.insert(id).second) throw InputError("predictions: duplicate frame id " + id);
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      ++set.skipped;
      continue;
    }
    set.add({id, cls, *it->second});
  }
  return set;
}

std::vector<std::pair<std::string, TrajectoryClass>> random_predictions(const std::vector<LabelRecord>& labels,
                                                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, kNumClasses - 1);
  std::vector<std::pair<std::string, TrajectoryClass>> out;
  out.reserve(labels.size());
  for (const LabelRecord& r : labels) out.emplace_back(r.frame_id, static_cast<TrajectoryClass>(pick(rng)));
  return out;
}

}  // namespace monotraj
