#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "monotraj/cost.hpp"

namespace monotraj::io {

// Columns: frame_id,label,top2_second, J_<class> x5, clear_<class> x5,
// safe_full_<class> x5, safe_2m_<class> x5 (classes in id order).
std::string label_csv_header();
std::string format_label_csv(const std::vector<LabelRecord>& records);
std::vector<LabelRecord> parse_label_csv(const std::string& text);

// frame_id,class with the class given by name or integer id; a header line
// is optional.
std::vector<std::pair<std::string, TrajectoryClass>> parse_predictions_csv(const std::string& text);
std::string format_predictions_csv(const std::vector<std::pair<std::string, TrajectoryClass>>& preds);

std::string format_distribution(const std::array<double, kNumClasses>& distribution, std::size_t frames,
                                std::size_t failures);

std::string read_text_file(const std::filesystem::path& path);
// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace monotraj::io
