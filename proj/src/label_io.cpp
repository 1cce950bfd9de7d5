#include "monotraj/label_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace monotraj::io {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

TrajectoryClass class_cell(const std::string& cell, std::size_t row) {
  const auto c = parse_class(trim(cell));
  if (!c) throw InputError("row " + std::to_string(row) + ": unknown class '" + cell + "'");
  return *c;
}

double number_cell(const std::string& cell, std::size_t row) {
  try {
    std::size_t used = 0;
    const std::string t = trim(cell);
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument(t);
    return v;
  } catch (const std::exception&) {
    throw InputError("row " + std::to_string(row) + ": bad number '" + cell + "'");
  }
}

}  // namespace

std::string label_csv_header() {
  std::string h = "frame_id,label,top2_second";
  for (const char* prefix : {"J_", "clear_", "safe_full_", "safe_2m_"}) {
    for (TrajectoryClass c : kAllClasses) {
      h += ',';
      h += prefix;
      h += class_name(c);
    }
  }
  return h;
}

std::string format_label_csv(const std::vector<LabelRecord>& records) {
  std::ostringstream out;
  out << label_csv_header() << '\n';
  char cell[64];
  for (const LabelRecord& r : records) {
    out << r.frame_id << ',' << class_name(r.label) << ',' << class_name(r.top2[1]);
    for (const CostBreakdown& c : r.costs) {
      std::snprintf(cell, sizeof cell, ",%.17g", c.total);
      out << cell;
    }
    for (const CostBreakdown& c : r.costs) {
      std::snprintf(cell, sizeof cell, ",%.17g", c.min_clearance);
      out << cell;
    }
    for (bool s : r.safe_full) out << ',' << (s ? 1 : 0);
    for (bool s : r.safe_truncated) out << ',' << (s ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

std::vector<LabelRecord> parse_label_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || trim(line) != label_csv_header()) throw InputError("label csv: missing header");
  std::vector<LabelRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(trim(line));
    if (cells.size() != 3 + 4 * kNumClasses) {
      throw InputError("label csv row " + std::to_string(row) + ": expected " + std::to_string(3 + 4 * kNumClasses) +
                       " columns");
    }
    LabelRecord r;
    r.frame_id = cells[0];
    r.label = class_cell(cells[1], row);
    r.top2 = {r.label, class_cell(cells[2], row)};
    for (int c = 0; c < kNumClasses; ++c) {
      r.costs[c].total = number_cell(cells[3 + c], row);
      r.costs[c].min_clearance = number_cell(cells[3 + kNumClasses + c], row);
      r.safe_full[c] = number_cell(cells[3 + 2 * kNumClasses + c], row) != 0.0;
      r.safe_truncated[c] = number_cell(cells[3 + 3 * kNumClasses + c], row) != 0.0;
      r.costs[c].collides = !r.safe_full[c];
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::pair<std::string, TrajectoryClass>> parse_predictions_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<std::string, TrajectoryClass>> out;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    line = trim(line);
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 2) throw InputError("predictions row " + std::to_string(row) + ": expected frame_id,class");
    if (row == 1 && trim(cells[0]) == "frame_id") continue;
    out.emplace_back(trim(cells[0]), class_cell(cells[1], row));
  }
  return out;
}

std::string format_predictions_csv(const std::vector<std::pair<std::string, TrajectoryClass>>& preds) {
  std::ostringstream out;
  out << "frame_id,class\n";
  for (const auto& [id, c] : preds) out << id << ',' << class_name(c) << '\n';
  return out.str();
}

std::string format_distribution(const std::array<double, kNumClasses>& distribution, std::size_t frames,
                                std::size_t failures) {
  std::ostringstream out;
  out << "frames=" << frames << '\n' << "failures=" << failures << '\n';
  char line[96];
  for (TrajectoryClass c : kAllClasses) {
    std::snprintf(line, sizeof line, "%s=%.12g\n", std::string(class_name(c)).c_str(), distribution[class_index(c)]);
    out << line;
  }
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw InputError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace monotraj::io
