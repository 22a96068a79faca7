#include "srs/scan_table.hpp"

#include <fmt/format.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace srs {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

void ScanTable::add_row(std::vector<double> values, std::string note) {
  if (values.size() != columns_.size()) throw std::invalid_argument("row width does not match columns");
  rows_.push_back(std::move(values));
  notes_.push_back(std::move(note));
}

std::size_t ScanTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw std::out_of_range("no column named " + name);
}

std::vector<double> ScanTable::column(const std::string& name) const {
  const auto i = column_index(name);
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[i]);
  return out;
}

bool ScanTable::has_flagged_rows() const {
  for (const auto& n : notes_) {
    if (!n.empty()) return true;
  }
  return false;
}

namespace {

void json_lines(std::string& out, const nlohmann::ordered_json& obj) {
  for (const auto& [key, value] : obj.items()) {
    out += "# " + key + ": ";
    out += value.is_string() ? value.get<std::string>() : value.dump();
    out += '\n';
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json number_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

} // namespace

std::string ScanTable::to_csv() const {
  std::string out;
  json_lines(out, metadata_);
  const bool notes = has_flagged_rows();
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) out += ',';
    out += columns_[i].name + "[" + columns_[i].unit + "]";
  }
  if (notes) out += ",note";
  out += '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    for (std::size_t i = 0; i < rows_[r].size(); ++i) {
      if (i) out += ',';
      out += format_number(rows_[r][i]);
    }
    if (notes) out += "," + csv_escape(notes_[r]);
    out += '\n';
  }
  json_lines(out, summary_);
  return out;
}

std::string ScanTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["metadata"] = metadata_;
  auto cols = nlohmann::ordered_json::array();
  for (const auto& c : columns_) cols.push_back({{"name", c.name}, {"unit", c.unit}});
  doc["columns"] = cols;
  auto records = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    nlohmann::ordered_json rec;
    for (std::size_t i = 0; i < columns_.size(); ++i) rec[columns_[i].name] = number_json(rows_[r][i]);
    if (!notes_[r].empty()) rec["note"] = notes_[r];
    records.push_back(rec);
  }
  doc["records"] = records;
  doc["summary"] = summary_;
  return doc.dump(2) + "\n";
}

} // namespace srs
