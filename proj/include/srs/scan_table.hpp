#ifndef SRS_SCAN_TABLE_HPP
#define SRS_SCAN_TABLE_HPP

#include <json.hpp>

#include <string>
#include <vector>

namespace srs {

struct Column {
  std::string name;
  std::string unit; // "1" for dimensionless
};

/// Ordered table of sweep results plus metadata. Rendering is deterministic:
/// the same table always produces the same bytes.
class ScanTable {
public:
  explicit ScanTable(std::vector<Column> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<double> values, std::string note = {});

  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::string>& notes() const { return notes_; }
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
  bool has_flagged_rows() const;

  /// Metadata (command, resolved config, config hash), echoed ahead of the rows.
  nlohmann::ordered_json& metadata() { return metadata_; }
  const nlohmann::ordered_json& metadata() const { return metadata_; }
  /// Derived results reported after the rows (argmax etc.).
  nlohmann::ordered_json& summary() { return summary_; }
  const nlohmann::ordered_json& summary() const { return summary_; }

  /// '#'-prefixed metadata lines, a "name[unit]" header row, data rows, then
  /// '#'-prefixed summary lines.
  std::string to_csv() const;
  /// {"metadata": ..., "columns": [...], "records": [...], "summary": ...}
  std::string to_json() const;

private:
  std::vector<Column> columns_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> notes_;
  nlohmann::ordered_json metadata_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary_ = nlohmann::ordered_json::object();
};

/// Shortest round-trip decimal form used for every emitted number.
std::string format_number(double v);

/// FNV-1a 64-bit hash as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

} // namespace srs

#endif // SRS_SCAN_TABLE_HPP
