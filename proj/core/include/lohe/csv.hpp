#pragma once

// Deterministic CSV: '.' decimals, '\n' line endings, doubles with 17
// significant digits so every value round-trips exactly.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace lohe {

using CsvCell = std::variant<double, std::int64_t, std::string>;

class CsvReport {
 public:
  explicit CsvReport(std::vector<std::string> header);

  const std::vector<std::string>& header() const noexcept { return header_; }
  const std::vector<std::vector<CsvCell>>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }

  /// Throws std::invalid_argument if the row width differs from the header.
  void add_row(std::vector<CsvCell> row);

  bool has_column(const std::string& name) const;

  /// Index of a header column; throws std::out_of_range if absent.
  std::size_t column_index(const std::string& name) const;

  /// Numeric value of a cell (int cells are widened).
  double number(std::size_t row, const std::string& column) const;

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<CsvCell>> rows_;
};

/// Shortest-round-trip-safe text for a double: 17 significant digits, no locale.
std::string format_double(double v);

}  // namespace lohe
