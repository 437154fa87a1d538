#include "lohe/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lohe {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvReport::CsvReport(std::vector<std::string> header) : header_(std::move(header)) {
  if (header_.empty()) throw std::invalid_argument("CsvReport: empty header");
}

void CsvReport::add_row(std::vector<CsvCell> row) {
  if (row.size() != header_.size()) {
    throw std::invalid_argument("CsvReport: row has " + std::to_string(row.size()) + " cells, header has " +
                                std::to_string(header_.size()));
  }
  rows_.push_back(std::move(row));
}

bool CsvReport::has_column(const std::string& name) const {
  return std::find(header_.begin(), header_.end(), name) != header_.end();
}

std::size_t CsvReport::column_index(const std::string& name) const {
  const auto it = std::find(header_.begin(), header_.end(), name);
  if (it == header_.end()) throw std::out_of_range("CsvReport: no column '" + name + "'");
  return static_cast<std::size_t>(it - header_.begin());
}

double CsvReport::number(std::size_t row, const std::string& column) const {
  const CsvCell& cell = rows_.at(row).at(column_index(column));
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  throw std::invalid_argument("CsvReport: column '" + column + "' is not numeric");
}

namespace {

void write_cell(std::ostream& os, const CsvCell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    os << format_double(*d);
  } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
    os << *i;
  } else {
    os << std::get<std::string>(cell);
  }
}

}  // namespace

void CsvReport::write(std::ostream& os) const {
  for (std::size_t c = 0; c < header_.size(); ++c) os << (c ? "," : "") << header_[c];
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      write_cell(os, row[c]);
    }
    os << '\n';
  }
}

std::string CsvReport::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace lohe
