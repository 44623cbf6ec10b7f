#include "ionlink/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace ionlink {

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void ResultRow::set(const std::string& key, const std::string& value) {
  for (const char c : key) {
    if (c == ',' || c == '\n' || c == '\r') {
      throw std::invalid_argument("column name contains a separator: " + key);
    }
  }
  for (const char c : value) {
    if (c == ',' || c == '\n' || c == '\r') {
      throw std::invalid_argument("cell value contains a separator: " + value);
    }
  }
  cells_.emplace_back(key, value);
}

void ResultRow::set(const std::string& key, double value) {
  set(key, format_double(value));
}

void ResultRow::set(const std::string& key, std::uint64_t value) {
  set(key, std::to_string(value));
}

void ResultRow::set(const std::string& key, int value) {
  set(key, std::to_string(value));
}

void emit_csv(const std::vector<std::string>& header,
              const std::vector<ResultRow>& rows, std::ostream& out) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ',';
    out << header[i];
  }
  out << '\n';
  for (const ResultRow& row : rows) {
    if (row.cells().size() != header.size()) {
      throw std::invalid_argument("row width differs from header width");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (row.cells()[i].first != header[i]) {
        throw std::invalid_argument("row column '" + row.cells()[i].first +
                                    "' does not match header column '" +
                                    header[i] + "'");
      }
      if (i) out << ',';
      out << row.cells()[i].second;
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write to CSV destination failed");
  }
}

}  // namespace ionlink
