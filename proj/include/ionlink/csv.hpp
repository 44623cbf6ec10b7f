#ifndef IONLINK_CSV_HPP
#define IONLINK_CSV_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace ionlink {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

// One CSV row as ordered (column, rendered value) cells.
class ResultRow {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, double value);
  void set(const std::string& key, std::uint64_t value);
  void set(const std::string& key, int value);

  const std::vector<std::pair<std::string, std::string>>& cells() const {
    return cells_;
  }

 private:
  std::vector<std::pair<std::string, std::string>> cells_;
};

// Writes header + rows. Every row must carry exactly the header's columns in
// order; cells must be free of separators/newlines (the emitted vocabulary is
// numeric plus fixed tokens, so no quoting layer exists).
void emit_csv(const std::vector<std::string>& header,
              const std::vector<ResultRow>& rows, std::ostream& out);

}  // namespace ionlink

#endif
