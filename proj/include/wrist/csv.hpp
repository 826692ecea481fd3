#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wrist::csv {

/// Error with enough location context (line/field) to act on.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column_index(const std::string& name) const;  // throws ParseError if absent
  bool has_column(const std::string& name) const;

  /// Numeric view of one column; throws ParseError naming row/column on bad cells.
  std::vector<double> numeric_column(const std::string& name) const;
};

Table parse(const std::string& text, char delim = ',');
Table read_file(const std::string& path, char delim = ',');

/// Shortest representation that round-trips the double exactly.
std::string format_double(double v);

std::string to_string(const Table& t, char delim = ',');
void write_file(const Table& t, const std::string& path, char delim = ',');

double parse_double(const std::string& cell, const std::string& context);

}  // namespace wrist::csv
