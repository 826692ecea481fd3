#include "wrist/csv.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace wrist::csv {

std::size_t Table::column_index(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) {
    throw ParseError("missing column '" + name + "'");
  }
  return static_cast<std::size_t>(it - header.begin());
}

bool Table::has_column(const std::string& name) const {
  return std::find(header.begin(), header.end(), name) != header.end();
}

std::vector<double> Table::numeric_column(const std::string& name) const {
  const std::size_t col = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.push_back(parse_double(rows[r][col],
                               "row " + std::to_string(r + 2) + ", column '" + name + "'"));
  }
  return out;
}

static std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

Table parse(const std::string& text, char delim) {
  Table t;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string stripped = trim(line);
    if (stripped.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, delim)) fields.push_back(trim(field));
    if (!line.empty() && line.back() == delim) fields.push_back("");
    if (t.header.empty()) {
      t.header = fields;
    } else {
      if (fields.size() != t.header.size()) {
        throw ParseError("line " + std::to_string(lineno) + ": expected " +
                         std::to_string(t.header.size()) + " fields, got " +
                         std::to_string(fields.size()));
      }
      t.rows.push_back(std::move(fields));
    }
  }
  if (t.header.empty()) throw ParseError("empty table: no header row");
  return t;
}

Table read_file(const std::string& path, char delim) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str(), delim);
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_string(const Table& t, char delim) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (i) out << delim;
    out << t.header[i];
  }
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << delim;
      out << row[i];
    }
    out << '\n';
  }
  return out.str();
}

void write_file(const Table& t, const std::string& path, char delim) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + path + "'");
  f << to_string(t, delim);
}

double parse_double(const std::string& cell, const std::string& context) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  double v = 0.0;
  auto res = std::from_chars(begin, end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParseError("bad numeric value '" + cell + "' at " + context);
  }
  return v;
}

}  // namespace wrist::csv
