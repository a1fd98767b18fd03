#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include "spartan/matrix.hpp"

namespace spartan {

// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline bool parse_double(const std::string& token, double& out) {
  const char* begin = token.data();
  const char* end = begin + token.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
  if (begin == end) return false;
  const auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc{} && res.ptr == end && std::isfinite(out);
}

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace detail

// Numeric CSV ingestion. A header row is tolerated (first row sniffed for
// non-numeric tokens); NaN/Inf and ragged rows are rejected with the
// offending line number.
inline Matrix read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool first_data_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tokens = detail::split_line(line);
    std::vector<double> row(tokens.size());
    bool numeric = true;
    for (std::size_t j = 0; j < tokens.size(); ++j)
      if (!detail::parse_double(tokens[j], row[j])) {
        numeric = false;
        break;
      }
    if (!numeric) {
      if (first_data_row) continue;  // header row
      throw DataError(path.string() + ": non-numeric cell at line " +
                      std::to_string(line_no));
    }
    if (first_data_row) {
      width = row.size();
      first_data_row = false;
    } else if (row.size() != width) {
      throw DataError(path.string() + ": ragged row at line " +
                      std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError(path.string() + ": no numeric rows");
  Matrix m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

// Writes "x1,...,xd" header plus round-trip-precision values.
inline void write_csv(const std::filesystem::path& path, const Matrix& m,
                      bool header = true) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  if (header) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      out << (j ? ",x" : "x") << (j + 1);
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw DataError("write failed: " + path.string());
}

inline std::vector<int> read_index_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<int> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "index") continue;
    int value = 0;
    const auto res = std::from_chars(line.data(), line.data() + line.size(), value);
    if (res.ec != std::errc{} || res.ptr != line.data() + line.size() || value < 0)
      throw DataError(path.string() + ": bad index at line " + std::to_string(line_no));
    out.push_back(value);
  }
  if (out.empty()) throw DataError(path.string() + ": no indices");
  return out;
}

inline void write_index_csv(const std::filesystem::path& path,
                            const std::vector<int>& indices) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << "index\n";
  for (int i : indices) out << i << '\n';
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace spartan
