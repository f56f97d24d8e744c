#ifndef NEGTYPE_IO_HPP
#define NEGTYPE_IO_HPP

#include <charconv>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "negtype/error.hpp"
#include "negtype/space.hpp"

namespace negtype {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace detail

/// n rows of n comma-separated decimals. A first row whose first token is
/// not numeric is taken as a header of point labels.
inline FiniteSemiMetricSpace read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = detail::trim(line);
    if (t.empty()) continue;
    const auto cells = detail::split(t, ',');
    double first = 0.0;
    if (rows.empty() && labels.empty() && !detail::parse_double(cells.front(), first)) {
      for (auto c : cells) labels.emplace_back(detail::trim(c));
      continue;
    }
    std::vector<double> row;
    for (auto c : cells) {
      double v = 0.0;
      if (!detail::parse_double(c, v))
        throw Error(ErrorKind::ParseError,
                    "line " + std::to_string(line_no) + ": '" + std::string(detail::trim(c)) + "' is not a number");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::TooSmall, "empty matrix");
  const std::size_t n = rows.size();
  Matrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorKind::ParseError, "row " + std::to_string(i) + " has " +
                                                                    std::to_string(rows[i].size()) + " entries, expected " +
                                                                    std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  }
  if (!labels.empty() && labels.size() != n) throw Error(ErrorKind::ParseError, "header has wrong number of labels");
  return FiniteSemiMetricSpace::from_matrix(std::move(m), std::move(labels));
}

inline FiniteSemiMetricSpace read_matrix_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return read_matrix_csv(in);
}

inline void write_matrix_csv(std::ostream& out, const FiniteSemiMetricSpace& x) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  if (!x.labels().empty()) {
    for (std::size_t i = 0; i < x.size(); ++i) out << (i ? "," : "") << x.labels()[i];
    out << '\n';
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < x.size(); ++j) out << (j ? "," : "") << x(i, j);
    out << '\n';
  }
  out.precision(old_precision);
}

/// One "u v weight" triple per line, whitespace separated; '#' starts a comment.
inline std::vector<TreeEdge> read_tree_edges(std::istream& in) {
  std::vector<TreeEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (detail::trim(line).empty()) continue;
    std::istringstream ls(line);
    long long u = -1;
    long long v = -1;
    double w = 0.0;
    std::string extra;
    if (!(ls >> u >> v >> w) || (ls >> extra) || u < 0 || v < 0)
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 'u v weight'");
    edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v), w});
  }
  validate_tree(edges);
  return edges;
}

inline std::vector<TreeEdge> read_tree_edges_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  return read_tree_edges(in);
}

inline void write_tree_edges(std::ostream& out, std::span<const TreeEdge> edges) {
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (const auto& e : edges) out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  out.precision(old_precision);
}

}  // namespace negtype

#endif  // NEGTYPE_IO_HPP
