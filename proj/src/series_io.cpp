#include "hdwn/series_io.hpp"

#include "hdwn/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace hdwn {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

[[noreturn]] void fail(std::size_t row, std::size_t col, const std::string& what) {
  std::string where = "row " + std::to_string(row);
  if (col > 0) where += ", column " + std::to_string(col);
  throw Error(ErrorCode::parse, where + ": " + what);
}

}  // namespace

SeriesMatrix parse_series_csv(std::istream& in, bool has_header) {
  std::vector<std::vector<double>> rows;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::size_t blank_at = 0;
  std::string line;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) {
      if (blank_at == 0) blank_at = line_no;
      continue;
    }
    if (blank_at != 0) fail(blank_at, 0, "blank line inside the data");
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const std::vector<std::string_view> cells = split(view);
    if (rows.empty()) {
      width = cells.size();
    } else if (cells.size() != width) {
      fail(line_no, 0, "ragged row: expected " + std::to_string(width) + " columns, found " +
                           std::to_string(cells.size()));
    }
    std::vector<double> values(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      const std::string_view cell = cells[c];
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (!cell.empty() && *first == '+') ++first;
      const auto [ptr, ec] = std::from_chars(first, last, values[c]);
      if (cell.empty() || ec != std::errc() || ptr != last) {
        fail(line_no, c + 1, "cannot parse '" + std::string(cell) + "' as a number");
      }
      if (!std::isfinite(values[c])) {
        fail(line_no, c + 1, "non-finite value '" + std::string(cell) + "'");
      }
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw Error(ErrorCode::parse, "series file has no data rows");

  Matrix x(static_cast<Eigen::Index>(width), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t t = 0; t < rows.size(); ++t) {
    for (std::size_t i = 0; i < width; ++i) x(i, t) = rows[t][i];
  }
  return SeriesMatrix(std::move(x));
}

SeriesMatrix read_series_csv(const std::filesystem::path& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  return parse_series_csv(in, has_header);
}

void write_series_csv(std::ostream& out, const SeriesMatrix& x, bool header) {
  const Matrix& v = x.values();
  if (header) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) out << (i ? "," : "") << 'x' << (i + 1);
    out << '\n';
  }
  char buf[32];
  for (Eigen::Index t = 0; t < v.cols(); ++t) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v(i, t));
      if (i) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const SeriesMatrix& x, bool header) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  write_series_csv(out, x, header);
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

}  // namespace hdwn
