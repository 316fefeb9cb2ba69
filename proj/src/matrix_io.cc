// Copyright 2026 The R1D Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "r1d/matrix_io.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "r1d/errors.h"

namespace r1d {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size() && std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    const std::size_t start = k;
    while (k < s.size() && !std::isspace(static_cast<unsigned char>(s[k]))) ++k;
    if (k > start) out.push_back(s.substr(start, k - start));
  }
  return out;
}

double parse_real(std::string_view token, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || token.empty()) {
    throw ParseError("expected a real number, got '" + std::string(token) + "'", line);
  }
  return value;
}

Index parse_count(std::string_view token, std::size_t line) {
  Index value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || token.empty()) {
    throw ParseError("expected an integer, got '" + std::string(token) + "'", line);
  }
  return value;
}

// Turns shape and duplicate-coordinate errors into ParseError with the line.
template <class F>
auto with_line(std::size_t line, F&& f) {
  try {
    return f();
  } catch (const InvalidParameter& e) {
    throw ParseError(e.what(), line);
  } catch (const IndexError& e) {
    throw ParseError(e.what(), line);
  }
}

NonnegMatrix read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty MatrixMarket file", 1);
  ++line_no;
  std::string lowered(trim(line));
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto header = split_ws(lowered);
  if (header.size() != 5 || header[0] != "%%matrixmarket" || header[1] != "matrix") {
    throw ParseError("missing '%%MatrixMarket matrix ...' header", line_no);
  }
  const bool coordinate = header[2] == "coordinate";
  if (!coordinate && header[2] != "array") {
    throw ParseError("unsupported layout '" + std::string(header[2]) + "'", line_no);
  }
  if (header[3] != "real" && header[3] != "integer") {
    throw ParseError("unsupported field '" + std::string(header[3]) + "'", line_no);
  }
  if (header[4] != "general") {
    throw ParseError("unsupported symmetry '" + std::string(header[4]) + "'", line_no);
  }

  auto next_content_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      const auto t = trim(out);
      if (t.empty() || t.front() == '%') continue;
      return true;
    }
    return false;
  };

  if (!next_content_line(line)) throw ParseError("missing size line", line_no + 1);
  const auto size_tokens = split_ws(line);
  if (size_tokens.size() != (coordinate ? 3U : 2U)) {
    throw ParseError("malformed size line", line_no);
  }
  const Index rows = parse_count(size_tokens[0], line_no);
  const Index cols = parse_count(size_tokens[1], line_no);
  if (rows <= 0 || cols <= 0) throw ParseError("matrix dimensions must be positive", line_no);

  if (coordinate) {
    const Index nnz = parse_count(size_tokens[2], line_no);
    if (nnz < 0 || nnz > rows * cols) throw ParseError("impossible entry count", line_no);
    std::vector<Triplet> triplets;
    triplets.reserve(static_cast<std::size_t>(nnz));
    for (Index k = 0; k < nnz; ++k) {
      if (!next_content_line(line)) {
        throw ParseError("expected " + std::to_string(nnz) + " entries, found " +
                             std::to_string(k),
                         line_no + 1);
      }
      const auto tokens = split_ws(line);
      if (tokens.size() != 3) throw ParseError("expected 'row col value'", line_no);
      const Index i = parse_count(tokens[0], line_no) - 1;
      const Index j = parse_count(tokens[1], line_no) - 1;
      const double value = parse_real(tokens[2], line_no);
      if (i < 0 || i >= rows || j < 0 || j >= cols) {
        throw ParseError("coordinate out of range", line_no);
      }
      if (value < 0.0 || !std::isfinite(value)) {
        // Surface the coordinate through the matrix's own check.
        NonnegMatrix::from_triplets(rows, cols, {{i, j, value}});
      }
      triplets.push_back({i, j, value});
    }
    if (next_content_line(line)) throw ParseError("trailing data after the last entry", line_no);
    return with_line(line_no, [&] { return NonnegMatrix::from_triplets(rows, cols, triplets); });
  }

  NonnegMatrix::Dense dense(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      if (!next_content_line(line)) throw ParseError("too few array entries", line_no + 1);
      dense(i, j) = parse_real(line, line_no);
    }
  }
  if (next_content_line(line)) throw ParseError("trailing data after the last entry", line_no);
  return NonnegMatrix(std::move(dense));
}

NonnegMatrix read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t width = 0;
  std::size_t blank_run_start = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      if (blank_run_start == 0) blank_run_start = line_no;
      continue;
    }
    if (blank_run_start != 0) throw ParseError("blank line inside CSV data", blank_run_start);
    std::vector<double> values;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      values.push_back(parse_real(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (rows.empty()) {
      width = values.size();
    } else if (values.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(values.size()),
                       line_no);
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ParseError("empty CSV file", 1);
  NonnegMatrix::Dense dense(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      dense(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return NonnegMatrix(std::move(dense));
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

std::optional<MatrixFormat> parse_format(std::string_view name) {
  if (name == "matrix-market" || name == "mtx") return MatrixFormat::kMatrixMarket;
  if (name == "csv") return MatrixFormat::kCsv;
  return std::nullopt;
}

std::optional<MatrixFormat> format_from_extension(const std::filesystem::path& path) {
  const auto ext = path.extension();
  if (ext == ".mtx") return MatrixFormat::kMatrixMarket;
  if (ext == ".csv") return MatrixFormat::kCsv;
  return std::nullopt;
}

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

NonnegMatrix read_matrix(std::istream& in, MatrixFormat format) {
  return format == MatrixFormat::kMatrixMarket ? read_matrix_market(in) : read_csv(in);
}

NonnegMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format) {
  auto in = open_for_read(path);
  return read_matrix(in, format);
}

NonnegMatrix read_matrix(const std::filesystem::path& path) {
  const auto format = format_from_extension(path);
  if (!format) {
    throw InvalidParameter("cannot infer matrix format from '" + path.string() +
                           "'; use .mtx or .csv");
  }
  return read_matrix(path, *format);
}

void write_matrix(const NonnegMatrix& a, std::ostream& out, MatrixFormat format) {
  if (format == MatrixFormat::kMatrixMarket) {
    const auto entries = a.triplets();
    out << "%%MatrixMarket matrix coordinate real general\n"
        << a.rows() << ' ' << a.cols() << ' ' << entries.size() << '\n';
    for (const auto& t : entries) {
      out << t.row + 1 << ' ' << t.col + 1 << ' ' << format_double(t.value) << '\n';
    }
  } else {
    const auto dense = a.to_dense();
    for (Index i = 0; i < dense.rows(); ++i) {
      for (Index j = 0; j < dense.cols(); ++j) {
        if (j) out << ',';
        out << format_double(dense(i, j));
      }
      out << '\n';
    }
  }
  if (!out) throw IoError("write failed");
}

void write_matrix(const NonnegMatrix& a, const std::filesystem::path& path, MatrixFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_matrix(a, out, format);
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void write_matrix(const NonnegMatrix& a, const std::filesystem::path& path) {
  const auto format = format_from_extension(path);
  if (!format) {
    throw InvalidParameter("cannot infer matrix format from '" + path.string() +
                           "'; use .mtx or .csv");
  }
  write_matrix(a, path, *format);
}

}  // namespace r1d
