// Copyright (c) 2026 The slr Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#include "slr/csv_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace slr {

namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void parse_failure(const std::string& source, std::size_t line, const std::string& what) {
  throw IoError(source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

Matrix parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::size_t stop = end == std::string_view::npos ? text.size() : end;
    lines.push_back(text.substr(start, stop - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw IoError(source + ": empty matrix file");

  std::vector<double> values;
  std::size_t cols = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    const std::size_t line_no = li + 1;
    std::string_view line = lines[li];
    if (trim(line).empty()) parse_failure(source, line_no, "blank line inside matrix");
    std::size_t count = 0;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', pos);
      std::string_view field = trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
      if (!field.empty() && field.front() == '+') field.remove_prefix(1);
      double x = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), x);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        parse_failure(source, line_no, "field " + std::to_string(count + 1) + " is not a number");
      }
      if (!std::isfinite(x)) parse_failure(source, line_no, "non-finite value in field " + std::to_string(count + 1));
      values.push_back(x);
      ++count;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (li == 0) {
      cols = count;
    } else if (count != cols) {
      parse_failure(source, line_no,
                    "ragged row: " + std::to_string(count) + " fields, expected " + std::to_string(cols));
    }
  }
  return Matrix(lines.size(), cols, std::move(values));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path.string());
  return buf.str();
}

Matrix read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path), path.string()); }

std::string format_double(double x) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw InternalError("format_double: to_chars failed");
  return std::string(buf.data(), ptr);
}

std::string format_csv(const Matrix& M) {
  std::string out;
  out.reserve(M.size() * 12);
  for (std::size_t i = 0; i < M.rows(); ++i) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (j > 0) out.push_back(',');
      out += format_double(M(i, j));
    }
    out.push_back('\n');
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("error writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move " + tmp.string() + " into place at " + path.string());
  }
}

void write_csv(const std::filesystem::path& path, const Matrix& M) { write_file_atomic(path, format_csv(M)); }

}  // namespace slr
