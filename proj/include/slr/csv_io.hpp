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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "slr/error.hpp"
#include "slr/matrix.hpp"

namespace slr {

/// File could not be read or written, or its contents do not parse.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Headerless CSV: one matrix row per line, comma-separated decimals.
/// Throws IoError naming the 1-based line on ragged rows, bad numbers or
/// non-finite values.
Matrix parse_csv(std::string_view text, const std::string& source = "<memory>");
Matrix read_csv(const std::filesystem::path& path);

/// Shortest decimal that round-trips each entry exactly.
std::string format_csv(const Matrix& M);
void write_csv(const std::filesystem::path& path, const Matrix& M);

/// Writes via a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

/// Shortest round-trip decimal for a double.
std::string format_double(double x);

}  // namespace slr
