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

#ifndef R1D_MATRIX_IO_H_
#define R1D_MATRIX_IO_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "r1d/matrix.h"

namespace r1d {

// MatrixMarket: `%%MatrixMarket matrix coordinate real general`, optional %
// comments, `m n nnz`, then one-based `i j value` lines. Reading also accepts
// the dense `array` variant. CSV: one row per line, comma separated.
//
// Values are written in shortest round-trip form, so reading a written file
// reproduces every entry bit-for-bit.
enum class MatrixFormat { kMatrixMarket, kCsv };

std::optional<MatrixFormat> parse_format(std::string_view name);
// .mtx -> MatrixMarket, .csv -> CSV, otherwise nullopt.
std::optional<MatrixFormat> format_from_extension(const std::filesystem::path& path);

// MatrixMarket yields sparse storage, CSV dense storage.
// Throws IoError, ParseError (with line number) or DomainError.
NonnegMatrix read_matrix(std::istream& in, MatrixFormat format);
NonnegMatrix read_matrix(const std::filesystem::path& path, MatrixFormat format);
// Picks the format from the extension; throws InvalidParameter if unknown.
NonnegMatrix read_matrix(const std::filesystem::path& path);

void write_matrix(const NonnegMatrix& a, std::ostream& out, MatrixFormat format);
void write_matrix(const NonnegMatrix& a, const std::filesystem::path& path, MatrixFormat format);
void write_matrix(const NonnegMatrix& a, const std::filesystem::path& path);

// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

}  // namespace r1d

#endif  // R1D_MATRIX_IO_H_
