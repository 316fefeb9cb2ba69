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

#include <gtest/gtest.h>

#include <cstring>
#include <limits>
#include <sstream>

#include "r1d/errors.h"
#include "test_util.h"

namespace r1d {
namespace {

using ::r1d::testing::TempDir;
using ::r1d::testing::uniform_matrix;

NonnegMatrix read_string(const std::string& text, MatrixFormat format) {
  std::istringstream in(text);
  return read_matrix(in, format);
}

std::string write_string(const NonnegMatrix& a, MatrixFormat format) {
  std::ostringstream out;
  write_matrix(a, out, format);
  return out.str();
}

bool bit_equal(const NonnegMatrix& a, const NonnegMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const Eigen::MatrixXd x = a.to_dense();
  const Eigen::MatrixXd y = b.to_dense();
  return std::memcmp(x.data(), y.data(), sizeof(double) * x.size()) == 0;
}

TEST(MatrixIoTest, ReadsSingleEntryCoordinateFile) {
  const NonnegMatrix a = read_string(
      "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 3.5\n", MatrixFormat::kMatrixMarket);
  EXPECT_EQ(a.rows(), 2);
  EXPECT_EQ(a.cols(), 2);
  EXPECT_EQ(a.nonzeros(), 1);
  EXPECT_EQ(a(0, 0), 3.5);
  EXPECT_TRUE(a.is_sparse());
}

TEST(MatrixIoTest, ReadsCsvIdentity) {
  const NonnegMatrix a = read_string("1,0\n0,1", MatrixFormat::kCsv);
  EXPECT_EQ(a, NonnegMatrix(Eigen::MatrixXd::Identity(2, 2)));
  EXPECT_FALSE(a.is_sparse());
}

TEST(MatrixIoTest, ReadsArrayLayoutColumnMajor) {
  const NonnegMatrix a = read_string(
      "%%MatrixMarket matrix array real general\n% comment\n2 2\n1\n2\n3\n4\n",
      MatrixFormat::kMatrixMarket);
  EXPECT_EQ(a(1, 0), 2.0);
  EXPECT_EQ(a(0, 1), 3.0);
}

TEST(MatrixIoTest, NegativeEntryIsDomainError) {
  EXPECT_THROW(read_string("1,-1\n", MatrixFormat::kCsv), DomainError);
  try {
    read_string("%%MatrixMarket matrix coordinate real general\n3 3 1\n2 3 -1\n",
                MatrixFormat::kMatrixMarket);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("(2, 3)"), std::string::npos) << e.what();
  }
}

TEST(MatrixIoTest, MalformedInputReportsLine) {
  try {
    read_string("1,0\n0,x\n", MatrixFormat::kCsv);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    read_string("1,0\n0\n", MatrixFormat::kCsv);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    read_string("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n1 1 2\n",
                MatrixFormat::kMatrixMarket);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
  }
  EXPECT_THROW(read_string("2 2 1\n1 1 1\n", MatrixFormat::kMatrixMarket), ParseError);
  EXPECT_THROW(read_string("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n",
                           MatrixFormat::kMatrixMarket),
               ParseError);
}

TEST(MatrixIoTest, WritesCsvIdentity) {
  EXPECT_EQ(write_string(NonnegMatrix(Eigen::MatrixXd::Identity(2, 2)), MatrixFormat::kCsv),
            "1,0\n0,1\n");
}

TEST(MatrixIoTest, WritesEmptySparseAsHeaderOnly) {
  EXPECT_EQ(write_string(NonnegMatrix::zeros(3, 2), MatrixFormat::kMatrixMarket),
            "%%MatrixMarket matrix coordinate real general\n3 2 0\n");
}

TEST(MatrixIoTest, RoundTripIsBitExact) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Eigen::MatrixXd d = uniform_matrix(3, 2, seed);
    d(0, 0) = 0.0;
    d(1, 1) *= 1e-300;
    d(2, 0) = 1.0 / 3.0;
    const NonnegMatrix a(d);
    for (MatrixFormat f : {MatrixFormat::kMatrixMarket, MatrixFormat::kCsv}) {
      const NonnegMatrix b = read_string(write_string(a, f), f);
      EXPECT_TRUE(bit_equal(a, b)) << "seed " << seed;
    }
  }
}

TEST(MatrixIoTest, ExtremeValuesRoundTrip) {
  for (double x : {std::numeric_limits<double>::denorm_min(), std::numeric_limits<double>::max(),
                   0.1, 1e22, 5e-324}) {
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
}

TEST(MatrixIoTest, FileRoundTripAndFormatInference) {
  TempDir dir("io");
  const NonnegMatrix a(uniform_matrix(4, 5, 9));
  write_matrix(a, dir / "a.mtx");
  write_matrix(a, dir / "a.csv");
  EXPECT_TRUE(bit_equal(read_matrix(dir / "a.mtx"), a));
  EXPECT_TRUE(bit_equal(read_matrix(dir / "a.csv"), a));
  EXPECT_THROW(read_matrix(dir / "a.txt"), InvalidParameter);
  EXPECT_THROW(read_matrix(dir / "missing.mtx"), IoError);
  EXPECT_THROW(write_matrix(a, dir / "no" / "such" / "dir.mtx"), IoError);
  EXPECT_EQ(parse_format("csv"), MatrixFormat::kCsv);
  EXPECT_EQ(parse_format("matrix-market"), MatrixFormat::kMatrixMarket);
  EXPECT_FALSE(parse_format("json"));
}

}  // namespace
}  // namespace r1d
