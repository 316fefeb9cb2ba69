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

#ifndef R1D_TESTS_TEST_UTIL_H_
#define R1D_TESTS_TEST_UTIL_H_

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "r1d/matrix.h"

namespace r1d::testing {

// Two near-rank-one 2x2 blocks with a faint bridge from row 0 into the
// second block.
inline NonnegMatrix entangled_4x4() {
  Eigen::MatrixXd a(4, 4);
  a << 0.99, 0.99, 0.02, 0.02,  //
      1.01, 1.01, 0.00, 0.00,   //
      0.00, 0.00, 1.00, 1.00,   //
      0.00, 0.00, 1.00, 1.00;
  return NonnegMatrix(a);
}

inline Eigen::MatrixXd uniform_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = unif(rng);
  }
  return a;
}

inline Eigen::MatrixXd gaussian_matrix(Eigen::Index m, Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(m, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < m; ++i) a(i, j) = normal(rng);
  }
  return a;
}

// Fresh empty directory under the system temp dir, removed by the destructor.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("r1d_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace r1d::testing

#endif  // R1D_TESTS_TEST_UTIL_H_
