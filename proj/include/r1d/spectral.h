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

#ifndef R1D_SPECTRAL_H_
#define R1D_SPECTRAL_H_

#include <Eigen/Dense>
#include <cstdint>

#include "r1d/errors.h"
#include "r1d/matrix.h"

namespace r1d {

struct SingularTriple {
  Eigen::VectorXd u;
  double sigma = 0.0;
  Eigen::VectorXd v;
  int iterations = 0;
};

// Power iteration did not reach the residual tolerance. Carries the last
// iterate so callers can still inspect it.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, SingularTriple last)
      : Error(what), last_(std::move(last)) {}
  const SingularTriple& last_iterate() const { return last_; }

 private:
  SingularTriple last_;
};

struct SvdResult {
  Eigen::MatrixXd U;      // m x k, orthonormal columns
  Eigen::VectorXd sigma;  // k values, non-increasing
  Eigen::MatrixXd V;      // n x k, orthonormal columns
};

struct PowerOptions {
  double tol = 1e-10;
  int max_iter = 1000;
  std::uint64_t seed = 0x5eed;
};

// Dominant singular triple by alternating v = A^T u / |A^T u|, u = A v / |A v|
// from a seeded Gaussian start. Stops once both |A v - sigma u| and
// |A^T u - sigma v| are at most tol * sigma. (u, v) is flipped jointly so that
// sum(u) >= 0.
//
// Throws DomainError for a zero or non-finite matrix, ConvergenceError when
// max_iter is exhausted. A tie sigma_1 == sigma_2 is the usual cause.
SingularTriple power_triple(const Eigen::MatrixXd& a, const PowerOptions& options = {});

// Greedy deflation: k rounds of power_triple followed by A -= sigma u v^T.
// Each round draws its start vector from one generator seeded once per call.
SvdResult jordan_svd(const Eigen::MatrixXd& a, Index k, const PowerOptions& options = {});

// Full thin SVD through a direct two-sided Jacobi decomposition.
// Throws DomainError on non-finite input.
SvdResult dense_svd(const Eigen::MatrixXd& a);

// All min(m, n) singular values of a, non-increasing.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);

inline Eigen::MatrixXd to_eigen(const NonnegMatrix& a) { return a.to_dense(); }

}  // namespace r1d

#endif  // R1D_SPECTRAL_H_
