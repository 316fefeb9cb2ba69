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

#ifndef R1D_FACTORIZATION_H_
#define R1D_FACTORIZATION_H_

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "r1d/index_set.h"
#include "r1d/matrix.h"

namespace r1d {

// Parameters of the rank-one downdate factorization.
//
// gamma weighs the rank-one residual against the captured mass and must
// exceed 1; gamma_bar() = gamma / (gamma - 1) is always derived from it.
// eta_bar sets the size penalty as a fraction of the seed column's score;
// zero disables it.
struct R1dParams {
  double gamma = 4.0;
  double eta_bar = 1.0 / 20.0;
  bool monotone = false;
  int max_inner_iters = 100;
  double stagnation_tol = 1e-10;
  std::uint64_t seed = 0;  // reserved; the heuristic is deterministic
  bool record_history = false;

  double gamma_bar() const { return gamma / (gamma - 1.0); }
  // Throws InvalidParameter when a field is out of range.
  void validate() const;
};

// State of the inner loop after one full row/column sweep.
struct Iterate {
  IndexSet rows;
  IndexSet cols;
  Eigen::VectorXd u;  // length m, zero outside rows
  Eigen::VectorXd v;  // length n, zero outside cols
  double sigma = 0.0;
};

// One extracted factor: A(M, N) ~ u(M) sigma v(N)^T.
struct RankOneSubmatrix {
  IndexSet rows;      // M
  IndexSet cols;      // N
  Eigen::VectorXd u;  // unit on M, exactly zero elsewhere, entrywise >= 0
  Eigen::VectorXd v;  // unit on N, exactly zero elsewhere, entrywise >= 0
  double sigma = 0.0;
  int inner_iters = 0;
  double objective = 0.0;            // objective_full at the returned iterate
  double penalized_objective = 0.0;  // objective - rho |M| |N|
  double rho = 0.0;
  Index seed_column = 0;
  bool converged = false;
  // An update produced an empty M or N; the previous iterate was returned.
  bool empty_set_event = false;
  // objective_full after every sweep, starting with the seed column.
  std::vector<double> objective_trace;
  std::vector<double> penalized_trace;
  // Every iterate, starting with the seed column; only with record_history.
  std::vector<Iterate> history;
};

struct NmfFactors {
  Eigen::MatrixXd W;  // m x k
  Eigen::MatrixXd H;  // n x k
  std::vector<RankOneSubmatrix> factors;
  Index achieved_rank = 0;
  // Working copy after the last downdate: A with every extracted block zeroed.
  NonnegMatrix residual;
};

// |A(M,N)|_F^2 - gamma |A(M,N) - u(M) sigma v(N)^T|_F^2, evaluated entry by
// entry. u and v are full-length (m and n) vectors.
//
// Throws ContractViolation when u or v is not unit on its set (beyond 1e-8)
// or is nonzero outside it, InvalidParameter when gamma <= 1.
double objective_full(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& v, double sigma,
                      double gamma);

// sigma_1^2 - (gamma - 1)(sigma_2^2 + ... + sigma_p^2) of A(M, N), from a full
// singular value decomposition. Throws DomainError on an empty set.
double objective_spectral(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                          double gamma);
// Same objective for an already extracted block.
double objective_spectral(const Eigen::MatrixXd& block, double gamma);

// gamma_bar (A(i,N) v(N))^2 - |A(i,N)|^2 - rho_bar |N|. Positive means
// adding row i at fixed (N, v) raises the penalized objective.
double row_score(const NonnegMatrix& a, Index row, const IndexSet& cols,
                 const Eigen::VectorXd& v, double gamma_bar, double rho_bar);

// Column mirror of row_score: gamma_bar (A(M,j)^T u(M))^2 - |A(M,j)|^2 -
// rho_bar |M|.
double col_score(const NonnegMatrix& a, Index col, const IndexSet& rows,
                 const Eigen::VectorXd& u, double gamma_bar, double rho_bar);

// Alternating heuristic for a near rank-one submatrix, seeded with the
// largest-norm column (smallest index on ties). Throws DomainError when A has
// no positive entry.
RankOneSubmatrix approx_rank_one_submatrix(const NonnegMatrix& a, const R1dParams& params = {});

// Greedy rank-one downdating: k rounds of extract, record W(M,mu) = u(M) and
// H(N,mu) = sigma v(N), then zero A(M, N) in a private working copy. Stops
// early once the working copy has no positive entry. Throws InvalidParameter
// when k is outside [0, min(m, n)].
NmfFactors r1d(const NonnegMatrix& a, Index k, const R1dParams& params = {});

}  // namespace r1d

#endif  // R1D_FACTORIZATION_H_
