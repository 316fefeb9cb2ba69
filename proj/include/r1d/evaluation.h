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

#ifndef R1D_EVALUATION_H_
#define R1D_EVALUATION_H_

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

#include "r1d/factorization.h"
#include "r1d/generators.h"
#include "r1d/index_set.h"
#include "r1d/matrix.h"
#include "r1d/spectral.h"

namespace r1d {

// Planted structure: block k is row_sets[k] x col_sets[k]. For a corpus these
// are (T_k, D_k); for a bitmap database (feature pixels, images using it).
struct GroundTruth {
  std::vector<IndexSet> row_sets;
  std::vector<IndexSet> col_sets;

  static GroundTruth from_corpus(const Corpus& corpus);
  static GroundTruth from_bitmaps(const BitmapDatabase& db);
  int num_blocks() const { return static_cast<int>(row_sets.size()); }
  // Throws InvalidParameter when the sets do not fit an m x n matrix.
  void validate(Index rows, Index cols) const;
};

// Mass of A on (M x N) symmetric-difference (T x D), divided by its mass on
// M x N. Throws DegenerateInput when A(M, N) is all zero.
double symdiff_ratio(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                     const IndexSet& block_rows, const IndexSet& block_cols);

// Sum of A(i,j)^2 over (M cap T) x (N cap D).
double overlap_mass(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                    const IndexSet& block_rows, const IndexSet& block_cols);

// Fraction of assigned columns whose cluster's best-matching class contains
// them: sum over clusters of max_k |cluster cap class_k| / #assigned.
// cluster_of[j] < 0 marks an unassigned column. nullopt when none is assigned.
std::optional<double> purity(std::span<const int> cluster_of,
                             const std::vector<IndexSet>& classes);

struct FactorMatch {
  int factor = 0;
  int block = 0;               // argmax of overlap mass, smallest index on ties
  double overlap = 0.0;        // mass on the matched block's overlap
  double symdiff = 0.0;        // symdiff_ratio against the matched block
  Index cluster_size = 0;      // columns assigned to this factor
  std::optional<double> cluster_purity;
};

struct BlockScore {
  int block = 0;
  Index predicted = 0;  // columns whose factor matched this block
  Index relevant = 0;   // |col_sets[block]|
  Index correct = 0;
  std::optional<double> precision;
  std::optional<double> recall;
};

struct BaselineReport {
  Eigen::VectorXd sigma;
  std::optional<double> purity;
};

struct RecoveryReport {
  std::vector<FactorMatch> factors;
  std::vector<int> cluster_of;  // per column: factor with the largest H entry, -1 if none
  Index assigned = 0;
  std::optional<double> purity;              // over assigned columns
  std::optional<double> mean_factor_purity;  // mean of per-factor cluster purity
  std::vector<BlockScore> blocks;
  bool degenerate = false;  // achieved_rank == 0 or nothing assigned
  std::optional<BaselineReport> baseline;
};

// Matches each factor to the block it overlaps most and scores the induced
// column clustering. A report with degenerate set is returned when no factor
// was extracted.
RecoveryReport match_and_score(const NonnegMatrix& a, const NmfFactors& factors,
                               const GroundTruth& truth);

// Column clustering from a greedy SVD: column j goes to argmax_mu
// sigma_mu |V(j, mu)|.
BaselineReport svd_baseline(const NonnegMatrix& a, Index k, const GroundTruth& truth,
                            const PowerOptions& options = {});

struct SubmatrixVector {
  IndexSet rows;
  IndexSet cols;
  Eigen::VectorXd v;             // length n, dominant right singular vector of A(M,N)
  std::vector<double> cosines;   // against each truth column-block indicator
};

struct EntanglementReport {
  Eigen::VectorXd v;              // dominant right singular vector of A, sum(v) >= 0
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  bool degenerate = false;        // sigma1 == sigma2 to 1e-9 relative
  double uniform_cosine = 0.0;    // cosine with (1, ..., 1) / sqrt(n)
  std::vector<double> cosines;    // against each truth column-block indicator
  std::vector<SubmatrixVector> factors;
};

// Dominant right singular vectors of A and of every submatrix R1D selects
// with rank k, with cosines to block indicators when truth is given.
EntanglementReport svd_entanglement_report(const NonnegMatrix& a, Index k,
                                           const R1dParams& params = {},
                                           const GroundTruth* truth = nullptr);

}  // namespace r1d

#endif  // R1D_EVALUATION_H_
