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

#ifndef R1D_ORACLE_H_
#define R1D_ORACLE_H_

#include <cstdint>

#include "r1d/index_set.h"
#include "r1d/matrix.h"

namespace r1d {

inline constexpr Index kDefaultSizeCap = 20;

// Exhaustive maximizer of the spectral objective.
struct OracleResult {
  IndexSet best_rows;
  IndexSet best_cols;
  double best_value = 0.0;
  // Pairs whose value is within 1e-9 (relative, floor 1) of best_value.
  std::int64_t ties = 0;
  std::int64_t pairs_examined = 0;
};

// Evaluates the spectral objective on all (2^m - 1)(2^n - 1) nonempty pairs.
// Among near-optimal pairs the lexicographically smallest (M, then N) wins.
// Throws SizeCapExceeded when m + n > size_cap.
OracleResult brute_force_optimum(const NonnegMatrix& a, double gamma,
                                 Index size_cap = kDefaultSizeCap);

struct Biclique {
  IndexSet rows;
  IndexSet cols;
  std::int64_t edges = 0;
};

// Largest all-ones submatrix |M| x |N| of a 0/1 matrix, by enumerating row
// subsets and taking every column that is one on all of them. Independent of
// any singular value computation. Throws DomainError on non-binary entries,
// SizeCapExceeded when m + n > size_cap.
Biclique max_biclique(const NonnegMatrix& g, Index size_cap = kDefaultSizeCap);

}  // namespace r1d

#endif  // R1D_ORACLE_H_
