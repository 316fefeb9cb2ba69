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

#include "r1d/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "r1d/errors.h"
#include "r1d/factorization.h"

namespace r1d {
namespace {

constexpr double kTieTol = 1e-9;

void check_size(const NonnegMatrix& a, Index size_cap) {
  const Index total = a.rows() + a.cols();
  if (total > size_cap || total > 62) {
    throw SizeCapExceeded("exhaustive search over a " + std::to_string(a.rows()) + " x " +
                          std::to_string(a.cols()) + " matrix visits about 2^" +
                          std::to_string(total) + " submatrices; the cap is m + n <= " +
                          std::to_string(size_cap));
  }
}

std::vector<Index> bits_of(std::uint64_t mask) {
  std::vector<Index> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

// Lexicographic order of the ascending index lists encoded by two masks.
bool lex_less(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  const int d = std::countr_zero(a ^ b);
  // The list holding d continues with d; the other continues with a larger
  // index or ends, and a list that ends first is the smaller one.
  if (a >> d & 1U) return (b >> d) != 0;
  return (a >> d) == 0;
}

bool pair_less(std::uint64_t ma, std::uint64_t na, std::uint64_t mb, std::uint64_t nb) {
  if (ma != mb) return lex_less(ma, mb);
  return lex_less(na, nb);
}

}  // namespace

OracleResult brute_force_optimum(const NonnegMatrix& a, double gamma, Index size_cap) {
  check_size(a, size_cap);
  if (!(gamma > 1.0)) throw InvalidParameter("gamma must be > 1");
  const Index m = a.rows();
  const Index n = a.cols();
  const Eigen::MatrixXd dense = a.to_dense();
  const std::uint64_t row_masks = (std::uint64_t{1} << m) - 1;
  const std::uint64_t col_masks = (std::uint64_t{1} << n) - 1;

  std::vector<double> values(static_cast<std::size_t>(row_masks * col_masks));
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::vector<Index>> col_lists(static_cast<std::size_t>(col_masks));
  for (std::uint64_t nm = 1; nm <= col_masks; ++nm) col_lists[nm - 1] = bits_of(nm);

  for (std::uint64_t mm = 1; mm <= row_masks; ++mm) {
    const std::vector<Index> rows = bits_of(mm);
    const Eigen::MatrixXd strip = dense(rows, Eigen::placeholders::all);
    for (std::uint64_t nm = 1; nm <= col_masks; ++nm) {
      const Eigen::MatrixXd block = strip(Eigen::placeholders::all, col_lists[nm - 1]);
      const double value = objective_spectral(block, gamma);
      values[(mm - 1) * col_masks + (nm - 1)] = value;
      best = std::max(best, value);
    }
  }

  const double cutoff = best - kTieTol * std::max(1.0, std::abs(best));
  OracleResult out;
  out.pairs_examined = static_cast<std::int64_t>(row_masks * col_masks);
  std::uint64_t best_m = 0;
  std::uint64_t best_n = 0;
  for (std::uint64_t mm = 1; mm <= row_masks; ++mm) {
    for (std::uint64_t nm = 1; nm <= col_masks; ++nm) {
      if (values[(mm - 1) * col_masks + (nm - 1)] < cutoff) continue;
      ++out.ties;
      if (best_m == 0 || pair_less(mm, nm, best_m, best_n)) {
        best_m = mm;
        best_n = nm;
      }
    }
  }
  out.best_rows = IndexSet::from_mask(best_m, m);
  out.best_cols = IndexSet::from_mask(best_n, n);
  out.best_value = values[(best_m - 1) * col_masks + (best_n - 1)];
  return out;
}

Biclique max_biclique(const NonnegMatrix& g, Index size_cap) {
  check_size(g, size_cap);
  const Index m = g.rows();
  const Index n = g.cols();
  // Row i as a bitmask over columns.
  std::vector<std::uint64_t> row_bits(static_cast<std::size_t>(m), 0);
  g.for_each_nonzero([&](Index i, Index j, double x) {
    if (x != 0.0 && x != 1.0) {
      throw DomainError("biclique input must be 0/1; entry (" + std::to_string(i + 1) + ", " +
                        std::to_string(j + 1) + ") is " + std::to_string(x));
    }
    if (x == 1.0) row_bits[static_cast<std::size_t>(i)] |= std::uint64_t{1} << j;
  });

  const std::uint64_t all_cols = (std::uint64_t{1} << n) - 1;
  std::int64_t best_edges = -1;
  std::uint64_t best_m = 0;
  std::uint64_t best_n = 0;
  for (std::uint64_t mm = 1; mm < (std::uint64_t{1} << m); ++mm) {
    std::uint64_t common = all_cols;
    for (std::uint64_t rest = mm; rest; rest &= rest - 1) {
      common &= row_bits[static_cast<std::size_t>(std::countr_zero(rest))];
    }
    const std::int64_t edges = std::popcount(mm) * std::popcount(common);
    if (edges > best_edges || (edges == best_edges && pair_less(mm, common, best_m, best_n))) {
      best_edges = edges;
      best_m = mm;
      best_n = common;
    }
  }
  return Biclique{IndexSet::from_mask(best_m, m), IndexSet::from_mask(best_n, n), best_edges};
}

}  // namespace r1d
