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

#include "r1d/matrix.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "r1d/errors.h"

namespace r1d {
namespace {

std::string coordinate(Index i, Index j) {
  // One-based, matching the file formats users see.
  return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")";
}

void check_entry(Index i, Index j, double value) {
  if (!std::isfinite(value)) {
    throw DomainError("non-finite entry at " + coordinate(i, j));
  }
  if (value < 0.0) {
    throw DomainError("negative entry " + std::to_string(value) + " at " + coordinate(i, j));
  }
}

void check_shape(Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) {
    throw InvalidParameter("matrix dimensions must be positive, got " + std::to_string(rows) +
                           " x " + std::to_string(cols));
  }
}

}  // namespace

NonnegMatrix::NonnegMatrix(Dense dense) : rows_(dense.rows()), cols_(dense.cols()) {
  check_shape(rows_, cols_);
  for (Index j = 0; j < cols_; ++j) {
    for (Index i = 0; i < rows_; ++i) check_entry(i, j, dense(i, j));
  }
  // -0.0 would survive the sign check; normalize so equality is bitwise.
  dense = dense.unaryExpr([](double x) { return x == 0.0 ? 0.0 : x; });
  data_ = std::move(dense);
}

NonnegMatrix::NonnegMatrix(Index rows, Index cols, Sparse sparse)
    : rows_(rows), cols_(cols), data_(std::move(sparse)) {}

NonnegMatrix NonnegMatrix::from_triplets(Index rows, Index cols, std::vector<Triplet> triplets) {
  check_shape(rows, cols);
  for (const auto& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) {
      throw IndexError("entry " + coordinate(t.row, t.col) + " outside a " +
                       std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
    }
    check_entry(t.row, t.col, t.value);
  }
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.col != b.col ? a.col < b.col : a.row < b.row;
  });
  auto dup = std::adjacent_find(triplets.begin(), triplets.end(),
                                [](const Triplet& a, const Triplet& b) {
                                  return a.row == b.row && a.col == b.col;
                                });
  if (dup != triplets.end()) {
    throw IndexError("duplicate entry at " + coordinate(dup->row, dup->col));
  }
  std::erase_if(triplets, [](const Triplet& t) { return t.value == 0.0; });

  std::vector<Eigen::Triplet<double, Index>> eigen_triplets;
  eigen_triplets.reserve(triplets.size());
  for (const auto& t : triplets) eigen_triplets.emplace_back(t.row, t.col, t.value);
  Sparse s(rows, cols);
  s.setFromTriplets(eigen_triplets.begin(), eigen_triplets.end());
  s.makeCompressed();
  return NonnegMatrix(rows, cols, std::move(s));
}

double NonnegMatrix::operator()(Index i, Index j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_) {
    throw IndexError("entry " + coordinate(i, j) + " out of range");
  }
  if (const auto* d = std::get_if<Dense>(&data_)) return (*d)(i, j);
  return std::get<Sparse>(data_).coeff(i, j);
}

Index NonnegMatrix::nonzeros() const {
  Index count = 0;
  for_each_nonzero([&](Index, Index, double a) { count += a > 0.0; });
  return count;
}

NonnegMatrix::Dense NonnegMatrix::to_dense() const {
  if (const auto* d = std::get_if<Dense>(&data_)) return *d;
  return Dense(std::get<Sparse>(data_));
}

NonnegMatrix NonnegMatrix::as_sparse() const {
  if (is_sparse()) return *this;
  return from_triplets(rows_, cols_, triplets());
}

std::vector<Triplet> NonnegMatrix::triplets() const {
  std::vector<Triplet> out;
  for_each_nonzero([&](Index i, Index j, double a) {
    if (a > 0.0) out.push_back({i, j, a});
  });
  return out;
}

double NonnegMatrix::frobenius_sq() const {
  double sum = 0.0;
  for_each_nonzero([&](Index, Index, double a) { sum += a * a; });
  return sum;
}

std::vector<double> NonnegMatrix::column_norms_sq() const {
  std::vector<double> norms(static_cast<std::size_t>(cols_), 0.0);
  for_each_nonzero([&](Index, Index j, double a) { norms[static_cast<std::size_t>(j)] += a * a; });
  return norms;
}

NonnegMatrix NonnegMatrix::transposed() const {
  if (const auto* d = std::get_if<Dense>(&data_)) return NonnegMatrix(Dense(d->transpose()));
  std::vector<Triplet> t = triplets();
  for (auto& e : t) std::swap(e.row, e.col);
  return from_triplets(cols_, rows_, std::move(t));
}

NonnegMatrix NonnegMatrix::with_block_zeroed(const IndexSet& rows, const IndexSet& cols) const {
  if (rows.bound() != rows_ || cols.bound() != cols_) {
    throw IndexError("index sets do not match the matrix shape");
  }
  const std::vector<char> in_rows = rows.to_flags();
  const std::vector<char> in_cols = cols.to_flags();
  if (const auto* d = std::get_if<Dense>(&data_)) {
    Dense out = *d;
    for (Index j : cols) {
      for (Index i : rows) out(i, j) = 0.0;
    }
    return NonnegMatrix(std::move(out));
  }
  std::vector<Triplet> kept;
  for_each_nonzero([&](Index i, Index j, double a) {
    if (!(in_rows[static_cast<std::size_t>(i)] && in_cols[static_cast<std::size_t>(j)])) {
      kept.push_back({i, j, a});
    }
  });
  return from_triplets(rows_, cols_, std::move(kept));
}

bool operator==(const NonnegMatrix& a, const NonnegMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  const std::vector<Triplet> ta = a.triplets();
  const std::vector<Triplet> tb = b.triplets();
  return std::equal(ta.begin(), ta.end(), tb.begin(), tb.end(),
                    [](const Triplet& x, const Triplet& y) {
                      return x.row == y.row && x.col == y.col && x.value == y.value;
                    });
}

SubmatrixView::SubmatrixView(const NonnegMatrix& parent, const IndexSet& rows,
                             const IndexSet& cols)
    : parent_(&parent), rows_(&rows), cols_(&cols) {
  if (rows.bound() != parent.rows() || cols.bound() != parent.cols()) {
    throw IndexError("index sets (bounds " + std::to_string(rows.bound()) + ", " +
                     std::to_string(cols.bound()) + ") do not index a " +
                     std::to_string(parent.rows()) + " x " + std::to_string(parent.cols()) +
                     " matrix");
  }
  row_flags_ = rows.to_flags();
}

double SubmatrixView::frobenius_sq() const {
  double sum = 0.0;
  for_each_nonzero([&](Index, Index, double a) { sum += a * a; });
  return sum;
}

Eigen::MatrixXd SubmatrixView::to_dense() const {
  std::vector<Index> local_row(static_cast<std::size_t>(parent_->rows()), -1);
  for (Index k = 0; k < rows_->size(); ++k) local_row[static_cast<std::size_t>((*rows_)[k])] = k;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows(), cols());
  for (Index c = 0; c < cols_->size(); ++c) {
    parent_->for_each_in_column((*cols_)[c], [&](Index i, double a) {
      const Index r = local_row[static_cast<std::size_t>(i)];
      if (r >= 0) out(r, c) = a;
    });
  }
  return out;
}

double frobenius_sq(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  return SubmatrixView(a, rows, cols).frobenius_sq();
}

}  // namespace r1d
