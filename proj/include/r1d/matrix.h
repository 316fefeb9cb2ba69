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

#ifndef R1D_MATRIX_H_
#define R1D_MATRIX_H_

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <utility>
#include <variant>
#include <vector>

#include "r1d/index_set.h"

namespace r1d {

struct Triplet {
  Index row;
  Index col;
  double value;
};

// An m x n matrix with nonnegative, finite entries, stored either dense or
// as compressed sparse columns built from coordinate triples. Both storage
// forms visit entries in column-major order, so every reduction computed
// through for_each_nonzero gives identical results for either form.
//
// Immutable after construction.
class NonnegMatrix {
 public:
  enum class Storage { kDense, kSparse };
  using Dense = Eigen::MatrixXd;
  using Sparse = Eigen::SparseMatrix<double, Eigen::ColMajor, Index>;

  NonnegMatrix() : NonnegMatrix(Dense(1, 1)) {}
  // Throws DomainError on a negative or non-finite entry, InvalidParameter on
  // an empty shape.
  explicit NonnegMatrix(Dense dense);
  // Zero-valued triplets are dropped. Throws IndexError on out-of-range or
  // duplicate coordinates, DomainError on negative or non-finite values.
  static NonnegMatrix from_triplets(Index rows, Index cols, std::vector<Triplet> triplets);
  static NonnegMatrix zeros(Index rows, Index cols) { return from_triplets(rows, cols, {}); }

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Storage storage() const {
    return std::holds_alternative<Dense>(data_) ? Storage::kDense : Storage::kSparse;
  }
  bool is_sparse() const { return storage() == Storage::kSparse; }

  double operator()(Index i, Index j) const;
  // Count of strictly positive entries.
  Index nonzeros() const;
  bool has_positive_entry() const { return nonzeros() > 0; }

  // Visits every stored entry as f(i, j, value), columns in order, rows
  // ascending within a column. Dense storage visits zeros as well.
  template <class F>
  void for_each_nonzero(F&& f) const {
    if (const auto* d = std::get_if<Dense>(&data_)) {
      for (Index j = 0; j < cols_; ++j) {
        for (Index i = 0; i < rows_; ++i) f(i, j, (*d)(i, j));
      }
    } else {
      const auto& s = std::get<Sparse>(data_);
      for (Index j = 0; j < cols_; ++j) {
        for (Sparse::InnerIterator it(s, j); it; ++it) f(it.row(), j, it.value());
      }
    }
  }

  // Same as for_each_nonzero restricted to column j.
  template <class F>
  void for_each_in_column(Index j, F&& f) const {
    if (const auto* d = std::get_if<Dense>(&data_)) {
      for (Index i = 0; i < rows_; ++i) f(i, (*d)(i, j));
    } else {
      for (Sparse::InnerIterator it(std::get<Sparse>(data_), j); it; ++it) {
        f(it.row(), it.value());
      }
    }
  }

  Dense to_dense() const;
  NonnegMatrix as_dense() const { return NonnegMatrix(to_dense()); }
  NonnegMatrix as_sparse() const;
  // Positive entries in column-major order.
  std::vector<Triplet> triplets() const;

  double frobenius_sq() const;
  std::vector<double> column_norms_sq() const;
  NonnegMatrix transposed() const;
  // Copy with A(M, N) set to zero; keeps the storage form.
  NonnegMatrix with_block_zeroed(const IndexSet& rows, const IndexSet& cols) const;

  // Logical (entry-exact) equality, independent of storage form.
  friend bool operator==(const NonnegMatrix& a, const NonnegMatrix& b);

 private:
  NonnegMatrix(Index rows, Index cols, Sparse sparse);

  Index rows_ = 0;
  Index cols_ = 0;
  std::variant<Dense, Sparse> data_;
};

// A(M, N) by index-set indirection; never copies the parent.
class SubmatrixView {
 public:
  // Throws IndexError when the sets' bounds do not match A's shape.
  SubmatrixView(const NonnegMatrix& parent, const IndexSet& rows, const IndexSet& cols);

  const NonnegMatrix& parent() const { return *parent_; }
  const IndexSet& row_set() const { return *rows_; }
  const IndexSet& col_set() const { return *cols_; }
  Index rows() const { return rows_->size(); }
  Index cols() const { return cols_->size(); }

  // Visits f(i, j, value) for stored entries with i in M and j in N, using
  // parent coordinates.
  template <class F>
  void for_each_nonzero(F&& f) const {
    for (Index j : *cols_) {
      parent_->for_each_in_column(j, [&](Index i, double a) {
        if (row_flags_[static_cast<std::size_t>(i)]) f(i, j, a);
      });
    }
  }

  double frobenius_sq() const;
  // |M| x |N| dense copy, rows and columns in index-set order.
  Eigen::MatrixXd to_dense() const;

 private:
  const NonnegMatrix* parent_;
  const IndexSet* rows_;
  const IndexSet* cols_;
  std::vector<char> row_flags_;
};

// Sum of A(i, j)^2 over i in M, j in N. Throws IndexError when the sets do
// not index A.
double frobenius_sq(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols);

}  // namespace r1d

#endif  // R1D_MATRIX_H_
