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

#ifndef R1D_INDEX_SET_H_
#define R1D_INDEX_SET_H_

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <vector>

namespace r1d {

using Index = std::int64_t;

// A strictly increasing sequence of zero-based indices, each below bound().
class IndexSet {
 public:
  using const_iterator = std::vector<Index>::const_iterator;

  IndexSet() = default;
  // Sorts and validates; throws IndexError on duplicates or out-of-range.
  IndexSet(std::vector<Index> indices, Index bound);
  IndexSet(std::initializer_list<Index> indices, Index bound)
      : IndexSet(std::vector<Index>(indices), bound) {}

  static IndexSet full(Index bound);
  static IndexSet empty_of(Index bound) { return IndexSet({}, bound); }
  // Bit k of mask selects index k. bound must be <= 64.
  static IndexSet from_mask(std::uint64_t mask, Index bound);
  // Indices k with flags[k] != 0.
  static IndexSet from_flags(const std::vector<char>& flags);

  Index bound() const { return bound_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  Index operator[](Index k) const { return indices_[static_cast<std::size_t>(k)]; }
  const_iterator begin() const { return indices_.begin(); }
  const_iterator end() const { return indices_.end(); }
  const std::vector<Index>& indices() const { return indices_; }

  bool contains(Index i) const;
  // Membership flags of length bound().
  std::vector<char> to_flags() const;

  // Same indices; bounds must agree for equality.
  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  // Lexicographic order on the index sequence (bound ignored).
  friend std::strong_ordering lex_compare(const IndexSet& a, const IndexSet& b);

 private:
  std::vector<Index> indices_;
  Index bound_ = 0;
};

// Elementwise intersection size of two sets over the same bound.
Index intersection_size(const IndexSet& a, const IndexSet& b);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_difference(const IndexSet& a, const IndexSet& b);

// Prints {i, j, ...} with zero-based indices.
std::ostream& operator<<(std::ostream& os, const IndexSet& s);

}  // namespace r1d

#endif  // R1D_INDEX_SET_H_
