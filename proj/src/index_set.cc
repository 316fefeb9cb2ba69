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

#include "r1d/index_set.h"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <string>

#include "r1d/errors.h"

namespace r1d {

IndexSet::IndexSet(std::vector<Index> indices, Index bound)
    : indices_(std::move(indices)), bound_(bound) {
  if (bound_ < 0) throw IndexError("index set bound is negative");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw IndexError("index set contains a duplicate index");
  }
  if (!indices_.empty() && (indices_.front() < 0 || indices_.back() >= bound_)) {
    throw IndexError("index out of range [0, " + std::to_string(bound_) + ")");
  }
}

IndexSet IndexSet::full(Index bound) {
  std::vector<Index> all(static_cast<std::size_t>(bound));
  std::iota(all.begin(), all.end(), Index{0});
  return IndexSet(std::move(all), bound);
}

IndexSet IndexSet::from_mask(std::uint64_t mask, Index bound) {
  if (bound > 64) throw IndexError("mask index sets are limited to 64 elements");
  std::vector<Index> picked;
  for (Index k = 0; k < bound; ++k) {
    if (mask >> k & 1U) picked.push_back(k);
  }
  if (bound < 64 && (mask >> bound) != 0) {
    throw IndexError("mask selects an index beyond the bound");
  }
  return IndexSet(std::move(picked), bound);
}

IndexSet IndexSet::from_flags(const std::vector<char>& flags) {
  std::vector<Index> picked;
  for (std::size_t k = 0; k < flags.size(); ++k) {
    if (flags[k]) picked.push_back(static_cast<Index>(k));
  }
  return IndexSet(std::move(picked), static_cast<Index>(flags.size()));
}

bool IndexSet::contains(Index i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

std::vector<char> IndexSet::to_flags() const {
  std::vector<char> flags(static_cast<std::size_t>(bound_), 0);
  for (Index i : indices_) flags[static_cast<std::size_t>(i)] = 1;
  return flags;
}

std::strong_ordering lex_compare(const IndexSet& a, const IndexSet& b) {
  return std::lexicographical_compare_three_way(a.indices_.begin(), a.indices_.end(),
                                                b.indices_.begin(), b.indices_.end());
}

Index intersection_size(const IndexSet& a, const IndexSet& b) {
  Index count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out), std::max(a.bound(), b.bound()));
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out), a.bound());
}

std::ostream& operator<<(std::ostream& os, const IndexSet& s) {
  os << '{';
  for (Index k = 0; k < s.size(); ++k) {
    if (k) os << ", ";
    os << s[k];
  }
  return os << '}';
}

}  // namespace r1d
