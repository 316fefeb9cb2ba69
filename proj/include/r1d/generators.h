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

#ifndef R1D_GENERATORS_H_
#define R1D_GENERATORS_H_

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

#include "r1d/index_set.h"
#include "r1d/matrix.h"

namespace r1d {

using Rng = std::mt19937_64;

// Document lengths l in {1, ..., L-1} with Pr(l) proportional to 1/l.
class ZipfLength {
 public:
  // Throws InvalidParameter when max_len < 2.
  explicit ZipfLength(int max_len);

  int max_len() const { return max_len_; }
  double pmf(int length) const;
  // Inverse CDF over the tabulated distribution.
  int operator()(Rng& rng) const;

 private:
  int max_len_;
  std::vector<double> cdf_;  // cdf_[l - 1] = Pr(length <= l)
};

int zipf_sample(int max_len, Rng& rng);

// Topic k draws terms from column k of `terms`; T_k are disjoint term sets
// with terms(i, k) <= eps whenever i is not in T_k.
struct TextModel {
  Eigen::MatrixXd terms;  // m x t, column stochastic
  Eigen::VectorXd tau;    // topic probabilities
  int max_len = 2;        // L; lengths are drawn from {1, ..., L-1}
  std::vector<IndexSet> topic_sets;
  double eps = 0.0;

  Index num_terms() const { return terms.rows(); }
  Index num_topics() const { return terms.cols(); }
  // Throws InvalidParameter naming the first broken invariant.
  void validate() const;
};

struct Corpus {
  NonnegMatrix counts;            // m x n term-document counts
  std::vector<int> topic_of;      // zero-based topic per document
  std::vector<int> lengths;       // l_j
  TextModel model;

  // D_k, the documents drawn from topic k.
  IndexSet documents_of(int topic) const;
};

// Near-equal T_k over a seeded permutation of the terms. In-topic weights are
// uniform draws normalized to 1 - eps (m - |T_k|); every off-topic term gets
// exactly eps. tau is uniform.
//
// Throws InvalidParameter unless m >= t >= 1, max_len >= 2 and
// 0 <= eps <= 1/m.
TextModel make_separable_model(Index num_terms, int num_topics, double eps, int max_len,
                               std::uint64_t seed);

// Documents are independent: topic ~ tau, length ~ Zipf(L), then `length`
// independent term draws from the topic's column.
Corpus generate_corpus(const TextModel& model, Index num_docs, std::uint64_t seed);

// Features T_1..T_t partition the pixels; every image is the union of exactly
// `per_image` features drawn uniformly without replacement.
struct ImageModel {
  std::vector<IndexSet> features;
  int per_image = 1;

  // Contiguous features of the given sizes, in order.
  static ImageModel from_sizes(const std::vector<Index>& sizes, int per_image);

  Index num_pixels() const { return features.empty() ? 0 : features.front().bound(); }
  int num_features() const { return static_cast<int>(features.size()); }
  // per_image <= t/2, the regime in which the largest feature is the
  // optimizer's choice.
  bool in_recovery_regime() const { return 2 * per_image <= num_features(); }
  // Throws InvalidParameter unless the features partition the pixels and
  // 1 <= per_image <= t.
  void validate() const;
};

struct BitmapDatabase {
  NonnegMatrix pixels;                    // m x n, entries 0 or 1
  std::vector<std::vector<int>> features_of;  // sorted feature ids per image
  ImageModel model;

  // Images containing feature k.
  IndexSet images_with(int feature) const;
};

BitmapDatabase generate_bitmaps(const ImageModel& model, Index num_images, std::uint64_t seed);

}  // namespace r1d

#endif  // R1D_GENERATORS_H_
