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

#include "r1d/generators.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "r1d/errors.h"

namespace r1d {
namespace {

constexpr double kStochasticTol = 1e-12;

std::vector<double> to_std(const Eigen::VectorXd& x) {
  return std::vector<double>(x.data(), x.data() + x.size());
}

}  // namespace

ZipfLength::ZipfLength(int max_len) : max_len_(max_len) {
  if (max_len < 2) {
    throw InvalidParameter("maximum document length L must be >= 2, got " +
                           std::to_string(max_len));
  }
  cdf_.resize(static_cast<std::size_t>(max_len - 1));
  double harmonic = 0.0;
  for (int l = 1; l < max_len; ++l) {
    harmonic += 1.0 / l;
    cdf_[static_cast<std::size_t>(l - 1)] = harmonic;
  }
  for (double& c : cdf_) c /= harmonic;
  cdf_.back() = 1.0;
}

double ZipfLength::pmf(int length) const {
  if (length < 1 || length >= max_len_) return 0.0;
  const auto k = static_cast<std::size_t>(length - 1);
  return k == 0 ? cdf_[0] : cdf_[k] - cdf_[k - 1];
}

int ZipfLength::operator()(Rng& rng) const {
  const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), p);
  const auto k = std::min<std::ptrdiff_t>(it - cdf_.begin(), std::ssize(cdf_) - 1);
  return static_cast<int>(k) + 1;
}

int zipf_sample(int max_len, Rng& rng) { return ZipfLength(max_len)(rng); }

void TextModel::validate() const {
  const Index m = num_terms();
  const Index t = num_topics();
  if (m < 1 || t < 1) throw InvalidParameter("text model needs at least one term and topic");
  if (max_len < 2) throw InvalidParameter("maximum document length L must be >= 2");
  if (tau.size() != t) throw InvalidParameter("tau length differs from the topic count");
  if (std::ssize(topic_sets) != t) throw InvalidParameter("one term set per topic is required");
  if ((terms.array() < 0.0).any() || !terms.allFinite()) {
    throw InvalidParameter("term probabilities must be finite and nonnegative");
  }
  if ((tau.array() < 0.0).any() || std::abs(tau.sum() - 1.0) > kStochasticTol) {
    throw InvalidParameter("tau must be a probability vector");
  }
  std::vector<char> used(static_cast<std::size_t>(m), 0);
  for (Index k = 0; k < t; ++k) {
    if (std::abs(terms.col(k).sum() - 1.0) > kStochasticTol) {
      throw InvalidParameter("column " + std::to_string(k) + " of P does not sum to 1");
    }
    const auto& set = topic_sets[static_cast<std::size_t>(k)];
    if (set.bound() != m) throw InvalidParameter("term set bound differs from m");
    for (Index i : set) {
      if (used[static_cast<std::size_t>(i)]) throw InvalidParameter("term sets overlap");
      used[static_cast<std::size_t>(i)] = 1;
    }
    const auto in_set = set.to_flags();
    for (Index i = 0; i < m; ++i) {
      if (!in_set[static_cast<std::size_t>(i)] && terms(i, k) > eps) {
        throw InvalidParameter("model is not eps-separable at term " + std::to_string(i) +
                               ", topic " + std::to_string(k));
      }
    }
  }
}

IndexSet Corpus::documents_of(int topic) const {
  std::vector<Index> docs;
  for (std::size_t j = 0; j < topic_of.size(); ++j) {
    if (topic_of[j] == topic) docs.push_back(static_cast<Index>(j));
  }
  return IndexSet(std::move(docs), static_cast<Index>(topic_of.size()));
}

TextModel make_separable_model(Index num_terms, int num_topics, double eps, int max_len,
                               std::uint64_t seed) {
  if (num_topics < 1 || num_terms < num_topics) {
    throw InvalidParameter("need m >= t >= 1, got m = " + std::to_string(num_terms) +
                           ", t = " + std::to_string(num_topics));
  }
  if (max_len < 2) throw InvalidParameter("maximum document length L must be >= 2");
  if (!(eps >= 0.0) || eps > 1.0 / static_cast<double>(num_terms)) {
    throw InvalidParameter("eps must lie in [0, 1/m] = [0, " +
                           std::to_string(1.0 / static_cast<double>(num_terms)) + "], got " +
                           std::to_string(eps));
  }

  Rng rng(seed);
  std::vector<Index> perm(static_cast<std::size_t>(num_terms));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);

  TextModel model;
  model.terms = Eigen::MatrixXd::Constant(num_terms, num_topics, eps);
  model.tau = Eigen::VectorXd::Constant(num_topics, 1.0 / num_topics);
  model.max_len = max_len;
  model.eps = eps;

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index base = num_terms / num_topics;
  const Index extra = num_terms % num_topics;
  auto next = perm.begin();
  for (Index k = 0; k < num_topics; ++k) {
    const Index size = base + (k < extra ? 1 : 0);
    std::vector<Index> members(next, next + size);
    next += size;
    const double off_mass = eps * static_cast<double>(num_terms - size);
    if (off_mass >= 1.0) {
      throw InvalidParameter("infeasible eps: off-topic mass " + std::to_string(off_mass) +
                             " >= 1");
    }
    IndexSet set(std::move(members), num_terms);
    std::vector<double> weights;
    for (Index i = 0; i < size; ++i) weights.push_back(1.0 - unit(rng));  // (0, 1]
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (Index i = 0; i < size; ++i) {
      model.terms(set[i], k) = (1.0 - off_mass) * weights[static_cast<std::size_t>(i)] / total;
    }
    model.topic_sets.push_back(std::move(set));
  }
  model.validate();
  return model;
}

Corpus generate_corpus(const TextModel& model, Index num_docs, std::uint64_t seed) {
  model.validate();
  if (num_docs < 1) throw InvalidParameter("corpus needs at least one document");

  Rng rng(seed);
  const Index m = model.num_terms();
  std::discrete_distribution<int> topic_dist(model.tau.data(), model.tau.data() + model.tau.size());
  std::vector<std::discrete_distribution<Index>> term_dists;
  for (Index k = 0; k < model.num_topics(); ++k) {
    const auto column = to_std(model.terms.col(k));
    term_dists.emplace_back(column.begin(), column.end());
  }
  const ZipfLength zipf(model.max_len);

  Corpus corpus{NonnegMatrix::zeros(m, num_docs), {}, {}, model};
  std::vector<Triplet> entries;
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  for (Index j = 0; j < num_docs; ++j) {
    const int topic = topic_dist(rng);
    const int length = zipf(rng);
    std::fill(counts.begin(), counts.end(), 0);
    for (int draw = 0; draw < length; ++draw) {
      ++counts[static_cast<std::size_t>(term_dists[static_cast<std::size_t>(topic)](rng))];
    }
    for (Index i = 0; i < m; ++i) {
      if (counts[static_cast<std::size_t>(i)] > 0) {
        entries.push_back({i, j, static_cast<double>(counts[static_cast<std::size_t>(i)])});
      }
    }
    corpus.topic_of.push_back(topic);
    corpus.lengths.push_back(length);
  }
  corpus.counts = NonnegMatrix::from_triplets(m, num_docs, std::move(entries));
  return corpus;
}

ImageModel ImageModel::from_sizes(const std::vector<Index>& sizes, int per_image) {
  const Index total = std::accumulate(sizes.begin(), sizes.end(), Index{0});
  ImageModel model;
  model.per_image = per_image;
  Index start = 0;
  for (Index size : sizes) {
    if (size < 1) throw InvalidParameter("feature sizes must be positive");
    std::vector<Index> pixels(static_cast<std::size_t>(size));
    std::iota(pixels.begin(), pixels.end(), start);
    start += size;
    model.features.emplace_back(std::move(pixels), total);
  }
  model.validate();
  return model;
}

void ImageModel::validate() const {
  if (features.empty()) throw InvalidParameter("image model needs at least one feature");
  const Index m = num_pixels();
  std::vector<char> covered(static_cast<std::size_t>(m), 0);
  for (const auto& f : features) {
    if (f.bound() != m) throw InvalidParameter("feature bounds differ");
    if (f.empty()) throw InvalidParameter("features must be nonempty");
    for (Index i : f) {
      if (covered[static_cast<std::size_t>(i)]) throw InvalidParameter("features overlap");
      covered[static_cast<std::size_t>(i)] = 1;
    }
  }
  if (std::count(covered.begin(), covered.end(), char{0}) != 0) {
    throw InvalidParameter("features do not cover every pixel");
  }
  if (per_image < 1 || per_image > num_features()) {
    throw InvalidParameter("features per image must lie in [1, t] = [1, " +
                           std::to_string(num_features()) + "]");
  }
}

IndexSet BitmapDatabase::images_with(int feature) const {
  std::vector<Index> images;
  for (std::size_t j = 0; j < features_of.size(); ++j) {
    const auto& f = features_of[j];
    if (std::binary_search(f.begin(), f.end(), feature)) images.push_back(static_cast<Index>(j));
  }
  return IndexSet(std::move(images), static_cast<Index>(features_of.size()));
}

BitmapDatabase generate_bitmaps(const ImageModel& model, Index num_images, std::uint64_t seed) {
  model.validate();
  if (num_images < 1) throw InvalidParameter("database needs at least one image");

  Rng rng(seed);
  std::vector<int> all(static_cast<std::size_t>(model.num_features()));
  std::iota(all.begin(), all.end(), 0);

  BitmapDatabase db{NonnegMatrix::zeros(model.num_pixels(), num_images), {}, model};
  std::vector<Triplet> entries;
  for (Index j = 0; j < num_images; ++j) {
    std::vector<int> chosen;
    std::sample(all.begin(), all.end(), std::back_inserter(chosen), model.per_image, rng);
    for (int k : chosen) {
      for (Index i : model.features[static_cast<std::size_t>(k)]) entries.push_back({i, j, 1.0});
    }
    db.features_of.push_back(std::move(chosen));
  }
  db.pixels = NonnegMatrix::from_triplets(model.num_pixels(), num_images, std::move(entries));
  return db;
}

}  // namespace r1d
