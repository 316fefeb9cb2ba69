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

#include "r1d/evaluation.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "r1d/errors.h"

namespace r1d {
namespace {

double mass(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols) {
  return SubmatrixView(a, rows, cols).frobenius_sq();
}

IndexSet intersect(const IndexSet& a, const IndexSet& b) {
  std::vector<Index> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return IndexSet(std::move(out), a.bound());
}

double cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const double denom = x.norm() * y.norm();
  return denom == 0.0 ? 0.0 : x.dot(y) / denom;
}

Eigen::VectorXd indicator(const IndexSet& s) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(s.bound());
  for (Index j : s) out(j) = 1.0;
  return out;
}

// Dominant right singular vector of a dense matrix, sign chosen so that the
// entries sum to a nonnegative value.
Eigen::VectorXd dominant_right(const Eigen::MatrixXd& block, double* sigma1, double* sigma2) {
  const SvdResult svd = dense_svd(block);
  Eigen::VectorXd v = svd.V.col(0);
  if (v.sum() < 0.0) v = -v;
  if (sigma1) *sigma1 = svd.sigma(0);
  if (sigma2) *sigma2 = svd.sigma.size() > 1 ? svd.sigma(1) : 0.0;
  return v;
}

}  // namespace

GroundTruth GroundTruth::from_corpus(const Corpus& corpus) {
  GroundTruth truth;
  truth.row_sets = corpus.model.topic_sets;
  for (int k = 0; k < corpus.model.num_topics(); ++k) {
    truth.col_sets.push_back(corpus.documents_of(k));
  }
  return truth;
}

GroundTruth GroundTruth::from_bitmaps(const BitmapDatabase& db) {
  GroundTruth truth;
  truth.row_sets = db.model.features;
  for (int k = 0; k < db.model.num_features(); ++k) truth.col_sets.push_back(db.images_with(k));
  return truth;
}

void GroundTruth::validate(Index rows, Index cols) const {
  if (row_sets.size() != col_sets.size()) {
    throw InvalidParameter("ground truth needs one column set per row set");
  }
  for (std::size_t k = 0; k < row_sets.size(); ++k) {
    if (row_sets[k].bound() != rows || col_sets[k].bound() != cols) {
      throw InvalidParameter("ground truth block " + std::to_string(k) +
                             " does not fit a " + std::to_string(rows) + " x " +
                             std::to_string(cols) + " matrix");
    }
  }
}

double overlap_mass(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                    const IndexSet& block_rows, const IndexSet& block_cols) {
  return mass(a, intersect(rows, block_rows), intersect(cols, block_cols));
}

double symdiff_ratio(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                     const IndexSet& block_rows, const IndexSet& block_cols) {
  const double selected = mass(a, rows, cols);
  if (!(selected > 0.0)) {
    throw DegenerateInput("A(M, N) is all zero; the symmetric-difference ratio is undefined");
  }
  // |X sym-diff Y| mass = mass(X) + mass(Y) - 2 mass(X cap Y), and the
  // intersection of two rectangles is the rectangle of the intersections.
  const double planted = mass(a, block_rows, block_cols);
  const double shared = overlap_mass(a, rows, cols, block_rows, block_cols);
  return std::max(0.0, selected + planted - 2.0 * shared) / selected;
}

std::optional<double> purity(std::span<const int> cluster_of,
                             const std::vector<IndexSet>& classes) {
  int clusters = 0;
  Index assigned = 0;
  for (int c : cluster_of) {
    clusters = std::max(clusters, c + 1);
    assigned += c >= 0;
  }
  if (assigned == 0) return std::nullopt;
  // hits[c][k] = |cluster c cap class k|
  std::vector<std::vector<Index>> hits(static_cast<std::size_t>(clusters),
                                       std::vector<Index>(classes.size(), 0));
  for (std::size_t k = 0; k < classes.size(); ++k) {
    for (Index j : classes[k]) {
      const int c = cluster_of[static_cast<std::size_t>(j)];
      if (c >= 0) ++hits[static_cast<std::size_t>(c)][k];
    }
  }
  Index majority = 0;
  for (const auto& row : hits) {
    if (!row.empty()) majority += *std::max_element(row.begin(), row.end());
  }
  return static_cast<double>(majority) / static_cast<double>(assigned);
}

RecoveryReport match_and_score(const NonnegMatrix& a, const NmfFactors& factors,
                               const GroundTruth& truth) {
  truth.validate(a.rows(), a.cols());
  if (factors.H.rows() != a.cols() || factors.W.rows() != a.rows()) {
    throw InvalidParameter("factors and matrix dimensions differ");
  }
  RecoveryReport report;
  report.cluster_of.assign(static_cast<std::size_t>(a.cols()), -1);
  if (factors.achieved_rank == 0 || truth.num_blocks() == 0) {
    report.degenerate = true;
    return report;
  }

  for (Index j = 0; j < a.cols(); ++j) {
    double best = 0.0;
    for (Index mu = 0; mu < factors.achieved_rank; ++mu) {
      if (factors.H(j, mu) > best) {
        best = factors.H(j, mu);
        report.cluster_of[static_cast<std::size_t>(j)] = static_cast<int>(mu);
      }
    }
    report.assigned += best > 0.0;
  }

  std::vector<int> matched;
  for (Index mu = 0; mu < factors.achieved_rank; ++mu) {
    const auto& f = factors.factors[static_cast<std::size_t>(mu)];
    FactorMatch match;
    match.factor = static_cast<int>(mu);
    match.overlap = -1.0;
    for (int k = 0; k < truth.num_blocks(); ++k) {
      const auto& block_rows = truth.row_sets[static_cast<std::size_t>(k)];
      const auto& block_cols = truth.col_sets[static_cast<std::size_t>(k)];
      const double overlap = overlap_mass(a, f.rows, f.cols, block_rows, block_cols);
      if (overlap > match.overlap) {
        match.overlap = overlap;
        match.block = k;
      }
    }
    const auto& block_rows = truth.row_sets[static_cast<std::size_t>(match.block)];
    const auto& block_cols = truth.col_sets[static_cast<std::size_t>(match.block)];
    match.symdiff = symdiff_ratio(a, f.rows, f.cols, block_rows, block_cols);

    std::vector<int> only_this(report.cluster_of.size(), -1);
    for (std::size_t j = 0; j < only_this.size(); ++j) {
      if (report.cluster_of[j] == match.factor) {
        only_this[j] = 0;
        ++match.cluster_size;
      }
    }
    match.cluster_purity = purity(only_this, truth.col_sets);
    matched.push_back(match.block);
    report.factors.push_back(match);
  }

  report.purity = purity(report.cluster_of, truth.col_sets);
  double purity_sum = 0.0;
  int purity_count = 0;
  for (const auto& f : report.factors) {
    if (f.cluster_purity) {
      purity_sum += *f.cluster_purity;
      ++purity_count;
    }
  }
  if (purity_count > 0) report.mean_factor_purity = purity_sum / purity_count;
  report.degenerate = report.assigned == 0;

  for (int k = 0; k < truth.num_blocks(); ++k) {
    BlockScore score;
    score.block = k;
    const auto& relevant = truth.col_sets[static_cast<std::size_t>(k)];
    score.relevant = relevant.size();
    for (std::size_t j = 0; j < report.cluster_of.size(); ++j) {
      const int c = report.cluster_of[j];
      if (c < 0 || matched[static_cast<std::size_t>(c)] != k) continue;
      ++score.predicted;
      score.correct += relevant.contains(static_cast<Index>(j));
    }
    if (score.predicted > 0) {
      score.precision = static_cast<double>(score.correct) / static_cast<double>(score.predicted);
    }
    if (score.relevant > 0) {
      score.recall = static_cast<double>(score.correct) / static_cast<double>(score.relevant);
    }
    report.blocks.push_back(score);
  }
  return report;
}

BaselineReport svd_baseline(const NonnegMatrix& a, Index k, const GroundTruth& truth,
                            const PowerOptions& options) {
  truth.validate(a.rows(), a.cols());
  const SvdResult svd = jordan_svd(a.to_dense(), k, options);
  std::vector<int> cluster_of(static_cast<std::size_t>(a.cols()), -1);
  for (Index j = 0; j < a.cols(); ++j) {
    double best = 0.0;
    for (Index mu = 0; mu < svd.sigma.size(); ++mu) {
      const double weight = svd.sigma(mu) * std::abs(svd.V(j, mu));
      if (weight > best) {
        best = weight;
        cluster_of[static_cast<std::size_t>(j)] = static_cast<int>(mu);
      }
    }
  }
  return BaselineReport{svd.sigma, purity(cluster_of, truth.col_sets)};
}

EntanglementReport svd_entanglement_report(const NonnegMatrix& a, Index k,
                                           const R1dParams& params, const GroundTruth* truth) {
  if (!a.has_positive_entry()) throw DomainError("entanglement report needs a nonzero matrix");
  if (truth) truth->validate(a.rows(), a.cols());

  auto cosines_of = [&](const Eigen::VectorXd& v) {
    std::vector<double> out;
    if (truth) {
      for (const auto& cols : truth->col_sets) out.push_back(cosine(v, indicator(cols)));
    }
    return out;
  };

  EntanglementReport report;
  report.v = dominant_right(a.to_dense(), &report.sigma1, &report.sigma2);
  report.degenerate = report.sigma1 - report.sigma2 <= 1e-9 * report.sigma1;
  report.uniform_cosine = cosine(report.v, Eigen::VectorXd::Ones(a.cols()));
  report.cosines = cosines_of(report.v);

  const NmfFactors nmf = r1d(a, k, params);
  for (const auto& f : nmf.factors) {
    SubmatrixVector entry{f.rows, f.cols, Eigen::VectorXd::Zero(a.cols()), {}};
    const Eigen::VectorXd local =
        dominant_right(SubmatrixView(a, f.rows, f.cols).to_dense(), nullptr, nullptr);
    for (Index c = 0; c < f.cols.size(); ++c) entry.v(f.cols[c]) = local(c);
    entry.cosines = cosines_of(entry.v);
    report.factors.push_back(std::move(entry));
  }
  return report;
}

}  // namespace r1d
