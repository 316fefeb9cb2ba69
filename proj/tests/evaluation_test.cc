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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "r1d/errors.h"
#include "test_util.h"

namespace r1d {
namespace {

using ::r1d::testing::entangled_4x4;

// Mass of A over the cells in exactly one of the two rectangles, by visiting
// every cell.
double naive_symdiff(const Eigen::MatrixXd& a, const IndexSet& m, const IndexSet& n,
                     const IndexSet& t, const IndexSet& d) {
  double diff = 0.0;
  double base = 0.0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      const bool in_mn = m.contains(i) && n.contains(j);
      const bool in_td = t.contains(i) && d.contains(j);
      const double sq = a(i, j) * a(i, j);
      if (in_mn != in_td) diff += sq;
      if (in_mn) base += sq;
    }
  }
  return diff / base;
}

GroundTruth two_blocks() {
  GroundTruth truth;
  truth.row_sets = {IndexSet({0, 1}, 4), IndexSet({2, 3}, 4)};
  truth.col_sets = {IndexSet({0, 1}, 4), IndexSet({2, 3}, 4)};
  return truth;
}

Eigen::MatrixXd block_diagonal(double first, double second) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(4, 4);
  b.block(0, 0, 2, 2).setConstant(first);
  b.block(2, 2, 2, 2).setConstant(second);
  return b;
}

TEST(SymdiffTest, IdenticalRectanglesGiveZero) {
  const NonnegMatrix a = entangled_4x4();
  const IndexSet s({2, 3}, 4);
  EXPECT_EQ(symdiff_ratio(a, s, s, s, s), 0.0);
}

TEST(SymdiffTest, DisjointEqualMassBlocksGiveTwo) {
  const NonnegMatrix a(block_diagonal(1.0, 1.0));
  const IndexSet first({0, 1}, 4);
  const IndexSet second({2, 3}, 4);
  EXPECT_NEAR(symdiff_ratio(a, first, first, second, second), 2.0, 1e-15);
  EXPECT_NEAR(symdiff_ratio(a, second, second, first, first), 2.0, 1e-15);
}

TEST(SymdiffTest, ZeroDenominatorIsDegenerate) {
  const NonnegMatrix a(block_diagonal(1.0, 1.0));
  EXPECT_THROW(symdiff_ratio(a, IndexSet({0}, 4), IndexSet({3}, 4), IndexSet({0}, 4),
                             IndexSet({0}, 4)),
               DegenerateInput);
}

TEST(SymdiffTest, MatchesCellByCellOnFactorizedCorpus) {
  const TextModel model = make_separable_model(30, 3, 0.0, 64, 21);
  const Corpus corpus = generate_corpus(model, 150, 22);
  const GroundTruth truth = GroundTruth::from_corpus(corpus);
  const NmfFactors factors = r1d(corpus.counts, 3);
  const RecoveryReport report = match_and_score(corpus.counts, factors, truth);
  const Eigen::MatrixXd a = corpus.counts.to_dense();
  ASSERT_EQ(report.factors.size(), 3u);
  for (const FactorMatch& match : report.factors) {
    const auto& f = factors.factors[static_cast<std::size_t>(match.factor)];
    const auto k = static_cast<std::size_t>(match.block);
    EXPECT_NEAR(match.symdiff, naive_symdiff(a, f.rows, f.cols, truth.row_sets[k], truth.col_sets[k]),
                1e-12);
  }
}

TEST(SymdiffTest, RandomRectanglesMatchCellByCell) {
  std::mt19937_64 rng(5);
  const Eigen::MatrixXd d = testing::uniform_matrix(7, 6, 5);
  const NonnegMatrix a(d);
  auto random_set = [&](Index bound) {
    std::uint64_t mask = 0;
    while (mask == 0) mask = rng() & ((1ULL << bound) - 1);
    return IndexSet::from_mask(mask, bound);
  };
  for (int trial = 0; trial < 50; ++trial) {
    const IndexSet m = random_set(7), n = random_set(6), t = random_set(7), dd = random_set(6);
    EXPECT_NEAR(symdiff_ratio(a, m, n, t, dd), naive_symdiff(d, m, n, t, dd), 1e-12);
  }
}

TEST(PurityTest, CountsMajorityOverAssignedColumns) {
  const std::vector<IndexSet> classes = {IndexSet({0, 1, 2}, 6), IndexSet({3, 4, 5}, 6)};
  const std::vector<int> perfect = {1, 1, 1, 0, 0, 0};
  EXPECT_EQ(purity(perfect, classes), 1.0);
  const std::vector<int> mixed = {0, 0, 1, 1, 1, -1};
  EXPECT_NEAR(*purity(mixed, classes), 4.0 / 5.0, 1e-15);
  const std::vector<int> none = {-1, -1, -1, -1, -1, -1};
  EXPECT_FALSE(purity(none, classes).has_value());
}

TEST(PurityTest, InvariantUnderRelabeling) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> label(0, 2);
  std::vector<int> clusters(60);
  for (int& c : clusters) c = label(rng);
  std::vector<Index> c0, c1, c2;
  for (Index j = 0; j < 60; ++j) (j % 3 == 0 ? c0 : j % 3 == 1 ? c1 : c2).push_back(j);
  const std::vector<IndexSet> classes = {IndexSet(c0, 60), IndexSet(c1, 60), IndexSet(c2, 60)};
  const std::vector<IndexSet> swapped = {classes[2], classes[0], classes[1]};
  std::vector<int> renamed(clusters);
  for (int& c : renamed) c = (c + 1) % 3;
  EXPECT_EQ(purity(clusters, classes), purity(clusters, swapped));
  EXPECT_EQ(purity(clusters, classes), purity(renamed, classes));
}

TEST(PurityTest, RandomLabelsScoreNearLargestClassShare) {
  const Index n = 3000;
  std::mt19937_64 rng(9);
  std::discrete_distribution<int> topic({0.5, 0.3, 0.2});
  std::vector<std::vector<Index>> members(3);
  for (Index j = 0; j < n; ++j) members[static_cast<std::size_t>(topic(rng))].push_back(j);
  const std::vector<IndexSet> classes = {IndexSet(members[0], n), IndexSet(members[1], n),
                                         IndexSet(members[2], n)};
  const double top_share = static_cast<double>(classes[0].size()) / n;
  std::uniform_int_distribution<int> label(0, 2);
  std::vector<int> clusters(static_cast<std::size_t>(n));
  double total = 0.0;
  const int rounds = 10000;
  for (int r = 0; r < rounds; ++r) {
    for (int& c : clusters) c = label(rng);
    total += *purity(clusters, classes);
  }
  EXPECT_NEAR(total / rounds, top_share, 0.01);
}

TEST(MatchTest, EntangledMatrixRecoveredPerfectly) {
  const NonnegMatrix a = entangled_4x4();
  const RecoveryReport report = match_and_score(a, r1d(a, 2), two_blocks());
  ASSERT_EQ(report.factors.size(), 2u);
  EXPECT_EQ(report.factors[0].block, 1);
  EXPECT_EQ(report.factors[1].block, 0);
  // The factor rectangles coincide with the blocks; the 0.02 bridge is
  // outside both of them.
  EXPECT_EQ(report.factors[0].symdiff, 0.0);
  EXPECT_EQ(report.factors[1].symdiff, 0.0);
  EXPECT_EQ(report.purity, 1.0);
  EXPECT_EQ(report.assigned, 4);
  EXPECT_FALSE(report.degenerate);
  for (const BlockScore& b : report.blocks) {
    EXPECT_EQ(b.precision, 1.0);
    EXPECT_EQ(b.recall, 1.0);
  }
}

TEST(MatchTest, SingleTopicCorpus) {
  const Corpus corpus = generate_corpus(make_separable_model(10, 1, 0.0, 30, 1), 40, 2);
  const RecoveryReport report =
      match_and_score(corpus.counts, r1d(corpus.counts, 1), GroundTruth::from_corpus(corpus));
  EXPECT_EQ(report.purity, 1.0);
}

TEST(MatchTest, EmptyFactorizationIsDegenerate) {
  const NonnegMatrix a = NonnegMatrix::zeros(4, 4);
  const RecoveryReport report = match_and_score(a, r1d(a, 2), two_blocks());
  EXPECT_TRUE(report.degenerate);
  EXPECT_FALSE(report.purity.has_value());
}

TEST(MatchTest, InvariantUnderFactorOrder) {
  const TextModel model = make_separable_model(30, 3, 0.005, 64, 31);
  const Corpus corpus = generate_corpus(model, 150, 32);
  const GroundTruth truth = GroundTruth::from_corpus(corpus);
  const NmfFactors f = r1d(corpus.counts, 3);
  NmfFactors reversed = f;
  for (Index mu = 0; mu < 3; ++mu) {
    reversed.W.col(mu) = f.W.col(2 - mu);
    reversed.H.col(mu) = f.H.col(2 - mu);
    reversed.factors[static_cast<std::size_t>(mu)] = f.factors[static_cast<std::size_t>(2 - mu)];
  }
  const RecoveryReport x = match_and_score(corpus.counts, f, truth);
  const RecoveryReport y = match_and_score(corpus.counts, reversed, truth);
  for (int mu = 0; mu < 3; ++mu) {
    EXPECT_EQ(x.factors[static_cast<std::size_t>(mu)].block,
              y.factors[static_cast<std::size_t>(2 - mu)].block);
    EXPECT_EQ(x.factors[static_cast<std::size_t>(mu)].symdiff,
              y.factors[static_cast<std::size_t>(2 - mu)].symdiff);
  }
  EXPECT_EQ(x.purity, y.purity);
}

TEST(MatchTest, RejectsMismatchedTruth) {
  GroundTruth bad = two_blocks();
  bad.col_sets.pop_back();
  const NonnegMatrix a = entangled_4x4();
  EXPECT_THROW(match_and_score(a, r1d(a, 1), bad), InvalidParameter);
}

TEST(BaselineTest, SvdClusteringOnSeparatedBlocks) {
  const NonnegMatrix a(block_diagonal(2.0, 1.0));
  const BaselineReport b = svd_baseline(a, 2, two_blocks());
  EXPECT_NEAR(b.sigma(0), 4.0, 1e-9);
  EXPECT_NEAR(b.sigma(1), 2.0, 1e-9);
  EXPECT_EQ(b.purity, 1.0);
}

TEST(EntanglementTest, EntangledMatrix) {
  const GroundTruth truth = two_blocks();
  const EntanglementReport r = svd_entanglement_report(entangled_4x4(), 2, {}, &truth);
  EXPECT_GE(r.uniform_cosine, 0.99);
  EXPECT_NEAR(r.uniform_cosine, 0.999996811605755, 1e-9);
  EXPECT_FALSE(r.degenerate);
  ASSERT_EQ(r.factors.size(), 2u);
  EXPECT_GE(r.factors[0].cosines[1], 0.999);
  EXPECT_GE(r.factors[1].cosines[0], 0.999);
  EXPECT_GE(r.v.minCoeff(), 0.0);
}

TEST(EntanglementTest, HeavierBlockWinsWithoutNoise) {
  const GroundTruth truth = two_blocks();
  const EntanglementReport r =
      svd_entanglement_report(NonnegMatrix(block_diagonal(1.0, 1.5)), 2, {}, &truth);
  EXPECT_NEAR(r.cosines[1], 1.0, 1e-12);
  EXPECT_NEAR(r.cosines[0], 0.0, 1e-12);
  EXPECT_FALSE(r.degenerate);
}

TEST(EntanglementTest, EqualBlocksAreDegenerate) {
  const EntanglementReport r = svd_entanglement_report(NonnegMatrix(block_diagonal(1.0, 1.0)), 2);
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(r.sigma1, r.sigma2, 1e-12);
}

}  // namespace
}  // namespace r1d
