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

#include "r1d/spectral.h"

#include <gtest/gtest.h>

#include <cmath>

#include "r1d/errors.h"
#include "test_util.h"

namespace r1d {
namespace {

using ::r1d::testing::entangled_4x4;
using ::r1d::testing::gaussian_matrix;
using ::r1d::testing::uniform_matrix;

double orthogonality_error(const Eigen::MatrixXd& q) {
  return (q.transpose() * q - Eigen::MatrixXd::Identity(q.cols(), q.cols())).cwiseAbs().maxCoeff();
}

TEST(PowerTripleTest, Diagonal) {
  const Eigen::MatrixXd a = Eigen::Vector2d(3.0, 1.0).asDiagonal();
  const SingularTriple t = power_triple(a);
  EXPECT_NEAR(t.sigma, 3.0, 1e-10);
  EXPECT_NEAR(std::abs(t.u(0)), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(t.v(0)), 1.0, 1e-10);
}

TEST(PowerTripleTest, RankOneConvergesImmediately) {
  const Eigen::Vector3d x(1.0, 2.0, 2.0);
  const Eigen::Vector4d y(1.0, 0.0, 3.0, 1.0);
  const SingularTriple t = power_triple(x * y.transpose());
  EXPECT_LE(t.iterations, 2);
  EXPECT_NEAR(t.sigma, x.norm() * y.norm(), 1e-12);
  EXPECT_NEAR((t.u - x.normalized()).norm(), 0.0, 1e-12);
  EXPECT_NEAR((t.v - y.normalized()).norm(), 0.0, 1e-12);
}

TEST(PowerTripleTest, EntangledVectorIsNearlyUniform) {
  PowerOptions options;
  options.max_iter = 5000;  // sigma_2 / sigma_1 ~ 0.99
  const SingularTriple t = power_triple(entangled_4x4().to_dense(), options);
  EXPECT_NEAR(t.sigma, 2.01002500110006, 1e-9);
  EXPECT_GT(t.v.minCoeff(), 0.0);
  EXPECT_LE(t.v.maxCoeff() / t.v.minCoeff(), 1.1);
  EXPECT_NEAR(t.v(0), 0.49873579, 1e-6);
  EXPECT_NEAR(t.v(2), 0.50126102, 1e-6);
}

TEST(PowerTripleTest, NearTieFailsWithinDefaultBudget) {
  try {
    power_triple(Eigen::Vector2d(1.0, 0.9999).asDiagonal().toDenseMatrix());
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.last_iterate().sigma, 0.9999);
    EXPECT_EQ(e.last_iterate().iterations, 1000);
  }
}

TEST(PowerTripleTest, RejectsZeroAndNonFinite) {
  EXPECT_THROW(power_triple(Eigen::MatrixXd::Zero(2, 2)), DomainError);
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(2, 2);
  a(0, 1) = std::nan("");
  EXPECT_THROW(power_triple(a), DomainError);
}

TEST(PowerTripleTest, ResidualsWithinTolerance) {
  const Eigen::MatrixXd a = uniform_matrix(12, 9, 5);
  const SingularTriple t = power_triple(a);
  EXPECT_LE((a * t.v - t.sigma * t.u).norm(), 1e-10 * t.sigma);
  EXPECT_LE((a.transpose() * t.u - t.sigma * t.v).norm(), 1e-10 * t.sigma);
  EXPECT_GE(t.u.sum(), 0.0);
}

TEST(PowerTripleTest, PerronFrobeniusOnNonnegativeInput) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const SingularTriple t = power_triple(uniform_matrix(8, 6, 100 + seed));
    EXPECT_GE(t.u.minCoeff(), -1e-12) << seed;
    EXPECT_GE(t.v.minCoeff(), -1e-12) << seed;
  }
}

TEST(PowerTripleTest, DeterministicForFixedSeed) {
  const Eigen::MatrixXd a = gaussian_matrix(7, 5, 3);
  const SingularTriple x = power_triple(a);
  const SingularTriple y = power_triple(a);
  EXPECT_EQ(x.u, y.u);
  EXPECT_EQ(x.sigma, y.sigma);
}

TEST(JordanSvdTest, DiagonalRecovered) {
  const Eigen::MatrixXd a = Eigen::Vector3d(3.0, 2.0, 1.0).asDiagonal();
  const SvdResult r = jordan_svd(a, 3);
  EXPECT_NEAR(r.sigma(0), 3.0, 1e-10);
  EXPECT_NEAR(r.sigma(1), 2.0, 1e-10);
  EXPECT_NEAR(r.sigma(2), 1.0, 1e-10);
  EXPECT_NEAR(r.U.cwiseAbs().diagonal().minCoeff(), 1.0, 1e-9);
  EXPECT_NEAR(r.V.cwiseAbs().diagonal().minCoeff(), 1.0, 1e-9);
}

TEST(JordanSvdTest, RankTwoReconstruction) {
  const Eigen::MatrixXd a = gaussian_matrix(6, 2, 1) * gaussian_matrix(2, 5, 2);
  const SvdResult r = jordan_svd(a, 2);
  const Eigen::MatrixXd rebuilt = r.U * r.sigma.asDiagonal() * r.V.transpose();
  EXPECT_LE((a - rebuilt).norm(), 1e-8 * a.norm());
}

TEST(JordanSvdTest, MatchesDenseOnRandomMatrix) {
  const Eigen::MatrixXd a = gaussian_matrix(20, 15, 11);
  PowerOptions options;
  options.max_iter = 20000;
  const SvdResult greedy = jordan_svd(a, 5, options);
  const Eigen::VectorXd exact = singular_values(a);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(greedy.sigma(k), exact(k), 1e-8 * exact(k));
  const double residual =
      (a - greedy.U * greedy.sigma.asDiagonal() * greedy.V.transpose()).squaredNorm();
  const double trailing = exact.tail(exact.size() - 5).squaredNorm();
  EXPECT_NEAR(residual, trailing, 1e-6 * trailing);
  EXPECT_LE(orthogonality_error(greedy.U), 1e-8);
  EXPECT_LE(orthogonality_error(greedy.V), 1e-8);
}

TEST(JordanSvdTest, RejectsBadRank) {
  EXPECT_THROW(jordan_svd(Eigen::MatrixXd::Ones(2, 3), 3), InvalidParameter);
  EXPECT_THROW(jordan_svd(Eigen::MatrixXd::Ones(2, 3), -1), InvalidParameter);
}

TEST(DenseSvdTest, Identity) {
  const SvdResult r = dense_svd(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_EQ(r.sigma.size(), 3);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(r.sigma(k), 1.0, 1e-15);
}

TEST(DenseSvdTest, AllOnes) {
  const Eigen::VectorXd s = singular_values(Eigen::MatrixXd::Ones(2, 3));
  ASSERT_EQ(s.size(), 2);
  EXPECT_NEAR(s(0), std::sqrt(6.0), 1e-14);
  EXPECT_NEAR(s(1), 0.0, 1e-14);
}

TEST(DenseSvdTest, EntangledPairIsNearlyDegenerate) {
  const Eigen::VectorXd s = singular_values(entangled_4x4().to_dense());
  ASSERT_EQ(s.size(), 4);
  EXPECT_NEAR(s(0), 2.01002500110006, 1e-12);
  EXPECT_NEAR(s(1), 1.99022599092483, 1e-12);
  EXPECT_NEAR(s(2), 0.0, 1e-12);
  EXPECT_GT(s(1) / s(0), 0.98);
  EXPECT_LT(s(1) / s(0), 1.0);
}

TEST(DenseSvdTest, ReconstructsAndIsOrdered) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Eigen::MatrixXd a = gaussian_matrix(7 + seed % 3, 5, seed);
    const SvdResult r = dense_svd(a);
    EXPECT_LE((a - r.U * r.sigma.asDiagonal() * r.V.transpose()).norm(), 1e-10 * a.norm());
    for (Eigen::Index k = 1; k < r.sigma.size(); ++k) EXPECT_GE(r.sigma(k - 1), r.sigma(k));
    EXPECT_GE(r.sigma.minCoeff(), 0.0);
  }
}

TEST(DenseSvdTest, PowerTripleAgreesWhenGapIsClear) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Eigen::MatrixXd a = gaussian_matrix(9, 6, 40 + seed);
    const Eigen::VectorXd s = singular_values(a);
    if (s(0) / s(1) < 1.1) continue;
    PowerOptions options;
    options.max_iter = 20000;
    EXPECT_NEAR(power_triple(a, options).sigma, s(0), 1e-8 * s(0));
    ++checked;
  }
  EXPECT_GT(checked, 5);
}

}  // namespace
}  // namespace r1d
