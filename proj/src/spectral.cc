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

#include <algorithm>
#include <random>
#include <string>

namespace r1d {
namespace {

void check_finite(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw DomainError("matrix has non-finite entries");
}

void normalize_sign(SingularTriple& t) {
  if (t.u.sum() < 0.0) {
    t.u = -t.u;
    t.v = -t.v;
  }
}

SingularTriple power_from(const Eigen::MatrixXd& a, Eigen::VectorXd start,
                          const PowerOptions& options) {
  SingularTriple t;
  double norm = start.norm();
  if (norm == 0.0) throw DomainError("power iteration start vector is zero");
  t.u = start / norm;
  t.v = Eigen::VectorXd::Zero(a.cols());
  for (int it = 1; it <= options.max_iter; ++it) {
    Eigen::VectorXd vbar = a.transpose() * t.u;
    norm = vbar.norm();
    if (norm == 0.0) throw DomainError("start vector is orthogonal to the range of A");
    t.v = vbar / norm;
    Eigen::VectorXd ubar = a * t.v;
    t.sigma = ubar.norm();
    if (t.sigma == 0.0) throw DomainError("power iteration collapsed to zero");
    t.u = ubar / t.sigma;
    t.iterations = it;

    // A v - sigma u vanishes by construction; the transpose residual is the
    // one that measures convergence.
    const double left = (a * t.v - t.sigma * t.u).norm();
    const double right = (a.transpose() * t.u - t.sigma * t.v).norm();
    if (left <= options.tol * t.sigma && right <= options.tol * t.sigma) {
      normalize_sign(t);
      return t;
    }
  }
  normalize_sign(t);
  throw ConvergenceError("power iteration did not reach tolerance " +
                             std::to_string(options.tol) + " in " +
                             std::to_string(options.max_iter) + " iterations",
                         t);
}

Eigen::VectorXd gaussian_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd x(n);
  for (Index k = 0; k < n; ++k) x(k) = normal(rng);
  return x;
}

}  // namespace

SingularTriple power_triple(const Eigen::MatrixXd& a, const PowerOptions& options) {
  check_finite(a);
  if (a.size() == 0 || a.cwiseAbs().maxCoeff() == 0.0) {
    throw DomainError("power iteration needs a nonzero matrix");
  }
  std::mt19937_64 rng(options.seed);
  return power_from(a, gaussian_vector(a.rows(), rng), options);
}

SvdResult jordan_svd(const Eigen::MatrixXd& a, Index k, const PowerOptions& options) {
  check_finite(a);
  if (k < 0 || k > std::min(a.rows(), a.cols())) {
    throw InvalidParameter("rank " + std::to_string(k) + " outside [0, min(m, n)]");
  }
  SvdResult out{Eigen::MatrixXd::Zero(a.rows(), k), Eigen::VectorXd::Zero(k),
                Eigen::MatrixXd::Zero(a.cols(), k)};
  Eigen::MatrixXd residual = a;
  std::mt19937_64 rng(options.seed);
  for (Index mu = 0; mu < k; ++mu) {
    // An exactly deflated remainder has nothing left to extract.
    if (residual.cwiseAbs().maxCoeff() == 0.0) break;
    const SingularTriple t = power_from(residual, gaussian_vector(a.rows(), rng), options);
    residual -= t.sigma * t.u * t.v.transpose();
    out.U.col(mu) = t.u;
    out.V.col(mu) = t.v;
    out.sigma(mu) = t.sigma;
  }
  return out;
}

SvdResult dense_svd(const Eigen::MatrixXd& a) {
  check_finite(a);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return SvdResult{svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  check_finite(a);
  return Eigen::JacobiSVD<Eigen::MatrixXd>(a).singularValues();
}

}  // namespace r1d
