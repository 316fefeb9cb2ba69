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

#include "r1d/factorization.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "r1d/errors.h"
#include "r1d/spectral.h"

namespace r1d {
namespace {

constexpr double kUnitTol = 1e-8;

void check_gamma(double gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw InvalidParameter("gamma must be a finite value > 1, got " + std::to_string(gamma));
  }
}

// Unit on `set`, zero elsewhere.
void check_supported_unit(const Eigen::VectorXd& x, const IndexSet& set, const char* name) {
  if (x.size() != set.bound()) {
    throw ContractViolation(std::string(name) + " has length " + std::to_string(x.size()) +
                            ", expected " + std::to_string(set.bound()));
  }
  const std::vector<char> flags = set.to_flags();
  double norm_sq = 0.0;
  for (Index k = 0; k < x.size(); ++k) {
    if (flags[static_cast<std::size_t>(k)]) {
      norm_sq += x(k) * x(k);
    } else if (x(k) != 0.0) {
      throw ContractViolation(std::string(name) + " is nonzero outside its index set at " +
                              std::to_string(k));
    }
  }
  if (std::abs(std::sqrt(norm_sq) - 1.0) > kUnitTol) {
    throw ContractViolation(std::string(name) + " is not a unit vector on its index set");
  }
}

Index count(const std::vector<char>& flags) {
  return static_cast<Index>(std::count(flags.begin(), flags.end(), char{1}));
}

}  // namespace

void R1dParams::validate() const {
  check_gamma(gamma);
  if (!(eta_bar >= 0.0) || !std::isfinite(eta_bar)) {
    throw InvalidParameter("eta_bar must be finite and >= 0");
  }
  if (max_inner_iters < 1) throw InvalidParameter("max_inner_iters must be positive");
  if (!(stagnation_tol > 0.0)) throw InvalidParameter("stagnation_tol must be positive");
}

double objective_full(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                      const Eigen::VectorXd& u, const Eigen::VectorXd& v, double sigma,
                      double gamma) {
  check_gamma(gamma);
  const SubmatrixView view(a, rows, cols);
  check_supported_unit(u, rows, "u");
  check_supported_unit(v, cols, "v");
  const Eigen::MatrixXd block = view.to_dense();
  Eigen::VectorXd u_sub(rows.size());
  Eigen::VectorXd v_sub(cols.size());
  for (Index k = 0; k < rows.size(); ++k) u_sub(k) = u(rows[k]);
  for (Index k = 0; k < cols.size(); ++k) v_sub(k) = v(cols[k]);
  const Eigen::MatrixXd residual = block - sigma * u_sub * v_sub.transpose();
  return block.squaredNorm() - gamma * residual.squaredNorm();
}

double objective_spectral(const NonnegMatrix& a, const IndexSet& rows, const IndexSet& cols,
                          double gamma) {
  check_gamma(gamma);
  if (rows.empty() || cols.empty()) {
    throw DomainError("objective_spectral needs nonempty row and column sets");
  }
  return objective_spectral(SubmatrixView(a, rows, cols).to_dense(), gamma);
}

double objective_spectral(const Eigen::MatrixXd& block, double gamma) {
  check_gamma(gamma);
  if (block.size() == 0) throw DomainError("objective_spectral needs a nonempty block");
  const Eigen::VectorXd s = singular_values(block);
  double tail = 0.0;
  for (Index k = 1; k < s.size(); ++k) tail += s(k) * s(k);
  return s(0) * s(0) - (gamma - 1.0) * tail;
}

double row_score(const NonnegMatrix& a, Index row, const IndexSet& cols,
                 const Eigen::VectorXd& v, double gamma_bar, double rho_bar) {
  if (row < 0 || row >= a.rows()) throw IndexError("row " + std::to_string(row) + " out of range");
  if (cols.bound() != a.cols() || v.size() != a.cols()) {
    throw IndexError("column set or v does not match the matrix width");
  }
  double dot = 0.0;
  double norm_sq = 0.0;
  for (Index j : cols) {
    const double x = a(row, j);
    dot += x * v(j);
    norm_sq += x * x;
  }
  return gamma_bar * dot * dot - norm_sq - rho_bar * static_cast<double>(cols.size());
}

double col_score(const NonnegMatrix& a, Index col, const IndexSet& rows,
                 const Eigen::VectorXd& u, double gamma_bar, double rho_bar) {
  if (col < 0 || col >= a.cols()) throw IndexError("column " + std::to_string(col) + " out of range");
  if (rows.bound() != a.rows() || u.size() != a.rows()) {
    throw IndexError("row set or u does not match the matrix height");
  }
  const std::vector<char> in_rows = rows.to_flags();
  double dot = 0.0;
  double norm_sq = 0.0;
  a.for_each_in_column(col, [&](Index i, double x) {
    if (!in_rows[static_cast<std::size_t>(i)]) return;
    dot += x * u(i);
    norm_sq += x * x;
  });
  return gamma_bar * dot * dot - norm_sq - rho_bar * static_cast<double>(rows.size());
}

RankOneSubmatrix approx_rank_one_submatrix(const NonnegMatrix& a, const R1dParams& params) {
  params.validate();
  if (!a.has_positive_entry()) throw DomainError("no positive entry");

  const Index m = a.rows();
  const Index n = a.cols();
  const double gamma = params.gamma;
  const double gamma_bar = params.gamma_bar();

  // Seed: the largest column, u its normalization.
  const std::vector<double> col_norms = a.column_norms_sq();
  const Index j0 = std::max_element(col_norms.begin(), col_norms.end()) - col_norms.begin();
  double sigma = std::sqrt(col_norms[static_cast<std::size_t>(j0)]);

  RankOneSubmatrix out;
  out.seed_column = j0;
  out.rho = params.eta_bar * (gamma_bar - 1.0) * sigma * sigma / static_cast<double>(m);
  const double rho_bar = out.rho / (gamma - 1.0);

  std::vector<char> in_rows(static_cast<std::size_t>(m), 1);
  std::vector<char> in_cols(static_cast<std::size_t>(n), 0);
  in_cols[static_cast<std::size_t>(j0)] = 1;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(m);
  a.for_each_in_column(j0, [&](Index i, double x) { u(i) = x / sigma; });
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  v(j0) = 1.0;

  // With sigma u = A(M,N) v the residual is |A(M,N)|^2 - sigma^2, so the
  // objective reduces to gamma sigma^2 - (gamma - 1)|A(M,N)|^2.
  auto record = [&](double block_sq) {
    const double value = gamma * sigma * sigma - (gamma - 1.0) * block_sq;
    out.objective_trace.push_back(value);
    out.penalized_trace.push_back(value - out.rho * static_cast<double>(count(in_rows)) *
                                              static_cast<double>(count(in_cols)));
    if (params.record_history) {
      out.history.push_back(
          {IndexSet::from_flags(in_rows), IndexSet::from_flags(in_cols), u, v, sigma});
    }
  };
  record(col_norms[static_cast<std::size_t>(j0)]);

  Eigen::VectorXd vbar(n);
  Eigen::VectorXd col_sq(n);
  Eigen::VectorXd ubar(m);
  Eigen::VectorXd row_sq(m);
  std::vector<char> next_rows(in_rows.size());
  std::vector<char> next_cols(in_cols.size());

  for (int it = 1; it <= params.max_inner_iters; ++it) {
    // Columns, at fixed (u, M).
    vbar.setZero();
    col_sq.setZero();
    a.for_each_nonzero([&](Index i, Index j, double x) {
      if (!in_rows[static_cast<std::size_t>(i)]) return;
      vbar(j) += x * u(i);
      col_sq(j) += x * x;
    });
    const double row_penalty = rho_bar * static_cast<double>(count(in_rows));
    for (Index j = 0; j < n; ++j) {
      const bool admit = gamma_bar * vbar(j) * vbar(j) - col_sq(j) - row_penalty > 0.0;
      next_cols[static_cast<std::size_t>(j)] =
          admit || (params.monotone && in_cols[static_cast<std::size_t>(j)]);
    }
    double vnorm = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (next_cols[static_cast<std::size_t>(j)]) vnorm += vbar(j) * vbar(j);
    }
    vnorm = std::sqrt(vnorm);
    if (count(next_cols) == 0 || vnorm == 0.0) {
      out.empty_set_event = true;
      break;
    }
    Eigen::VectorXd next_v = Eigen::VectorXd::Zero(n);
    for (Index j = 0; j < n; ++j) {
      if (next_cols[static_cast<std::size_t>(j)]) next_v(j) = vbar(j) / vnorm;
    }

    // Rows, at fixed (v, N).
    ubar.setZero();
    row_sq.setZero();
    a.for_each_nonzero([&](Index i, Index j, double x) {
      if (!next_cols[static_cast<std::size_t>(j)]) return;
      ubar(i) += x * next_v(j);
      row_sq(i) += x * x;
    });
    const double col_penalty = rho_bar * static_cast<double>(count(next_cols));
    for (Index i = 0; i < m; ++i) {
      const bool admit = gamma_bar * ubar(i) * ubar(i) - row_sq(i) - col_penalty > 0.0;
      next_rows[static_cast<std::size_t>(i)] =
          admit && (!params.monotone || in_rows[static_cast<std::size_t>(i)]);
    }
    double next_sigma = 0.0;
    double block_sq = 0.0;
    for (Index i = 0; i < m; ++i) {
      if (!next_rows[static_cast<std::size_t>(i)]) continue;
      next_sigma += ubar(i) * ubar(i);
      block_sq += row_sq(i);
    }
    next_sigma = std::sqrt(next_sigma);
    if (count(next_rows) == 0 || next_sigma == 0.0) {
      out.empty_set_event = true;
      break;
    }

    const bool same_sets = next_rows == in_rows && next_cols == in_cols;
    const bool sigma_settled = std::abs(next_sigma - sigma) <= params.stagnation_tol * next_sigma;
    in_rows = next_rows;
    in_cols = next_cols;
    v = std::move(next_v);
    sigma = next_sigma;
    u.setZero();
    for (Index i = 0; i < m; ++i) {
      if (in_rows[static_cast<std::size_t>(i)]) u(i) = ubar(i) / sigma;
    }
    out.inner_iters = it;
    record(block_sq);
    if (same_sets && sigma_settled) {
      out.converged = true;
      break;
    }
  }

  out.rows = IndexSet::from_flags(in_rows);
  out.cols = IndexSet::from_flags(in_cols);
  out.u = u.cwiseMax(0.0);
  out.v = v.cwiseMax(0.0);
  out.sigma = sigma;
  out.objective = out.objective_trace.back();
  out.penalized_objective = out.penalized_trace.back();
  return out;
}

NmfFactors r1d(const NonnegMatrix& a, Index k, const R1dParams& params) {
  params.validate();
  if (k < 0 || k > std::min(a.rows(), a.cols())) {
    throw InvalidParameter("rank " + std::to_string(k) + " outside [0, min(m, n)] = [0, " +
                           std::to_string(std::min(a.rows(), a.cols())) + "]");
  }
  NmfFactors out{Eigen::MatrixXd::Zero(a.rows(), k), Eigen::MatrixXd::Zero(a.cols(), k), {}, 0, a};
  for (Index mu = 0; mu < k; ++mu) {
    if (!out.residual.has_positive_entry()) break;
    RankOneSubmatrix f = approx_rank_one_submatrix(out.residual, params);
    out.W.col(mu) = f.u;
    out.H.col(mu) = f.sigma * f.v;
    out.residual = out.residual.with_block_zeroed(f.rows, f.cols);
    out.factors.push_back(std::move(f));
    out.achieved_rank = mu + 1;
  }
  return out;
}

}  // namespace r1d
