// Copyright 2026 The PCC Constitutions Authors.
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

#include "pcc/bradley_terry.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "Eigen/Dense"

namespace pcc {
namespace {

double Softplus(double x) { return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

double Logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Items reachable from `start` along edges (i, j) with edge(i, j) true.
std::vector<bool> Reach(int n, int start, const std::function<bool(int, int)>& edge) {
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {start};
  seen[start] = true;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    for (int j = 0; j < n; ++j) {
      if (!seen[j] && edge(i, j)) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  return seen;
}

bool All(const std::vector<bool>& v) {
  for (bool b : v) {
    if (!b) return false;
  }
  return true;
}

}  // namespace

int ComparisonCounts::IndexOf(std::string_view item) const {
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == item) return static_cast<int>(i);
  }
  return -1;
}

ComparisonCounts Tally(std::span<const std::pair<std::string, std::string>> pairs,
                       Dimension dimension, std::vector<std::string> items) {
  ComparisonCounts out;
  out.dimension = dimension;
  out.items = std::move(items);
  const int n = static_cast<int>(out.items.size());
  out.counts = Eigen::MatrixXi::Zero(n, n);
  for (const auto& [winner, loser] : pairs) {
    if (winner == loser) throw TallyError("self-comparison of \"" + winner + "\"");
    const int w = out.IndexOf(winner);
    const int l = out.IndexOf(loser);
    if (w < 0) throw TallyError("unknown item \"" + winner + "\"");
    if (l < 0) throw TallyError("unknown item \"" + loser + "\"");
    ++out.counts(w, l);
  }
  return out;
}

double BTFit::WinProbability(std::string_view a, std::string_view b) const {
  return Logistic(beta.at(std::string(a)) - beta.at(std::string(b)));
}

double BTLogLikelihood(const Eigen::MatrixXi& counts, const Eigen::VectorXd& beta) {
  double ll = 0.0;
  for (int i = 0; i < counts.rows(); ++i) {
    for (int j = 0; j < counts.cols(); ++j) {
      if (i != j && counts(i, j) > 0) ll -= counts(i, j) * Softplus(beta(j) - beta(i));
    }
  }
  return ll;
}

BTFit FitBradleyTerry(const ComparisonCounts& counts, std::string_view reference,
                      const BTOptions& options) {
  const int total_items = static_cast<int>(counts.items.size());
  std::vector<int> active;
  for (int i = 0; i < total_items; ++i) {
    if (counts.counts.row(i).sum() + counts.counts.col(i).sum() > 0) active.push_back(i);
  }
  const int n = static_cast<int>(active.size());
  int ref = -1;
  for (int k = 0; k < n; ++k) {
    if (counts.items[active[k]] == reference) ref = k;
  }
  if (ref < 0) {
    throw FitError(FitError::Kind::kNoReferenceData,
                   "reference \"" + std::string(reference) + "\" has no comparisons");
  }

  Eigen::MatrixXi c(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) c(a, b) = counts.counts(active[a], active[b]);
  }
  const Eigen::MatrixXi games = c + c.transpose();

  if (!All(Reach(n, ref, [&](int i, int j) { return games(i, j) > 0; }))) {
    throw FitError(FitError::Kind::kDisconnected, "comparison graph is disconnected");
  }
  // The MLE is finite iff the win graph is strongly connected.
  const bool forward = All(Reach(n, ref, [&](int i, int j) { return c(i, j) > 0; }));
  const bool backward = All(Reach(n, ref, [&](int i, int j) { return c(j, i) > 0; }));
  if (!forward || !backward) {
    throw FitError(FitError::Kind::kDivergent,
                   "an item group never loses (or never wins) against the rest; the MLE is "
                   "infinite");
  }

  std::vector<int> free;
  for (int k = 0; k < n; ++k) {
    if (k != ref) free.push_back(k);
  }
  const int m = static_cast<int>(free.size());

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
  auto score_and_info = [&](const Eigen::VectorXd& b, Eigen::VectorXd& g, Eigen::MatrixXd& info) {
    Eigen::VectorXd full_g = Eigen::VectorXd::Zero(n);
    Eigen::MatrixXd full_info = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || games(i, j) == 0) continue;
        const double p = Logistic(b(i) - b(j));
        full_g(i) += c(i, j) - games(i, j) * p;
        full_info(i, i) += games(i, j) * p * (1 - p);
        full_info(i, j) -= games(i, j) * p * (1 - p);
      }
    }
    g.resize(m);
    info.resize(m, m);
    for (int a = 0; a < m; ++a) {
      g(a) = full_g(free[a]);
      for (int b2 = 0; b2 < m; ++b2) info(a, b2) = full_info(free[a], free[b2]);
    }
  };

  BTFit fit;
  fit.dimension = counts.dimension;
  fit.reference = std::string(reference);
  Eigen::VectorXd g;
  Eigen::MatrixXd info;
  double ll = BTLogLikelihood(c, beta);
  int iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    score_and_info(beta, g, info);
    if (m == 0 || g.cwiseAbs().maxCoeff() < options.tolerance) {
      fit.converged = true;
      break;
    }
    const Eigen::VectorXd delta = info.ldlt().solve(g);
    double step = 1.0;
    Eigen::VectorXd candidate = beta;
    for (int halvings = 0; halvings < 60; ++halvings) {
      candidate = beta;
      for (int a = 0; a < m; ++a) candidate(free[a]) += step * delta(a);
      if (BTLogLikelihood(c, candidate) >= ll - 1e-12 * std::abs(ll)) break;
      step /= 2;
    }
    beta = candidate;
    ll = BTLogLikelihood(c, beta);
  }
  score_and_info(beta, g, info);
  if (!fit.converged && (m == 0 || g.cwiseAbs().maxCoeff() < options.tolerance)) {
    fit.converged = true;
  }

  fit.iterations = iter;
  fit.gradient_max_norm = m == 0 ? 0.0 : g.cwiseAbs().maxCoeff();
  fit.log_likelihood = ll;
  const Eigen::MatrixXd covariance =
      m == 0 ? Eigen::MatrixXd() : Eigen::MatrixXd(info.inverse());
  std::vector<double> se(n, 0.0);
  for (int a = 0; a < m; ++a) se[free[a]] = std::sqrt(std::max(0.0, covariance(a, a)));
  for (int k = 0; k < n; ++k) {
    const std::string& name = counts.items[active[k]];
    fit.items.push_back(name);
    fit.beta[name] = beta(k);
    fit.standard_error[name] = se[k];
    fit.ci95[name] = {beta(k) - kZ95 * se[k], beta(k) + kZ95 * se[k]};
  }
  return fit;
}

}  // namespace pcc
