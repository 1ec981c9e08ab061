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

#ifndef PCC_TESTS_TESTING_ORACLES_H_
#define PCC_TESTS_TESTING_ORACLES_H_

#include <vector>

namespace pcc::testing {

// c[i][j] = wins of i over j.
using CountTable = std::vector<std::vector<int>>;

// Bradley-Terry log-likelihood written out term by term.
double OracleLogLikelihood(const CountTable& c, const std::vector<double>& beta);

struct GridOptimum {
  std::vector<double> beta;  // reference entry is 0
  double log_likelihood = 0.0;
};

// Maximizes the log-likelihood over the lattice {lo + k * 1e-3} for every free
// coordinate. `full_grid` scans the whole lattice (practical for one or two
// free items); otherwise the scan runs coarse-to-fine (0.1 over the box, then
// 0.01 and 0.001 windows around the incumbent).
GridOptimum GridSearchMle(const CountTable& c, int reference, double lo = -5.0,
                          double hi = 5.0, bool full_grid = false);

}  // namespace pcc::testing

#endif  // PCC_TESTS_TESTING_ORACLES_H_
