// Copyright 2026 The QSV Toolkit Authors
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

// The W3 state is the interesting case: no homogeneous protocol is local
// under Pauli projections, so the toolkit walks the three alternatives --
// the inhomogeneous fallback, the adaptive (LOCC) protocol, and rescaled
// estimation.

#include <cstdio>

#include "qsv/qsv.hpp"

int main() {
  using namespace qsv;

  const StateVector w3 = w_state(3);
  const Transformation symmetric = Transformation::symmetric();

  const QuasiProbTable target = quasi_prob(w3.projector(), symmetric);
  std::printf("S(W3) = %s > 1: completeness fails, no local homogeneous protocol\n",
              format_number(target.completeness()).c_str());

  const Revision revised = revise(target, RevisionPolicy::AllowNegativeInput);
  std::printf("after revision: S = %s, still > 1\n\n",
              format_number(revised.table.completeness()).c_str());

  const Protocol fallback = inhomogeneous_fallback(w3, symmetric);
  std::printf("inhomogeneous fallback: %zu settings, nu = %s (efficiency %s)\n",
              fallback.settings.size(), format_number(fallback.nu).c_str(),
              format_number(1.0 / fallback.nu).c_str());

  const AdaptiveTree tree = adaptive_w3();
  const QuasiProbTable locc_table = flatten_adaptive(tree);
  const LocalityVerdict locc = check_locc(locc_table, 2);
  std::printf("adaptive protocol: S = %s <= %s, feasible under LOCC\n",
              format_number(locc.completeness).c_str(),
              format_number(locc.bound).c_str());
  const Protocol adaptive = adaptive_protocol(tree, w3);
  std::printf("adaptive nu = %s (efficiency %s)\n\n",
              format_number(adaptive.nu).c_str(),
              format_number(1.0 / adaptive.nu).c_str());

  // Estimation tolerates S > 1 after rescaling by S.
  auto [rescaled, scale] = rescale_for_estimation(revised.table);
  std::printf("rescaled table for estimation: scale = %s, S = %s\n",
              format_number(scale).c_str(),
              format_number(rescaled.completeness()).c_str());

  const WitnessReport report = witness(w3);
  std::printf("witness: kappa = %s, target expectation = %s\n",
              format_number(report.kappa).c_str(),
              format_number(report.expectation).c_str());
  return 0;
}
