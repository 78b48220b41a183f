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

// End-to-end walkthrough on the Bell state: quasi-probability table,
// maximal homogeneous gap, revision to the optimal protocol, and a short
// verification run against the worst-case bad state.

#include <cstdio>

#include "qsv/qsv.hpp"

int main() {
  using namespace qsv;

  const StateVector phi = bell();
  const Transformation t = Transformation::symmetric();

  const QuasiProbTable target = quasi_prob(phi.projector(), t);
  std::printf("p(Phi+) under the symmetric transformation (rows XX..ZZ):\n%s",
              to_csv(target).c_str());
  std::printf("completeness S = %s, min entry = %s\n\n",
              format_number(target.completeness()).c_str(),
              format_number(target.positivity_min()).c_str());

  const HomogeneousDesign ball = max_homogeneous_nu(phi, t);
  std::printf("local ball: a = %s, nu = %s (efficiency %s)\n",
              format_number(ball.a).c_str(), format_number(ball.nu).c_str(),
              format_number(1.0 / ball.nu).c_str());

  const Revision rev = revise(ball.table);
  std::printf("revision: a = %s, nu' = %s (efficiency %s)\n\n",
              format_number(rev.a).c_str(), format_number(rev.nu).c_str(),
              format_number(1.0 / rev.nu).c_str());

  const Protocol protocol =
      protocol_from_table(rev.table, phi, ProtocolKind::Homogeneous);
  std::printf("settings:\n");
  for (const auto& s : protocol.settings)
    std::printf("  %s with weight %s\n", s.axes.c_str(),
                format_number(s.weight).c_str());

  const double epsilon = 0.1, gamma = 0.05;
  const int copies = required_copies(epsilon, gamma, protocol.nu);
  const StateVector bad =
      worst_case_bad_state(protocol.effective_operator, phi, epsilon);
  const double accept_bad = simulate_verification(protocol, bad, copies, 20000, 7);
  const double accept_target = simulate_verification(protocol, phi, copies, 20000, 7);
  std::printf("\n%d copies for epsilon=%.2f, gamma=%.2f\n", copies, epsilon, gamma);
  std::printf("acceptance of worst-case bad state: %.4f (guarantee <= %.2f)\n",
              accept_bad, gamma);
  std::printf("acceptance of the target state:     %.4f\n", accept_target);
  return 0;
}
