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

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsv/pauli.hpp"
#include "qsv/states.hpp"

namespace qsv {

/// Outcome of the realizability test of a quasi-probability table. A table
/// is realizable iff every entry is nonnegative and the completeness sum S
/// stays within the bound (1 for nonadaptive local measurements, s^(n-1)
/// under LOCC).
struct LocalityVerdict {
  double positivity_min = 0.0;
  double completeness = 0.0;
  double bound = 1.0;
  bool local = false;
  std::string mode;
};

inline LocalityVerdict check_local(const QuasiProbTable& table) {
  LocalityVerdict v;
  v.positivity_min = table.positivity_min();
  v.completeness = table.completeness();
  v.bound = 1.0;
  v.local = v.positivity_min >= -kAlgebraTol && v.completeness <= v.bound + kAlgebraTol;
  v.mode = "nonadaptive";
  return v;
}

inline LocalityVerdict check_locc(const QuasiProbTable& table, int s) {
  if (s < 2) throw std::invalid_argument("LOCC outcome count s must be >= 2");
  LocalityVerdict v;
  v.positivity_min = table.positivity_min();
  v.completeness = table.completeness();
  v.bound = std::pow(static_cast<double>(s), table.qubit_count() - 1);
  v.local = v.positivity_min >= -kAlgebraTol && v.completeness <= v.bound + kAlgebraTol;
  v.mode = "locc(" + std::to_string(s) + ")";
  return v;
}

/// Omega_Hom = (1-nu) 1 + nu |psi><psi|; eigenvalues are one 1 and 2^n - 1
/// copies of 1-nu, so the spectral gap is exactly nu.
inline Matrix homogeneous_operator(const StateVector& psi, double nu) {
  if (!(nu > 0.0 && nu <= 1.0 + 1e-12))
    throw std::invalid_argument("homogeneous protocol requires 0 < nu <= 1");
  Matrix omega = Matrix::identity(psi.dim());
  omega *= cdouble(1.0 - nu);
  omega += psi.projector() * cdouble(nu);
  return omega;
}

/// Result of maximizing nu over the local ball around the identity.
struct HomogeneousDesign {
  double a = 0.0;   // identity multiple at the positivity boundary
  double nu = 0.0;  // 1 / (1 - a)
  QuasiProbTable table;  // table of the homogeneous operator at that nu
  double completeness = 0.0;  // S of the target-state table
};

namespace detail {

// p_i(1) under a weighted transformation is outcome-independent:
// the product of the per-qubit t0 weights of the setting's axes.
inline double identity_row_value(const Transformation& t,
                                 const QuasiProbTable& table, std::size_t setting) {
  double v = 1.0;
  for (int qb = 0; qb < table.qubit_count(); ++qb)
    v *= t.weights()[table.setting_axis(setting, qb)];
  return v;
}

}  // namespace detail

/// Largest a with p_i(psi) - a p_i(1) >= 0 for all i (a may be negative),
/// giving nu = 1/(1-a) and the table of (1-nu) 1 + nu |psi><psi|. Positivity
/// only; completeness is the caller's business. Throws InfeasibleError when
/// some entry has p_i(1) = 0 and p_i(psi) < 0, since no amount of identity
/// can heal such an entry.
inline HomogeneousDesign homogeneous_local_ball(const StateVector& psi,
                                                const Transformation& t) {
  QuasiProbTable target = quasi_prob(psi.projector(), t);
  double a = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < target.num_settings(); ++s) {
    const double pid = detail::identity_row_value(t, target, s);
    for (std::size_t o = 0; o < target.num_outcomes(); ++o) {
      const double v = target.value(s, o);
      if (pid > 0.0) {
        a = std::min(a, v / pid);
      } else if (v < -kAlgebraTol) {
        throw InfeasibleError(
            "no local homogeneous protocol: setting " + target.setting_label(s) +
            " outcome " + target.outcome_label(o) +
            " has a negative quasi-probability outside the identity support");
      }
    }
  }
  if (!(a < 1.0 - 1e-12))
    throw InfeasibleError("degenerate local ball: a >= 1");

  const double completeness = target.completeness();
  for (std::size_t s = 0; s < target.num_settings(); ++s) {
    const double pid = detail::identity_row_value(t, target, s);
    for (std::size_t o = 0; o < target.num_outcomes(); ++o)
      target.value(s, o) = (target.value(s, o) - a * pid) / (1.0 - a);
  }
  return {a, 1.0 / (1.0 - a), std::move(target), completeness};
}

/// homogeneous_local_ball plus the completeness demand
/// (bound 1 nonadaptively, s^(n-1) under LOCC). Throws CompletenessError
/// carrying S when the target-state table violates the bound.
inline HomogeneousDesign max_homogeneous_nu(const StateVector& psi,
                                            const Transformation& t,
                                            double completeness_bound = 1.0) {
  HomogeneousDesign design = homogeneous_local_ball(psi, t);
  if (design.completeness > completeness_bound + kAlgebraTol) {
    throw CompletenessError(
        "completeness constraint violated: S = " +
            format_number(design.completeness) + " > " +
            format_number(completeness_bound),
        design.completeness, completeness_bound);
  }
  return design;
}

/// Revision: delete the null operation hidden in each setting. With
/// a = sum_i min_j p_{i,j}, the revised table is (p - rowmin) / (1-a) and
/// reconstructs to (Omega - a 1) / (1-a); a homogeneous input with gap nu
/// comes out homogeneous with gap nu / (1-a).
struct Revision {
  double a = 0.0;
  QuasiProbTable table;
  double nu = 0.0;  // spectral gap of the revised operator
};

enum class RevisionPolicy {
  RequireNonnegative,  // reject tables with negative entries
  AllowNegativeInput,  // general-t0 route: row minima may be negative
};

inline Revision revise(const QuasiProbTable& table,
                       RevisionPolicy policy = RevisionPolicy::RequireNonnegative) {
  if (policy == RevisionPolicy::RequireNonnegative &&
      table.positivity_min() < -kAlgebraTol) {
    throw std::invalid_argument("revise expects a nonnegative table");
  }
  double a = 0.0;
  for (std::size_t s = 0; s < table.num_settings(); ++s) a += table.row_min(s);
  if (a >= 1.0 - kAlgebraTol)
    throw InfeasibleError("cannot revise: the protocol is a pure identity");

  QuasiProbTable revised = table;
  for (std::size_t s = 0; s < revised.num_settings(); ++s) {
    const double m = table.row_min(s);
    for (std::size_t o = 0; o < revised.num_outcomes(); ++o)
      revised.value(s, o) = (table.value(s, o) - m) / (1.0 - a);
  }
  Revision out{a, std::move(revised), 0.0};
  out.nu = spectral_gap(reconstruct(out.table));
  return out;
}

enum class ProtocolKind { Homogeneous, Inhomogeneous, Stabilizer, Adaptive };

inline std::string to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::Homogeneous: return "homogeneous";
    case ProtocolKind::Inhomogeneous: return "inhomogeneous";
    case ProtocolKind::Stabilizer: return "stabilizer";
    case ProtocolKind::Adaptive: return "adaptive";
  }
  return "?";
}

inline ProtocolKind protocol_kind_from_string(const std::string& s) {
  if (s == "homogeneous") return ProtocolKind::Homogeneous;
  if (s == "inhomogeneous") return ProtocolKind::Inhomogeneous;
  if (s == "stabilizer") return ProtocolKind::Stabilizer;
  if (s == "adaptive") return ProtocolKind::Adaptive;
  throw std::invalid_argument("unknown protocol kind: " + s);
}

/// One nonadaptive test: measure the given axes (one of XYZ per qubit) and
/// pass outcome j with probability pass[j].
struct ProtocolSetting {
  double weight = 0.0;
  std::string axes;          // one of X,Y,Z per qubit
  std::vector<double> pass;  // indexed by outcome bits, qubit 0 most significant
};

/// Adaptive (LOCC) measurement tree. Nodes pick a qubit and
/// an axis with probability `prob`, then branch on the +/- outcome; negative
/// child handles address leaf accept probabilities. Each root-to-leaf path
/// measures every qubit exactly once.
struct AdaptiveTree {
  struct Choice {
    int axis = 0;  // 0:X 1:Y 2:Z
    double prob = 0.0;
    std::array<int, 2> child{0, 0};  // >=0: node index, <0: leaf ~index
  };
  struct Node {
    int qubit = 0;
    std::vector<Choice> choices;
  };

  int n = 0;
  std::vector<Node> nodes;
  std::vector<double> leaf_accept;
  std::vector<std::pair<double, int>> roots;  // (weight, node index)

  int add_node(Node node) {
    nodes.push_back(std::move(node));
    return static_cast<int>(nodes.size()) - 1;
  }
  int add_leaf(double accept) {
    leaf_accept.push_back(accept);
    return -static_cast<int>(leaf_accept.size());
  }
  static bool is_leaf(int child) { return child < 0; }
  double leaf(int child) const {
    return leaf_accept[static_cast<std::size_t>(-child - 1)];
  }
};

namespace detail {

inline void validate_tree(const AdaptiveTree& tree) {
  if (tree.roots.empty()) throw std::invalid_argument("adaptive tree has no roots");
  double total = 0.0;
  for (const auto& [w, root] : tree.roots) {
    if (w < -kAlgebraTol) throw std::invalid_argument("negative permutation weight");
    if (root < 0 || root >= static_cast<int>(tree.nodes.size()))
      throw std::invalid_argument("adaptive tree root out of range");
    total += w;
  }
  if (std::abs(total - 1.0) > kAlgebraTol)
    throw std::invalid_argument("permutation weights must sum to 1");
  for (const auto& node : tree.nodes) {
    if (node.qubit < 0 || node.qubit >= tree.n)
      throw std::invalid_argument("adaptive tree qubit out of range");
    double q = 0.0;
    for (const auto& choice : node.choices) {
      if (choice.axis < 0 || choice.axis > 2)
        throw std::invalid_argument("adaptive tree axis out of range");
      if (choice.prob < -kAlgebraTol)
        throw std::invalid_argument("negative branch probability");
      q += choice.prob;
    }
    if (std::abs(q - 1.0) > kAlgebraTol)
      throw std::invalid_argument("branch probabilities must sum to 1");
  }
  for (double z : tree.leaf_accept)
    if (z < -kAlgebraTol || z > 1.0 + kAlgebraTol)
      throw std::invalid_argument("leaf accept probability outside [0,1]");
}

// Walks every root-to-leaf path; `visit(axes, outcomes, prob, accept)` gets
// the per-qubit axis/outcome assignment of the completed path.
template <typename Visitor>
void walk_tree(const AdaptiveTree& tree, Visitor&& visit) {
  std::vector<int> axes(tree.n, -1), outcomes(tree.n, -1);
  auto dfs = [&](auto&& self, int child, double prob) -> void {
    if (AdaptiveTree::is_leaf(child)) {
      for (int qb = 0; qb < tree.n; ++qb)
        if (axes[qb] < 0)
          throw std::invalid_argument(
              "malformed adaptive tree: a path skips qubit " + std::to_string(qb));
      visit(axes, outcomes, prob, tree.leaf(child));
      return;
    }
    const auto& node = tree.nodes[static_cast<std::size_t>(child)];
    if (axes[node.qubit] >= 0)
      throw std::invalid_argument("malformed adaptive tree: qubit measured twice");
    for (const auto& choice : node.choices) {
      axes[node.qubit] = choice.axis;
      for (int oc = 0; oc < 2; ++oc) {
        outcomes[node.qubit] = oc;
        self(self, choice.child[oc], prob * choice.prob);
      }
    }
    axes[node.qubit] = -1;
    outcomes[node.qubit] = -1;
  };
  for (const auto& [w, root] : tree.roots)
    if (w > 0.0) dfs(dfs, root, w);
}

inline Matrix projector_tensor(int n, const std::vector<int>& axes,
                               const std::vector<int>& outcomes) {
  Matrix m = Matrix::identity(1);
  for (int qb = 0; qb < n; ++qb) m = kron(m, pauli_projector(axes[qb], outcomes[qb]));
  return m;
}

}  // namespace detail

/// Effective operator of an adaptive tree: the sum over root-to-leaf paths
/// of path probability x leaf accept x the path's projector tensor.
inline Matrix evaluate_adaptive(const AdaptiveTree& tree) {
  detail::validate_tree(tree);
  Matrix omega(std::size_t{1} << tree.n);
  detail::walk_tree(tree, [&](const std::vector<int>& axes,
                              const std::vector<int>& outcomes, double prob,
                              double accept) {
    if (prob * accept == 0.0) return;
    omega += detail::projector_tensor(tree.n, axes, outcomes) *
             cdouble(prob * accept);
  });
  return omega;
}

/// LOCC quasi-probability distribution of an adaptive tree,
/// p_{i,j} = sum_k mu_k q_{i,j,k}; the object the LOCC feasibility check tests.
inline QuasiProbTable flatten_adaptive(const AdaptiveTree& tree) {
  detail::validate_tree(tree);
  QuasiProbTable table = QuasiProbTable::zeros(tree.n);
  detail::walk_tree(tree, [&](const std::vector<int>& axes,
                              const std::vector<int>& outcomes, double prob,
                              double accept) {
    std::size_t setting = 0, outcome = 0;
    for (int qb = 0; qb < tree.n; ++qb) {
      setting = setting * 3 + static_cast<std::size_t>(axes[qb]);
      outcome = outcome * 2 + static_cast<std::size_t>(outcomes[qb]);
    }
    table.value(setting, outcome) += prob * accept;
  });
  return table;
}

/// A realizable verification strategy. Either a weighted list of nonadaptive
/// settings or an adaptive tree; the effective operator fixes the target and
/// its spectral gap nu drives the sample complexity.
struct Protocol {
  int n = 0;
  ProtocolKind kind = ProtocolKind::Homogeneous;
  std::vector<ProtocolSetting> settings;
  std::optional<AdaptiveTree> tree;
  Matrix effective_operator;
  double nu = 0.0;
};

/// Born probabilities of the 2^n outcomes when each qubit is measured along
/// the given axis (0:X 1:Y 2:Z).
inline std::vector<double> born_probabilities(const StateVector& psi,
                                              const std::string& axes) {
  const int n = psi.qubit_count();
  if (static_cast<int>(axes.size()) != n)
    throw std::invalid_argument("axes string length mismatch");
  std::vector<cdouble> amp = psi.amplitudes();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int qb = 0; qb < n; ++qb) {
    const char axis = axes[qb];
    if (axis == 'Z') continue;
    if (axis != 'X' && axis != 'Y')
      throw std::invalid_argument("axes must be one of X, Y, Z");
    const std::size_t mask = std::size_t{1} << (n - 1 - qb);
    for (std::size_t j = 0; j < amp.size(); ++j) {
      if (j & mask) continue;
      const cdouble a0 = amp[j];
      const cdouble a1 = amp[j | mask];
      if (axis == 'X') {
        amp[j] = (a0 + a1) * inv_sqrt2;
        amp[j | mask] = (a0 - a1) * inv_sqrt2;
      } else {  // Y: rows of U^dagger for eigenvectors (|0> +- i|1>)/sqrt(2)
        amp[j] = (a0 - cdouble(0, 1) * a1) * inv_sqrt2;
        amp[j | mask] = (a0 + cdouble(0, 1) * a1) * inv_sqrt2;
      }
    }
  }
  std::vector<double> probs(amp.size());
  for (std::size_t j = 0; j < amp.size(); ++j) probs[j] = std::norm(amp[j]);
  return probs;
}

namespace detail {

inline void validate_target_pass(const Protocol& protocol, const StateVector& psi) {
  for (const auto& setting : protocol.settings) {
    if (setting.weight <= 0.0) continue;
    const std::vector<double> born = born_probabilities(psi, setting.axes);
    double pass = 0.0;
    for (std::size_t o = 0; o < born.size(); ++o)
      pass += setting.pass[o] * born[o];
    if (std::abs(pass - 1.0) > kAlgebraTol)
      throw InfeasibleError("setting " + setting.axes +
                            " does not pass the target with certainty (got " +
                            format_number(pass) + ")");
  }
}

}  // namespace detail

/// Converts a nonnegative table with S = 1 into a realizable protocol:
/// mu_i = max_j p_{i,j}, z_{i,j} = p_{i,j} / mu_i. Validates that every
/// kept setting passes the target with certainty.
inline Protocol protocol_from_table(const QuasiProbTable& table,
                                    const StateVector& target,
                                    ProtocolKind kind) {
  if (table.qubit_count() != target.qubit_count())
    throw std::invalid_argument("table/target qubit count mismatch");
  if (table.positivity_min() < -kAlgebraTol)
    throw std::invalid_argument("protocol table has negative entries");
  const double s = table.completeness();
  if (std::abs(s - 1.0) > kAlgebraTol)
    throw InfeasibleError("table completeness S = " + format_number(s) +
                          " != 1; not realizable as setting weights");

  Protocol protocol;
  protocol.n = table.qubit_count();
  protocol.kind = kind;
  for (std::size_t st = 0; st < table.num_settings(); ++st) {
    const double mu = table.row_max(st);
    if (mu <= kAlgebraTol) continue;
    ProtocolSetting setting;
    setting.weight = mu;
    setting.axes = table.setting_label(st);
    setting.pass.resize(table.num_outcomes());
    for (std::size_t o = 0; o < table.num_outcomes(); ++o) {
      double z = table.value(st, o) / mu;
      if (z > 1.0 - kAlgebraTol) z = 1.0;  // snap so sure passes stay sure
      if (z < 1e-12) z = 0.0;
      setting.pass[o] = z;
    }
    protocol.settings.push_back(std::move(setting));
  }
  protocol.effective_operator = reconstruct(table);
  protocol.nu = spectral_gap(protocol.effective_operator);
  detail::validate_target_pass(protocol, target);
  return protocol;
}

/// Keeps the settings of the revised target table whose support covers the
/// target's Born support, i.e. those whose pass test satisfies
/// tr(Omega_i |psi><psi|) = 1, accepting exactly the outcomes the target can
/// produce. Uniform weights. The route that recovers a valid W3 protocol
/// when no homogeneous one is local.
inline Protocol inhomogeneous_fallback(const StateVector& psi,
                                       const Transformation& t) {
  QuasiProbTable target = quasi_prob(psi.projector(), t);
  const QuasiProbTable table =
      revise(target, RevisionPolicy::AllowNegativeInput).table;
  const std::size_t outcomes = table.num_outcomes();

  std::vector<std::pair<std::size_t, std::vector<double>>> kept;
  for (std::size_t st = 0; st < table.num_settings(); ++st) {
    const std::vector<double> born = born_probabilities(psi, table.setting_label(st));
    std::vector<double> pass(outcomes, 0.0);
    bool covered = true;
    for (std::size_t o = 0; o < outcomes; ++o) {
      if (born[o] <= 1e-9) continue;
      pass[o] = 1.0;
      covered = covered && table.value(st, o) > 1e-9;
    }
    if (covered) kept.emplace_back(st, std::move(pass));
  }
  if (kept.empty())
    throw InfeasibleError("no setting passes the target with certainty");

  Protocol protocol;
  protocol.n = psi.qubit_count();
  protocol.kind = ProtocolKind::Inhomogeneous;
  const double mu = 1.0 / static_cast<double>(kept.size());
  Matrix omega(psi.dim());
  for (auto& [st, pass] : kept) {
    ProtocolSetting setting;
    setting.weight = mu;
    setting.axes = table.setting_label(st);
    setting.pass = std::move(pass);
    for (std::size_t o = 0; o < outcomes; ++o) {
      if (setting.pass[o] == 0.0) continue;
      std::vector<int> axes(protocol.n), outs(protocol.n);
      for (int qb = 0; qb < protocol.n; ++qb) {
        axes[qb] = table.setting_axis(st, qb);
        outs[qb] = static_cast<int>(o >> (protocol.n - 1 - qb) & 1);
      }
      omega += detail::projector_tensor(protocol.n, axes, outs) * cdouble(mu);
    }
    protocol.settings.push_back(std::move(setting));
  }
  protocol.effective_operator = std::move(omega);
  protocol.nu = spectral_gap(protocol.effective_operator);
  detail::validate_target_pass(protocol, psi);
  return protocol;
}

enum class StabilizerMode { Generators, FullGroup };

/// Omega = sum_i mu_i (1 + g_i)/2 with equal weights over the generators or
/// over all 2^k - 1 nontrivial stabilizers.
inline Protocol stabilizer_protocol(const StabilizerGenerators& gens,
                                    StabilizerMode mode) {
  std::vector<PauliString> elements;
  if (mode == StabilizerMode::Generators) {
    elements = gens.generators;
  } else {
    for (auto& g : gens.group_elements()) {
      bool trivial = true;
      for (char ch : g.letters) trivial = trivial && ch == 'I';
      if (!trivial) elements.push_back(std::move(g));
    }
  }
  if (elements.empty())
    throw std::invalid_argument("stabilizer protocol needs at least one element");

  Protocol protocol;
  protocol.n = gens.n;
  protocol.kind = ProtocolKind::Stabilizer;
  const double mu = 1.0 / static_cast<double>(elements.size());
  const std::size_t dim = std::size_t{1} << gens.n;
  const std::size_t outcomes = dim;
  Matrix omega(dim);
  for (const auto& g : elements) {
    ProtocolSetting setting;
    setting.weight = mu;
    setting.axes.assign(static_cast<std::size_t>(gens.n), 'Z');
    for (int qb = 0; qb < gens.n; ++qb)
      if (g.letters[qb] != 'I') setting.axes[qb] = g.letters[qb];
    setting.pass.resize(outcomes);
    for (std::size_t o = 0; o < outcomes; ++o) {
      int parity = 1;
      for (int qb = 0; qb < gens.n; ++qb)
        if (g.letters[qb] != 'I' && (o >> (gens.n - 1 - qb) & 1)) parity = -parity;
      setting.pass[o] = parity == g.sign ? 1.0 : 0.0;
    }
    protocol.settings.push_back(std::move(setting));
    Matrix half = Matrix::identity(dim) + g.matrix();
    half *= 0.5 * mu;
    omega += half;
  }
  protocol.effective_operator = std::move(omega);
  protocol.nu = spectral_gap(protocol.effective_operator);
  if (static_cast<int>(gens.generators.size()) == gens.n)
    detail::validate_target_pass(protocol, stabilizer_state(gens));
  return protocol;
}

/// The three-permutation adaptive W3 protocol: measure Z on a distinguished
/// qubit; on + measure XX or YY (probability 1/2 each) on the rest and accept
/// even parity; on - accept unconditionally with probability 1/2 (split over
/// the XX and YY bases) or project both remaining qubits onto Z+ with
/// probability 1/2.
inline AdaptiveTree adaptive_w3() {
  AdaptiveTree tree;
  tree.n = 3;
  const int kAxisX = 0, kAxisY = 1, kAxisZ = 2;
  tree.roots.reserve(3);
  for (int d = 0; d < 3; ++d) {
    std::array<int, 2> rest{};
    for (int q = 0, k = 0; q < 3; ++q)
      if (q != d) rest[k++] = q;
    const int first = rest[0];
    const int second = rest[1];

    auto parity_pair = [&](int axis) {
      // measure `axis` on both remaining qubits, accept equal outcomes
      const int acc = tree.add_leaf(1.0);
      const int rej = tree.add_leaf(0.0);
      const int if_plus = tree.add_node({second, {{axis, 1.0, {acc, rej}}}});
      const int if_minus = tree.add_node({second, {{axis, 1.0, {rej, acc}}}});
      return std::pair(if_plus, if_minus);
    };
    auto accept_all = [&](int axis) {
      const int acc = tree.add_leaf(1.0);
      return tree.add_node({second, {{axis, 1.0, {acc, acc}}}});
    };

    const auto xx = parity_pair(kAxisX);
    const auto yy = parity_pair(kAxisY);
    const int plus_node = tree.add_node(
        {first,
         {{kAxisX, 0.5, {xx.first, xx.second}}, {kAxisY, 0.5, {yy.first, yy.second}}}});

    const int fx = accept_all(kAxisX);
    const int fy = accept_all(kAxisY);
    const int acc00 = tree.add_leaf(1.0);
    const int rej0 = tree.add_leaf(0.0);
    const int rej1 = tree.add_leaf(0.0);
    const int zz_plus = tree.add_node({second, {{kAxisZ, 1.0, {acc00, rej0}}}});
    const int zz_minus = tree.add_node({second, {{kAxisZ, 1.0, {rej1, rej1}}}});
    const int minus_node = tree.add_node({first,
                                          {{kAxisX, 0.25, {fx, fx}},
                                           {kAxisY, 0.25, {fy, fy}},
                                           {kAxisZ, 0.5, {zz_plus, zz_minus}}}});

    const int root = tree.add_node({d, {{kAxisZ, 1.0, {plus_node, minus_node}}}});
    tree.roots.emplace_back(1.0 / 3.0, root);
  }
  return tree;
}

/// Wraps an adaptive tree as a Protocol, validating that its effective
/// operator fixes the target.
inline Protocol adaptive_protocol(const AdaptiveTree& tree, const StateVector& target) {
  Protocol protocol;
  protocol.n = tree.n;
  protocol.kind = ProtocolKind::Adaptive;
  protocol.tree = tree;
  protocol.effective_operator = evaluate_adaptive(tree);
  protocol.nu = spectral_gap(protocol.effective_operator);
  // Omega must fix the target.
  const Matrix& omega = protocol.effective_operator;
  cdouble quad = 0.0;
  for (std::size_t r = 0; r < omega.dim(); ++r)
    for (std::size_t c = 0; c < omega.dim(); ++c)
      quad += std::conj(target.amplitude(r)) * omega(r, c) * target.amplitude(c);
  if (std::abs(quad - cdouble(1.0)) > kAlgebraTol)
    throw InfeasibleError("adaptive protocol does not fix the target state");
  return protocol;
}

/// Closed-form efficiency 1/nu = (3^n + 2^n - 1) / 2^n of the symmetric-T
/// homogeneous GHZ protocol.
inline double ghz_closed_form(int n) {
  if (n < 2 || n > kMaxQubits)
    throw std::invalid_argument("ghz_closed_form requires 2 <= n <= " +
                                std::to_string(kMaxQubits));
  const double p3 = std::pow(3.0, n);
  const double p2 = std::pow(2.0, n);
  return (p3 + p2 - 1.0) / p2;
}

/// The worst-case local-ball radius 1/(2^n - 2^(1-n) + 1) over all target
/// states under the symmetric transformation; per-state radii lie at or
/// above this value, so efficiencies stay within O(2^n).
inline double worst_case_bound(int n) {
  if (n < 1 || n > kMaxQubits)
    throw std::invalid_argument("worst_case_bound requires 1 <= n <= " +
                                std::to_string(kMaxQubits));
  return 1.0 / (std::pow(2.0, n) - std::pow(2.0, 1 - n) + 1.0);
}

}  // namespace qsv
