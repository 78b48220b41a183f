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

#include <string>
#include <vector>

#include <json.hpp>

#include "qsv/design.hpp"
#include "qsv/runtime.hpp"

namespace qsv::io {

using nlohmann::json;

/// All emitted numbers carry 12 significant digits.
inline double round_number(double v) {
  return std::stod(format_number(v));
}

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c)
      row.push_back({round_number(m(r, c).real()), round_number(m(r, c).imag())});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"entries", rows}};
}

inline Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("dim").get<std::size_t>());
  const auto& rows = j.at("entries");
  for (std::size_t r = 0; r < m.dim(); ++r)
    for (std::size_t c = 0; c < m.dim(); ++c)
      m(r, c) = cdouble(rows[r][c][0].get<double>(), rows[r][c][1].get<double>());
  return m;
}

inline json transformation_to_json(const Transformation& t) {
  return {{"weights",
           {round_number(t.weights()[0]), round_number(t.weights()[1]),
            round_number(t.weights()[2])}}};
}

/// Table with explicit setting/outcome labels; rows in reference order.
inline json table_to_json(const QuasiProbTable& table) {
  json rows = json::array();
  for (std::size_t s = 0; s < table.num_settings(); ++s) {
    json outcomes = json::object();
    for (std::size_t o = 0; o < table.num_outcomes(); ++o)
      outcomes[table.outcome_label(o)] = round_number(table.value(s, o));
    rows.push_back({{"setting", table.setting_label(s)},
                    {"outcomes", std::move(outcomes)}});
  }
  json out = {{"n", table.qubit_count()},
              {"rows", std::move(rows)},
              {"completeness", round_number(table.completeness())},
              {"positivity_min", round_number(table.positivity_min())}};
  if (table.transformation())
    out["transformation"] = transformation_to_json(*table.transformation());
  return out;
}

inline json verdict_to_json(const LocalityVerdict& v) {
  return {{"positivity_min", round_number(v.positivity_min)},
          {"completeness", round_number(v.completeness)},
          {"bound", round_number(v.bound)},
          {"local", v.local},
          {"mode", v.mode}};
}

namespace detail {

inline json tree_node_to_json(const AdaptiveTree& tree, int child) {
  if (AdaptiveTree::is_leaf(child))
    return {{"accept", round_number(tree.leaf(child))}};
  static const char kAxes[] = "XYZ";
  const auto& node = tree.nodes[static_cast<std::size_t>(child)];
  json choices = json::array();
  for (const auto& choice : node.choices) {
    choices.push_back({{"axis", std::string(1, kAxes[choice.axis])},
                       {"prob", round_number(choice.prob)},
                       {"plus", tree_node_to_json(tree, choice.child[0])},
                       {"minus", tree_node_to_json(tree, choice.child[1])}});
  }
  return {{"qubit", node.qubit}, {"choices", std::move(choices)}};
}

inline int tree_node_from_json(AdaptiveTree& tree, const json& j) {
  if (j.contains("accept")) return tree.add_leaf(j.at("accept").get<double>());
  AdaptiveTree::Node node;
  node.qubit = j.at("qubit").get<int>();
  // children are parsed before the node is appended
  std::vector<AdaptiveTree::Choice> choices;
  for (const auto& cj : j.at("choices")) {
    AdaptiveTree::Choice choice;
    const std::string axis = cj.at("axis").get<std::string>();
    if (axis.size() != 1 || (axis[0] != 'X' && axis[0] != 'Y' && axis[0] != 'Z'))
      throw std::invalid_argument("adaptive tree axis must be X, Y or Z");
    choice.axis = axis[0] == 'X' ? 0 : axis[0] == 'Y' ? 1 : 2;
    choice.prob = cj.at("prob").get<double>();
    choice.child[0] = tree_node_from_json(tree, cj.at("plus"));
    choice.child[1] = tree_node_from_json(tree, cj.at("minus"));
    choices.push_back(choice);
  }
  node.choices = std::move(choices);
  return tree.add_node(std::move(node));
}

}  // namespace detail

inline json tree_to_json(const AdaptiveTree& tree) {
  json perms = json::array();
  for (const auto& [weight, root] : tree.roots)
    perms.push_back({{"weight", round_number(weight)},
                     {"root", detail::tree_node_to_json(tree, root)}});
  return {{"n", tree.n}, {"permutations", std::move(perms)}};
}

inline AdaptiveTree tree_from_json(const json& j) {
  AdaptiveTree tree;
  tree.n = j.at("n").get<int>();
  for (const auto& pj : j.at("permutations")) {
    const int root = detail::tree_node_from_json(tree, pj.at("root"));
    if (AdaptiveTree::is_leaf(root))
      throw std::invalid_argument("adaptive tree root cannot be a leaf");
    tree.roots.emplace_back(pj.at("weight").get<double>(), root);
  }
  return tree;
}

/// Protocol schema:
/// {n, kind, settings:[{weight, axes:"XYZ", pass:{"+-+":z,...}}],
///  adaptive_tree?, nu}. Pass maps are sparse; missing outcomes reject.
inline json protocol_to_json(const Protocol& protocol) {
  json settings = json::array();
  QuasiProbTable labels = QuasiProbTable::zeros(protocol.n);
  for (const auto& s : protocol.settings) {
    json pass = json::object();
    for (std::size_t o = 0; o < s.pass.size(); ++o)
      if (s.pass[o] > 0.0) pass[labels.outcome_label(o)] = round_number(s.pass[o]);
    settings.push_back({{"weight", round_number(s.weight)},
                        {"axes", s.axes},
                        {"pass", std::move(pass)}});
  }
  json out = {{"n", protocol.n},
              {"kind", to_string(protocol.kind)},
              {"settings", std::move(settings)},
              {"nu", round_number(protocol.nu)}};
  if (protocol.tree) out["adaptive_tree"] = tree_to_json(*protocol.tree);
  return out;
}

/// Rebuilds a protocol, recomputing the effective operator and nu from the
/// settings (or the adaptive tree) rather than trusting the stored value.
inline Protocol protocol_from_json(const json& j) {
  Protocol protocol;
  protocol.n = j.at("n").get<int>();
  protocol.kind = protocol_kind_from_string(j.at("kind").get<std::string>());
  QuasiProbTable table = QuasiProbTable::zeros(protocol.n);
  for (const auto& sj : j.at("settings")) {
    ProtocolSetting setting;
    setting.weight = sj.at("weight").get<double>();
    setting.axes = sj.at("axes").get<std::string>();
    if (setting.axes.size() != static_cast<std::size_t>(protocol.n))
      throw std::invalid_argument("protocol setting axes length mismatch");
    setting.pass.assign(table.num_outcomes(), 0.0);
    std::size_t setting_index = 0;
    for (char axis : setting.axes) {
      if (axis != 'X' && axis != 'Y' && axis != 'Z')
        throw std::invalid_argument("protocol axes must be X, Y or Z");
      setting_index = setting_index * 3 +
                      static_cast<std::size_t>(axis == 'X' ? 0 : axis == 'Y' ? 1 : 2);
    }
    for (const auto& [label, zj] : sj.at("pass").items()) {
      if (label.size() != static_cast<std::size_t>(protocol.n))
        throw std::invalid_argument("protocol outcome label length mismatch");
      std::size_t outcome = 0;
      for (char ch : label) {
        if (ch != '+' && ch != '-')
          throw std::invalid_argument("protocol outcome label must use + and -");
        outcome = outcome * 2 + (ch == '-' ? 1 : 0);
      }
      const double z = zj.get<double>();
      setting.pass[outcome] = z;
      table.value(setting_index, outcome) += setting.weight * z;
    }
    protocol.settings.push_back(std::move(setting));
  }
  if (j.contains("adaptive_tree")) {
    protocol.tree = tree_from_json(j.at("adaptive_tree"));
    protocol.effective_operator = evaluate_adaptive(*protocol.tree);
  } else {
    protocol.effective_operator = reconstruct(table);
  }
  protocol.nu = spectral_gap(protocol.effective_operator);
  return protocol;
}

inline json estimation_to_json(const EstimationResult& r) {
  return {{"fidelity", round_number(r.fidelity)},
          {"std_dev", round_number(r.std_dev)},
          {"pass_count", r.pass_count},
          {"total", r.total},
          {"scale", round_number(r.scale)}};
}

inline json witness_to_json(const WitnessReport& r) {
  return {{"kappa", round_number(r.kappa)},
          {"expectation", round_number(r.expectation)},
          {"operator", matrix_to_json(r.op)}};
}

}  // namespace qsv::io
