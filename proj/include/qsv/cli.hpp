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

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsv/io.hpp"

namespace qsv::cli {

using nlohmann::json;

namespace detail {

inline std::invalid_argument parse_error(const std::string& spec,
                                         std::size_t position,
                                         const std::string& what) {
  return std::invalid_argument("cannot parse '" + spec + "' at position " +
                               std::to_string(position) + ": " + what);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

inline double parse_real(const std::string& token, const std::string& spec,
                         std::size_t position) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw parse_error(spec, position, "expected a number, got '" + token + "'");
  }
}

// Accepts 1, -0.5, 2i, -i, 1+2i, 0.5-0.5i.
inline cdouble parse_complex(const std::string& token, const std::string& spec,
                             std::size_t position) {
  if (token.empty()) throw parse_error(spec, position, "empty amplitude");
  std::string t = token;
  double re = 0.0, im = 0.0;
  if (t.back() == 'i' || t.back() == 'I') {
    t.pop_back();
    // split the imaginary part off at the last interior +/- sign
    std::size_t cut = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
      if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
        cut = k;
        break;
      }
    }
    std::string im_part = cut == std::string::npos ? t : t.substr(cut);
    if (cut != std::string::npos && cut > 0)
      re = parse_real(t.substr(0, cut), spec, position);
    if (im_part.empty() || im_part == "+")
      im = 1.0;
    else if (im_part == "-")
      im = -1.0;
    else
      im = parse_real(im_part, spec, position);
  } else {
    re = parse_real(t, spec, position);
  }
  return {re, im};
}

}  // namespace detail

/// State-spec grammar: bell | ghz:<n> | w:<n> | dicke:<n>:<k> |
/// stab:<±PPP,...> | graph:<v-w;...> | vec:<comma-separated complex>.
inline StateVector parse_state_spec(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  const std::size_t body_pos = colon == std::string::npos ? 0 : colon + 1;

  auto parse_int = [&](const std::string& token, std::size_t position) {
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      throw detail::parse_error(spec, position, "expected an integer, got '" +
                                                    token + "'");
    return value;
  };

  if (head == "bell") {
    if (colon != std::string::npos)
      throw detail::parse_error(spec, colon, "bell takes no arguments");
    return bell();
  }
  if (head == "ghz") return ghz(parse_int(rest, body_pos));
  if (head == "w") return w_state(parse_int(rest, body_pos));
  if (head == "dicke") {
    const auto parts = detail::split(rest, ':');
    if (parts.size() != 2)
      throw detail::parse_error(spec, body_pos, "dicke needs <n>:<k>");
    return dicke(parse_int(parts[0], body_pos), parse_int(parts[1], body_pos));
  }
  if (head == "stab") {
    if (rest.empty()) throw detail::parse_error(spec, body_pos, "no generators");
    std::vector<PauliString> gens;
    int n = -1;
    for (const auto& token : detail::split(rest, ',')) {
      if (token.empty())
        throw detail::parse_error(spec, body_pos, "empty generator");
      int sign = 1;
      std::string letters = token;
      if (letters[0] == '+' || letters[0] == '-') {
        sign = letters[0] == '-' ? -1 : 1;
        letters.erase(letters.begin());
      }
      for (char& ch : letters) ch = static_cast<char>(std::toupper(ch));
      gens.emplace_back(sign, letters);
      if (n < 0) n = gens.back().qubits();
    }
    return stabilizer_state(StabilizerGenerators(n, std::move(gens)));
  }
  if (head == "graph") {
    if (rest.empty()) throw detail::parse_error(spec, body_pos, "no edges");
    std::vector<std::pair<int, int>> edges;
    int n = 0;
    for (const auto& token : detail::split(rest, ';')) {
      const auto ends = detail::split(token, '-');
      if (ends.size() != 2)
        throw detail::parse_error(spec, body_pos, "edge '" + token +
                                                      "' must look like v-w");
      const int v = parse_int(ends[0], body_pos);
      const int w = parse_int(ends[1], body_pos);
      if (v < 0 || w < 0 || v == w)
        throw detail::parse_error(spec, body_pos, "bad edge '" + token + "'");
      edges.emplace_back(v, w);
      n = std::max(n, std::max(v, w) + 1);
    }
    std::vector<std::vector<int>> adjacency(n, std::vector<int>(n, 0));
    for (const auto& [v, w] : edges) adjacency[v][w] = adjacency[w][v] = 1;
    return graph_state(adjacency);
  }
  if (head == "vec") {
    const auto tokens = detail::split(rest, ',');
    std::vector<cdouble> amp;
    for (const auto& token : tokens)
      amp.push_back(detail::parse_complex(token, spec, body_pos));
    return StateVector::from_amplitudes(std::move(amp));
  }
  throw detail::parse_error(spec, 0, "unknown state kind '" + head + "'");
}

/// Weights accepted as fractions ("1/3") or decimals; three comma-separated
/// entries.
inline std::array<double, 3> parse_weights(const std::string& spec) {
  const auto parts = detail::split(spec, ',');
  if (parts.size() != 3)
    throw std::invalid_argument("weights need three comma-separated entries, got '" +
                                spec + "'");
  std::array<double, 3> w{};
  for (int i = 0; i < 3; ++i) {
    const std::string& token = parts[i];
    const std::size_t slash = token.find('/');
    if (slash != std::string::npos) {
      const double num = detail::parse_real(token.substr(0, slash), spec, 0);
      const double den = detail::parse_real(token.substr(slash + 1), spec, 0);
      if (den == 0.0) throw std::invalid_argument("weight with zero denominator");
      w[i] = num / den;
    } else {
      w[i] = detail::parse_real(token, spec, 0);
    }
  }
  return w;
}

namespace detail {

struct CommonOptions {
  std::string state_spec;
  std::string weights = "1/3,1/3,1/3";
  std::string mode = "nonadaptive";
  std::string out_path;
  bool revise_flag = false;
  double epsilon = 0.0;
  double gamma = 0.05;
  int copies = 0;
  long trials = 10000;
  std::uint64_t seed = 1;
  std::string protocol_file;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
  out << content;
}

// The design pipeline shared by design/simulate/estimate: positivity route
// first, the general-t0 revision of the raw target table when that is
// infeasible, plus the optional revision step.
struct DesignOutcome {
  std::string route;  // "homogeneous" or "target-revision"
  double a = 0.0;
  double nu = 0.0;
  QuasiProbTable table;
  double target_completeness = 0.0;
  std::optional<Revision> revision;
};

inline DesignOutcome design_homogeneous(const StateVector& psi,
                                        const Transformation& t, bool do_revise) {
  QuasiProbTable target = quasi_prob(psi.projector(), t);
  DesignOutcome out{"", 0.0, 0.0, target, target.completeness(), {}};
  try {
    HomogeneousDesign ball = homogeneous_local_ball(psi, t);
    out.route = "homogeneous";
    out.a = ball.a;
    out.nu = ball.nu;
    out.table = std::move(ball.table);
    if (do_revise) {
      Revision rev = revise(out.table);
      out.nu = rev.nu;
      out.table = rev.table;
      out.revision = std::move(rev);
    }
  } catch (const InfeasibleError&) {
    // No ball around the identity exists under these weights; revising the
    // raw target table can still heal the negative rows.
    Revision rev = revise(target, RevisionPolicy::AllowNegativeInput);
    out.route = "target-revision";
    out.a = rev.a;
    out.nu = rev.nu;
    out.table = rev.table;
    out.revision = std::move(rev);
  }
  return out;
}

inline LocalityVerdict verdict_for_mode(const QuasiProbTable& table,
                                        const std::string& mode) {
  if (mode == "locc") return check_locc(table, 2);
  if (mode != "nonadaptive")
    throw std::invalid_argument("mode must be nonadaptive or locc");
  return check_local(table);
}

inline int run_design(const CommonOptions& opt, std::ostream& out) {
  const StateVector psi = parse_state_spec(opt.state_spec);
  const Transformation t = make_transformation(parse_weights(opt.weights));
  DesignOutcome design = design_homogeneous(psi, t, opt.revise_flag);
  const LocalityVerdict verdict = verdict_for_mode(design.table, opt.mode);

  json result = {{"command", "design"},
                 {"state", opt.state_spec},
                 {"weights", io::transformation_to_json(t)["weights"]},
                 {"mode", opt.mode},
                 {"route", design.route},
                 {"a", io::round_number(design.a)},
                 {"nu", io::round_number(design.nu)},
                 {"target_completeness", io::round_number(design.target_completeness)},
                 {"verdict", io::verdict_to_json(verdict)}};
  if (design.revision) {
    result["revision"] = {{"a", io::round_number(design.revision->a)},
                          {"nu", io::round_number(design.revision->nu)}};
  }

  std::optional<Protocol> protocol;
  if (verdict.local && std::abs(design.table.completeness() - 1.0) <= kAlgebraTol) {
    protocol = protocol_from_table(design.table, psi, ProtocolKind::Homogeneous);
  } else if (!verdict.local && opt.mode == "nonadaptive") {
    // Homogeneous design failed; fall back to picking the settings that pass
    // the target with certainty.
    try {
      protocol = inhomogeneous_fallback(psi, t);
      result["route"] = design.route + "+inhomogeneous-fallback";
      result["nu"] = io::round_number(protocol->nu);
    } catch (const InfeasibleError& e) {
      result["fallback_error"] = e.what();
    }
  }
  if (protocol) result["protocol"] = io::protocol_to_json(*protocol);

  if (!opt.out_path.empty()) {
    write_file(opt.out_path + ".table.csv", to_csv(design.table));
    write_file(opt.out_path + ".table.json", io::table_to_json(design.table).dump(2));
    if (protocol)
      write_file(opt.out_path + ".protocol.json",
                 io::protocol_to_json(*protocol).dump(2));
  }
  out << result.dump(2) << "\n";
  return verdict.local || protocol ? 0 : 1;
}

inline int run_check(const CommonOptions& opt, std::ostream& out) {
  const StateVector psi = parse_state_spec(opt.state_spec);
  const Transformation t = make_transformation(parse_weights(opt.weights));
  QuasiProbTable table = quasi_prob(psi.projector(), t);
  if (opt.revise_flag)
    table = revise(table, RevisionPolicy::AllowNegativeInput).table;
  const LocalityVerdict verdict = verdict_for_mode(table, opt.mode);
  json result = io::verdict_to_json(verdict);
  if (!opt.out_path.empty())
    write_file(opt.out_path + ".verdict.json", result.dump(2));
  out << result.dump(2) << "\n";
  return verdict.local ? 0 : 1;
}

inline int run_revise(const CommonOptions& opt, std::ostream& out) {
  const StateVector psi = parse_state_spec(opt.state_spec);
  const Transformation t = make_transformation(parse_weights(opt.weights));
  const QuasiProbTable table = quasi_prob(psi.projector(), t);
  const Revision rev = revise(table, RevisionPolicy::AllowNegativeInput);
  json result = {{"command", "revise"},
                 {"state", opt.state_spec},
                 {"a", io::round_number(rev.a)},
                 {"nu", io::round_number(rev.nu)},
                 {"table", io::table_to_json(rev.table)}};
  if (!opt.out_path.empty()) {
    write_file(opt.out_path + ".table.csv", to_csv(rev.table));
    write_file(opt.out_path + ".table.json", io::table_to_json(rev.table).dump(2));
  }
  out << result.dump(2) << "\n";
  return 0;
}

inline Protocol load_or_design_protocol(const CommonOptions& opt,
                                        const StateVector& psi,
                                        const Transformation& t) {
  if (!opt.protocol_file.empty()) {
    std::ifstream in(opt.protocol_file);
    if (!in)
      throw std::invalid_argument("cannot read protocol file '" +
                                  opt.protocol_file + "'");
    json j;
    in >> j;
    return io::protocol_from_json(j);
  }
  DesignOutcome design = design_homogeneous(psi, t, opt.revise_flag);
  if (check_local(design.table).local &&
      std::abs(design.table.completeness() - 1.0) <= kAlgebraTol)
    return protocol_from_table(design.table, psi, ProtocolKind::Homogeneous);
  return inhomogeneous_fallback(psi, t);
}

inline int run_simulate(const CommonOptions& opt, std::ostream& out) {
  const StateVector psi = parse_state_spec(opt.state_spec);
  const Transformation t = make_transformation(parse_weights(opt.weights));
  const Protocol protocol = load_or_design_protocol(opt, psi, t);

  int copies = opt.copies;
  if (copies <= 0)
    copies = opt.epsilon > 0.0
                 ? required_copies(opt.epsilon, opt.gamma, protocol.nu)
                 : 1;
  const StateVector source =
      opt.epsilon > 0.0
          ? worst_case_bad_state(protocol.effective_operator, psi, opt.epsilon)
          : psi;
  const double rate =
      simulate_verification(protocol, source, copies, opt.trials, opt.seed);

  json result = {{"protocol", io::protocol_to_json(protocol)},
                 {"epsilon", io::round_number(opt.epsilon)},
                 {"gamma", io::round_number(opt.gamma)},
                 {"nu", io::round_number(protocol.nu)},
                 {"copies", copies},
                 {"trials", opt.trials},
                 {"seed", opt.seed},
                 {"acceptance_rate", io::round_number(rate)}};
  if (!opt.out_path.empty())
    write_file(opt.out_path + ".report.json", result.dump(2));
  out << result.dump(2) << "\n";
  return 0;
}

inline int run_estimate(const CommonOptions& opt, std::ostream& out) {
  const StateVector psi = parse_state_spec(opt.state_spec);
  const Transformation t = make_transformation(parse_weights(opt.weights));
  if (opt.copies <= 0)
    throw std::invalid_argument("estimate requires --copies >= 1");

  Protocol sampler;
  double scale = 1.0;
  if (!opt.protocol_file.empty()) {
    // A protocol exported by design is realizable, so no rescaling applies.
    sampler = load_or_design_protocol(opt, psi, t);
  } else {
    DesignOutcome design = design_homogeneous(psi, t, /*do_revise=*/true);
    QuasiProbTable table = design.table;
    if (table.completeness() > 1.0 + kAlgebraTol) {
      auto [rescaled, s] = rescale_for_estimation(table);
      table = std::move(rescaled);
      scale = s;
    }
    // Settings of the (possibly rescaled) table; the target passes each test
    // with probability 1/scale, which the estimator compensates for.
    sampler.n = psi.qubit_count();
    sampler.kind = ProtocolKind::Homogeneous;
    for (std::size_t st = 0; st < table.num_settings(); ++st) {
      const double mu = table.row_max(st);
      if (mu <= kAlgebraTol) continue;
      ProtocolSetting setting;
      setting.weight = mu;
      setting.axes = table.setting_label(st);
      setting.pass.resize(table.num_outcomes());
      for (std::size_t o = 0; o < table.num_outcomes(); ++o) {
        double z = table.value(st, o) / mu;
        if (z > 1.0 - kAlgebraTol) z = 1.0;
        if (z < 1e-12) z = 0.0;
        setting.pass[o] = z;
      }
      sampler.settings.push_back(std::move(setting));
    }
    sampler.effective_operator = homogeneous_operator(psi, design.nu);
    sampler.nu = design.nu;
  }

  const StateVector source =
      opt.epsilon > 0.0
          ? worst_case_bad_state(sampler.effective_operator, psi, opt.epsilon)
          : psi;
  const double pass_fraction =
      simulate_verification(sampler, source, 1, opt.copies, opt.seed);
  const long pass_count =
      std::lround(pass_fraction * static_cast<double>(opt.copies));
  const EstimationResult estimate =
      fidelity_estimate(pass_count, opt.copies, sampler.nu, scale);

  json result = io::estimation_to_json(estimate);
  result["nu"] = io::round_number(sampler.nu);
  result["kind"] = to_string(sampler.kind);
  result["epsilon"] = io::round_number(opt.epsilon);
  result["seed"] = opt.seed;
  if (!opt.out_path.empty())
    write_file(opt.out_path + ".estimate.json", result.dump(2));
  out << result.dump(2) << "\n";
  return 0;
}

inline int run_witness(const CommonOptions& opt, std::ostream& out) {
  const StateVector psi = parse_state_spec(opt.state_spec);
  const WitnessReport report = witness(psi);
  const json result = io::witness_to_json(report);
  if (!opt.out_path.empty())
    write_file(opt.out_path + ".witness.json", result.dump(2));
  out << result.dump(2) << "\n";
  return 0;
}

inline int run_export(const CommonOptions& opt, std::ostream& out) {
  const StateVector psi = parse_state_spec(opt.state_spec);
  const Transformation t = make_transformation(parse_weights(opt.weights));
  QuasiProbTable table = quasi_prob(psi.projector(), t);
  if (opt.revise_flag)
    table = revise(table, RevisionPolicy::AllowNegativeInput).table;
  if (!opt.out_path.empty()) {
    write_file(opt.out_path + ".table.csv", to_csv(table));
    write_file(opt.out_path + ".table.json", io::table_to_json(table).dump(2));
  }
  out << io::table_to_json(table).dump(2) << "\n";
  return 0;
}

}  // namespace detail

/// Entry point; args exclude the program name. Writes results as JSON to
/// `out`; returns 0 on success, 1 on infeasibility verdicts, 2 on input
/// errors.
inline int run(std::vector<std::string> args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Verification-protocol design toolkit for entangled states"};
  app.require_subcommand(1);

  detail::CommonOptions opt;
  auto add_common = [&](CLI::App* cmd, bool with_protocol_file = false) {
    cmd->add_option("--state", opt.state_spec,
                    "target state spec (bell | ghz:<n> | w:<n> | dicke:<n>:<k> | "
                    "stab:<+XX,...> | graph:<v-w;...> | vec:<c,...>)");
    cmd->add_option("--weights", opt.weights,
                    "t0 weights a1,a2,a3 as fractions or decimals");
    cmd->add_option("--mode", opt.mode, "nonadaptive or locc");
    cmd->add_option("--epsilon", opt.epsilon, "infidelity threshold");
    cmd->add_option("--gamma", opt.gamma, "failure probability");
    cmd->add_option("--copies", opt.copies, "tests per trial");
    cmd->add_option("--trials", opt.trials, "Monte-Carlo trials");
    cmd->add_option("--seed", opt.seed, "RNG seed");
    cmd->add_option("--out", opt.out_path, "basename for artifact files");
    cmd->add_flag("--revise", opt.revise_flag, "apply the revision step");
    if (with_protocol_file)
      cmd->add_option("protocol", opt.protocol_file,
                      "protocol JSON exported by design");
  };

  CLI::App* design = app.add_subcommand("design", "construct a protocol");
  CLI::App* check = app.add_subcommand("check", "locality verdict for a state");
  CLI::App* revise_cmd = app.add_subcommand("revise", "revise the target table");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte-Carlo verification");
  CLI::App* estimate = app.add_subcommand("estimate", "fidelity estimation");
  CLI::App* witness_cmd = app.add_subcommand("witness", "entanglement witness");
  CLI::App* export_cmd = app.add_subcommand("export", "emit table artifacts");
  add_common(design);
  add_common(check);
  add_common(revise_cmd);
  add_common(simulate, /*with_protocol_file=*/true);
  add_common(estimate, /*with_protocol_file=*/true);
  add_common(witness_cmd);
  add_common(export_cmd);
  for (CLI::App* cmd :
       {design, check, revise_cmd, simulate, estimate, witness_cmd, export_cmd})
    cmd->get_option("--state")->required();

  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", {{"type", "input"}, {"message", e.what()}}}}.dump(2)
        << "\n";
    return 2;
  }

  try {
    if (design->parsed()) return detail::run_design(opt, out);
    if (check->parsed()) return detail::run_check(opt, out);
    if (revise_cmd->parsed()) return detail::run_revise(opt, out);
    if (simulate->parsed()) return detail::run_simulate(opt, out);
    if (estimate->parsed()) return detail::run_estimate(opt, out);
    if (witness_cmd->parsed()) return detail::run_witness(opt, out);
    if (export_cmd->parsed()) return detail::run_export(opt, out);
    err << json{{"error", {{"type", "input"}, {"message", "no command"}}}}.dump(2)
        << "\n";
    return 2;
  } catch (const CompletenessError& e) {
    err << json{{"error",
                 {{"type", "infeasible"},
                  {"message", e.what()},
                  {"completeness", io::round_number(e.completeness)},
                  {"bound", io::round_number(e.bound)}}}}
               .dump(2)
        << "\n";
    return 1;
  } catch (const InfeasibleError& e) {
    err << json{{"error", {{"type", "infeasible"}, {"message", e.what()}}}}.dump(2)
        << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << json{{"error", {{"type", "input"}, {"message", e.what()}}}}.dump(2)
        << "\n";
    return 2;
  }
}

}  // namespace qsv::cli
