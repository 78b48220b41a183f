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

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsv/design.hpp"

namespace qsv {

/// SplitMix64 stream (Steele, Lea, Vigna 2014): state advances by the golden
/// constant and each output is a finalizing hash of the state. Substreams for
/// independent trials are derived by hashing (seed, counter), so simulation
/// results are bit-identical for a fixed seed no matter how trials are
/// scheduled.
class Rng {
public:
  explicit Rng(std::uint64_t state) : state_(state) {}

  static std::uint64_t scramble(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  static Rng substream(std::uint64_t seed, std::uint64_t counter) {
    return Rng(scramble(seed + 0x9E3779B97F4A7C15ULL) ^
               scramble(counter * 0xD1342543DE82EF95ULL + 0x2545F4914F6CDD1DULL));
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return scramble(state_);
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; deterministic across platforms.
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

private:
  std::uint64_t state_;
};

/// Haar-like random pure state from normalized complex Gaussian amplitudes.
inline StateVector random_state(int n, Rng& rng) {
  std::vector<cdouble> amp(std::size_t{1} << n);
  for (auto& a : amp) a = cdouble(rng.gaussian(), rng.gaussian());
  return StateVector::from_amplitudes(std::move(amp));
}

/// Product of independent Haar-like single-qubit states.
inline StateVector random_product_state(int n, Rng& rng) {
  std::vector<cdouble> amp{1.0};
  for (int qb = 0; qb < n; ++qb) {
    cdouble a0(rng.gaussian(), rng.gaussian());
    cdouble a1(rng.gaussian(), rng.gaussian());
    const double norm = std::sqrt(std::norm(a0) + std::norm(a1));
    a0 /= norm;
    a1 /= norm;
    std::vector<cdouble> next(amp.size() * 2);
    for (std::size_t j = 0; j < amp.size(); ++j) {
      next[2 * j] = amp[j] * a0;
      next[2 * j + 1] = amp[j] * a1;
    }
    amp = std::move(next);
  }
  return StateVector::from_amplitudes(std::move(amp));
}

/// Number of copies needed for confidence 1-gamma at infidelity epsilon,
/// N = ceil(ln(1/gamma) / ln(1/(1 - nu * epsilon))).
inline int required_copies(double epsilon, double gamma, double nu) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw std::invalid_argument("gamma must lie in (0,1]");
  if (!(nu > 0.0 && nu <= 1.0))
    throw std::invalid_argument("nu must lie in (0,1]");
  if (gamma == 1.0) return 0;
  const double copies = std::log(1.0 / gamma) / std::log(1.0 / (1.0 - nu * epsilon));
  return static_cast<int>(std::ceil(copies - 1e-12));
}

/// Sample-complexity plan of a protocol run.
struct VerificationPlan {
  double epsilon = 0.0;
  double gamma = 0.0;
  double nu = 0.0;
  int copies = 0;
};

inline VerificationPlan make_plan(double epsilon, double gamma, double nu) {
  return {epsilon, gamma, nu, required_copies(epsilon, gamma, nu)};
}

/// The adversarial state sqrt(1-eps)|psi> + sqrt(eps)|phi> with phi a
/// second-eigenvalue eigenvector of Omega; its single-test pass probability
/// is exactly 1 - eps * nu.
inline StateVector worst_case_bad_state(const Matrix& omega,
                                        const StateVector& psi, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon < 1.0))
    throw std::invalid_argument("epsilon must lie in [0,1)");
  if (omega.dim() != psi.dim())
    throw std::invalid_argument("operator/state dimension mismatch");
  EigenSystem sys = hermitian_eigensystem(omega);
  if (std::abs(sys.eigenvalues[0] - 1.0) > 1e-6)
    throw std::invalid_argument("not a protocol operator: top eigenvalue != 1");
  if (1.0 - sys.eigenvalues[1] < 1e-9)
    throw std::invalid_argument(
        "degenerate top eigenvalue: no bad-state direction exists");
  cdouble overlap = 0.0;
  for (std::size_t j = 0; j < psi.dim(); ++j)
    overlap += std::conj(sys.vectors(j, 0)) * psi.amplitude(j);
  if (std::abs(std::abs(overlap) - 1.0) > 1e-6)
    throw std::invalid_argument("psi is not the protocol's top eigenvector");
  if (epsilon == 0.0) return psi;

  const double c_good = std::sqrt(1.0 - epsilon);
  const double c_bad = std::sqrt(epsilon);
  std::vector<cdouble> amp(psi.dim());
  for (std::size_t j = 0; j < psi.dim(); ++j)
    amp[j] = c_good * psi.amplitude(j) + c_bad * sys.vectors(j, 1);
  return StateVector::from_amplitudes(std::move(amp));
}

namespace detail {

// Collapsing single-qubit measurement used when walking adaptive trees.
// Rotates the qubit into the axis eigenbasis (leaving it there is safe, it
// is never measured again), samples the outcome, projects and renormalizes.
inline int measure_qubit(std::vector<cdouble>& amp, int n, int qubit, int axis,
                         Rng& rng) {
  const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  if (axis != 2) {
    for (std::size_t j = 0; j < amp.size(); ++j) {
      if (j & mask) continue;
      const cdouble a0 = amp[j];
      const cdouble a1 = amp[j | mask];
      if (axis == 0) {
        amp[j] = (a0 + a1) * inv_sqrt2;
        amp[j | mask] = (a0 - a1) * inv_sqrt2;
      } else {
        amp[j] = (a0 - cdouble(0, 1) * a1) * inv_sqrt2;
        amp[j | mask] = (a0 + cdouble(0, 1) * a1) * inv_sqrt2;
      }
    }
  }
  double p0 = 0.0;
  for (std::size_t j = 0; j < amp.size(); ++j)
    if (!(j & mask)) p0 += std::norm(amp[j]);
  const int outcome = rng.uniform() < p0 ? 0 : 1;
  const double keep = outcome == 0 ? p0 : 1.0 - p0;
  const double scale = keep > 0.0 ? 1.0 / std::sqrt(keep) : 0.0;
  for (std::size_t j = 0; j < amp.size(); ++j) {
    const bool bit = (j & mask) != 0;
    amp[j] = bit == (outcome == 1) ? amp[j] * scale : cdouble{};
  }
  return outcome;
}

inline bool run_adaptive_copy(const AdaptiveTree& tree, const StateVector& state,
                              Rng& rng) {
  // Pick the permutation branch.
  double u = rng.uniform();
  int node = tree.roots.back().second;
  for (const auto& [w, root] : tree.roots) {
    if (u < w) {
      node = root;
      break;
    }
    u -= w;
  }
  std::vector<cdouble> amp = state.amplitudes();
  int child = node;
  while (!AdaptiveTree::is_leaf(child)) {
    const auto& nd = tree.nodes[static_cast<std::size_t>(child)];
    double v = rng.uniform();
    const AdaptiveTree::Choice* picked = &nd.choices.back();
    for (const auto& choice : nd.choices) {
      if (v < choice.prob) {
        picked = &choice;
        break;
      }
      v -= choice.prob;
    }
    const int outcome = measure_qubit(amp, tree.n, nd.qubit, picked->axis, rng);
    child = picked->child[outcome];
  }
  return rng.uniform() < tree.leaf(child);
}

}  // namespace detail

/// Monte-Carlo verification run: each trial draws `copies` tests (setting by
/// weight, outcome from the Born distribution, pass by the setting's pass
/// probability) and succeeds iff every copy passes. Deterministic for a
/// fixed seed; trial t uses the substream (seed, t).
inline double simulate_verification(const Protocol& protocol,
                                    const StateVector& state, int copies,
                                    long trials, std::uint64_t seed) {
  if (copies < 1) throw std::invalid_argument("copies must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (protocol.n != state.qubit_count())
    throw std::invalid_argument("protocol/state qubit count mismatch");

  if (protocol.kind == ProtocolKind::Adaptive) {
    if (!protocol.tree) throw std::invalid_argument("adaptive protocol lacks a tree");
    long successes = 0;
    for (long t = 0; t < trials; ++t) {
      Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
      bool all = true;
      for (int c = 0; c < copies && all; ++c)
        all = detail::run_adaptive_copy(*protocol.tree, state, rng);
      successes += all;
    }
    return static_cast<double>(successes) / static_cast<double>(trials);
  }

  if (protocol.settings.empty())
    throw std::invalid_argument("protocol has no settings");
  double total_weight = 0.0;
  for (const auto& s : protocol.settings) total_weight += s.weight;
  if (std::abs(total_weight - 1.0) > kAlgebraTol)
    throw std::invalid_argument("protocol weights do not sum to 1");

  // The tested state is fixed, so each setting's outcome distribution can be
  // tabulated once.
  std::vector<std::vector<double>> outcome_cdf(protocol.settings.size());
  for (std::size_t i = 0; i < protocol.settings.size(); ++i) {
    std::vector<double> probs = born_probabilities(state, protocol.settings[i].axes);
    double acc = 0.0;
    outcome_cdf[i].resize(probs.size());
    for (std::size_t o = 0; o < probs.size(); ++o) {
      acc += probs[o];
      outcome_cdf[i][o] = acc;
    }
  }
  std::vector<double> weight_cdf(protocol.settings.size());
  {
    double acc = 0.0;
    for (std::size_t i = 0; i < protocol.settings.size(); ++i) {
      acc += protocol.settings[i].weight;
      weight_cdf[i] = acc;
    }
  }

  long successes = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
    bool all = true;
    for (int c = 0; c < copies && all; ++c) {
      const double u = rng.uniform() * total_weight;
      std::size_t i = 0;
      while (i + 1 < weight_cdf.size() && u >= weight_cdf[i]) ++i;
      const auto& cdf = outcome_cdf[i];
      const double v = rng.uniform() * cdf.back();
      std::size_t o = 0;
      while (o + 1 < cdf.size() && v >= cdf[o]) ++o;
      all = rng.uniform() < protocol.settings[i].pass[o];
    }
    successes += all;
  }
  return static_cast<double>(successes) / static_cast<double>(trials);
}

/// Fidelity estimate from pass/fail counts.
struct EstimationResult {
  double fidelity = 0.0;
  double std_dev = 0.0;
  long pass_count = 0;
  long total = 0;
  double scale = 1.0;  // 1 unless the protocol was rescaled by S
};

/// F = (scale * f - (1 - nu)) / nu with f the pass fraction; the standard
/// deviation sqrt((1-F)(F + 1/nu - 1)) / sqrt(N) is clamped at the universal
/// bound 1 / (2 nu sqrt(N)).
inline EstimationResult fidelity_estimate(long pass_count, long total, double nu,
                                          double scale = 1.0) {
  if (total < 1) throw std::invalid_argument("total must be >= 1");
  if (pass_count < 0 || pass_count > total)
    throw std::invalid_argument("pass_count must lie in [0, total]");
  if (!(nu > 0.0 && nu <= 1.0))
    throw std::invalid_argument("nu must lie in (0,1]");
  if (scale < 1.0) throw std::invalid_argument("scale must be >= 1");

  EstimationResult out;
  out.pass_count = pass_count;
  out.total = total;
  out.scale = scale;
  const double f = static_cast<double>(pass_count) / static_cast<double>(total);
  out.fidelity = (scale * f - (1.0 - nu)) / nu;
  const double sqrt_n = std::sqrt(static_cast<double>(total));
  const double var = (1.0 - out.fidelity) * (out.fidelity + 1.0 / nu - 1.0);
  const double raw = var > 0.0 ? std::sqrt(var) / sqrt_n : 0.0;
  out.std_dev = std::min(raw, 1.0 / (2.0 * nu * sqrt_n));
  return out;
}

/// Divides a table whose completeness exceeds 1 by S, making it realizable
/// for estimation; the target then passes with probability 1/S and estimates
/// carry the factor S.
inline std::pair<QuasiProbTable, double> rescale_for_estimation(
    const QuasiProbTable& table) {
  if (table.positivity_min() < -kAlgebraTol)
    throw std::invalid_argument("rescale expects a nonnegative table");
  const double s = table.completeness();
  if (s <= 1.0 + kAlgebraTol)
    throw InfeasibleError("table is already complete; nothing to rescale");
  QuasiProbTable scaled = table;
  for (std::size_t st = 0; st < scaled.num_settings(); ++st)
    for (std::size_t o = 0; o < scaled.num_outcomes(); ++o)
      scaled.value(st, o) /= s;
  return {std::move(scaled), s};
}

/// kappa = square of the maximal Schmidt coefficient over all bipartitions:
/// the largest eigenvalue among all proper reduced states of the target.
inline double compute_kappa(const StateVector& psi) {
  const int n = psi.qubit_count();
  if (n < 2) throw std::invalid_argument("kappa needs at least two qubits");
  const Matrix rho = psi.projector();
  double kappa = 0.0;
  // Complementary subsets share their nonzero spectrum, so scanning subsets
  // containing qubit 0 covers every bipartition.
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    if (!(mask & 1) || mask == (std::size_t{1} << n) - 1) continue;
    std::vector<int> keep;
    for (int qb = 0; qb < n; ++qb)
      if (mask >> qb & 1) keep.push_back(qb);
    Spectrum sp = hermitian_eigenvalues(partial_trace(rho, keep));
    kappa = std::max(kappa, sp.eigenvalues.front());
  }
  return kappa;
}

/// Entanglement witness W = kappa 1 - |psi><psi| and its expectation on the
/// target, kappa - 1.
struct WitnessReport {
  double kappa = 0.0;
  Matrix op;
  double expectation = 0.0;  // on the target state
};

inline WitnessReport witness(const StateVector& psi) {
  WitnessReport report;
  report.kappa = compute_kappa(psi);
  report.op = Matrix::identity(psi.dim()) * cdouble(report.kappa) - psi.projector();
  report.expectation = report.kappa - 1.0;
  return report;
}

inline double witness_expectation(const Matrix& w, const Matrix& rho) {
  if (w.dim() != rho.dim())
    throw std::invalid_argument("witness/state dimension mismatch");
  cdouble t = 0.0;
  for (std::size_t r = 0; r < w.dim(); ++r)
    for (std::size_t c = 0; c < w.dim(); ++c) t += w(r, c) * rho(c, r);
  if (std::abs(t.imag()) > kAlgebraTol)
    throw std::invalid_argument("witness expectation came out complex");
  return t.real();
}

/// W = (kappa + (1-nu)/nu) 1 - Omega_Hom / nu; equals kappa 1 - |psi><psi|
/// whenever Omega_Hom is homogeneous with gap nu.
inline Matrix witness_from_protocol(const Matrix& omega_hom, double nu,
                                    double kappa) {
  if (!(nu > 0.0 && nu <= 1.0))
    throw std::invalid_argument("nu must lie in (0,1]");
  Spectrum sp = hermitian_eigenvalues(omega_hom);
  if (std::abs(sp.eigenvalues.front() - 1.0) > 1e-6)
    throw std::invalid_argument("operator is not a protocol: top eigenvalue != 1");
  for (std::size_t i = 1; i < sp.eigenvalues.size(); ++i)
    if (std::abs(sp.eigenvalues[i] - (1.0 - nu)) > 1e-6)
      throw std::invalid_argument(
          "operator is not homogeneous with the stated gap");
  Matrix w = Matrix::identity(omega_hom.dim()) *
             cdouble(kappa + (1.0 - nu) / nu);
  w -= omega_hom * cdouble(1.0 / nu);
  return w;
}

}  // namespace qsv
