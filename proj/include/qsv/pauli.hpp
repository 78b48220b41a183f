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
#include <cstdio>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsv/linalg.hpp"

namespace qsv {

/// Real coefficients c_alpha of a Hermitian operator over the tensor Pauli
/// basis, Pi = 2^-n sum_alpha c_alpha sigma_a1 x ... x sigma_an. Indexed in
/// base 4 with qubit 0 as the most significant digit.
struct PauliCoefficients {
  int n = 0;
  std::vector<double> c;  // length 4^n

  double at(const std::vector<int>& alpha) const {
    std::size_t idx = 0;
    for (int a : alpha) idx = idx * 4 + static_cast<std::size_t>(a);
    return c[idx];
  }
};

/// c_alpha = tr(op * sigma_a1 x ... x sigma_an). Each sigma tensor is a
/// signed permutation, so one trace costs O(2^n) instead of a dense product.
inline PauliCoefficients pauli_coefficients(const Matrix& op) {
  const int n = qubit_count_for_dim(op.dim());
  if (!op.is_hermitian())
    throw std::invalid_argument("pauli_coefficients expects a Hermitian operator");
  const std::size_t dim = op.dim();
  const std::size_t total = std::size_t{1} << (2 * n);

  PauliCoefficients out;
  out.n = n;
  out.c.resize(total);
  std::vector<int> alpha(n);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (int qb = n - 1; qb >= 0; --qb) {
      alpha[qb] = static_cast<int>(rest & 3);
      rest >>= 2;
    }
    std::size_t flip = 0;
    for (int qb = 0; qb < n; ++qb)
      if (alpha[qb] == 1 || alpha[qb] == 2)
        flip |= std::size_t{1} << (n - 1 - qb);
    cdouble sum = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      // entry sigma(j ^ flip, j)
      cdouble phase = 1.0;
      for (int qb = 0; qb < n; ++qb) {
        const bool bit = (j >> (n - 1 - qb)) & 1;
        if (alpha[qb] == 2) phase *= bit ? cdouble(0, -1) : cdouble(0, 1);
        if (alpha[qb] == 3 && bit) phase = -phase;
      }
      sum += op(j, j ^ flip) * phase;
    }
    if (std::abs(sum.imag()) > kAlgebraTol)
      throw std::invalid_argument("pauli coefficient came out complex");
    out.c[idx] = sum.real();
  }
  return out;
}

/// The 4x6 transformation T expressing {sigma_0..sigma_3} over the six Pauli
/// projectors, column order [PX+, PX-, PY+, PY-, PZ+, PZ-]. Rows t_1..t_3 are
/// fixed; t_0 = (a1, a1, a2, a2, a3, a3) with nonnegative weights summing
/// to 1. The symmetric choice is (1/3, 1/3, 1/3).
class Transformation {
public:
  static Transformation symmetric() {
    return Transformation({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  }

  explicit Transformation(const std::array<double, 3>& weights)
      : weights_(weights) {
    double sum = 0.0;
    for (double w : weights_) {
      if (w < -1e-12)
        throw std::invalid_argument("transformation weights must be nonnegative");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kAlgebraTol)
      throw std::invalid_argument("transformation weights must sum to 1");
  }

  const std::array<double, 3>& weights() const { return weights_; }

  std::array<double, 6> row(int k) const {
    switch (k) {
      case 0:
        return {weights_[0], weights_[0], weights_[1],
                weights_[1], weights_[2], weights_[2]};
      case 1: return {1.0, -1.0, 0.0, 0.0, 0.0, 0.0};
      case 2: return {0.0, 0.0, 1.0, -1.0, 0.0, 0.0};
      case 3: return {0.0, 0.0, 0.0, 0.0, 1.0, -1.0};
      default: throw std::invalid_argument("transformation row must be 0..3");
    }
  }

private:
  std::array<double, 3> weights_;
};

inline Transformation make_transformation(const std::array<double, 3>& weights) {
  return Transformation(weights);
}

/// Pauli projector P_axis^outcome = (1 + (-1)^outcome sigma_axis) / 2 for
/// axis in {0:X, 1:Y, 2:Z}.
inline Matrix pauli_projector(int axis, int outcome) {
  if (axis < 0 || axis > 2 || outcome < 0 || outcome > 1)
    throw std::invalid_argument("pauli projector axis/outcome out of range");
  Matrix p = Matrix::identity(2);
  p += pauli(axis + 1) * cdouble(outcome == 0 ? 1.0 : -1.0);
  p *= 0.5;
  return p;
}

/// Quasi-probability distribution p_{i,j} over 3^n measurement settings
/// (axes in {X,Y,Z}^n, qubit 0 slowest) and 2^n outcomes (+/- per qubit,
/// qubit 0 slowest). This row/column order matches the matrices a protocol
/// designer would print, so tables can be compared entry for entry.
class QuasiProbTable {
public:
  QuasiProbTable(int n, std::vector<double> values,
                 std::optional<Transformation> transformation)
      : n_(n), values_(std::move(values)),
        transformation_(std::move(transformation)) {
    if (n_ < 1 || n_ > kMaxQubits)
      throw std::invalid_argument("qubit count must be in 1.." +
                                  std::to_string(kMaxQubits));
    if (values_.size() != num_settings() * num_outcomes())
      throw std::invalid_argument("quasi-probability table has wrong size");
  }

  static QuasiProbTable zeros(int n, std::optional<Transformation> t = {}) {
    std::size_t settings = 1, outcomes = 1;
    for (int i = 0; i < n; ++i) {
      settings *= 3;
      outcomes *= 2;
    }
    return QuasiProbTable(n, std::vector<double>(settings * outcomes), std::move(t));
  }

  int qubit_count() const { return n_; }
  std::size_t num_settings() const {
    std::size_t s = 1;
    for (int i = 0; i < n_; ++i) s *= 3;
    return s;
  }
  std::size_t num_outcomes() const { return std::size_t{1} << n_; }

  double value(std::size_t setting, std::size_t outcome) const {
    return values_[setting * num_outcomes() + outcome];
  }
  double& value(std::size_t setting, std::size_t outcome) {
    return values_[setting * num_outcomes() + outcome];
  }
  const std::vector<double>& values() const { return values_; }

  const std::optional<Transformation>& transformation() const {
    return transformation_;
  }

  /// Axis of a given qubit within a setting index, 0:X 1:Y 2:Z.
  int setting_axis(std::size_t setting, int qubit) const {
    for (int qb = n_ - 1; qb > qubit; --qb) setting /= 3;
    return static_cast<int>(setting % 3);
  }

  std::string setting_label(std::size_t setting) const {
    static const char kAxes[] = "XYZ";
    std::string s(n_, '?');
    for (int qb = n_ - 1; qb >= 0; --qb) {
      s[qb] = kAxes[setting % 3];
      setting /= 3;
    }
    return s;
  }

  std::string outcome_label(std::size_t outcome) const {
    std::string s(n_, '+');
    for (int qb = 0; qb < n_; ++qb)
      if (outcome >> (n_ - 1 - qb) & 1) s[qb] = '-';
    return s;
  }

  double positivity_min() const {
    double m = values_.empty() ? 0.0 : values_.front();
    for (double v : values_) m = std::min(m, v);
    return m;
  }

  /// S = sum over settings of the per-setting maximum over outcomes.
  double completeness() const {
    double s = 0.0;
    for (std::size_t i = 0; i < num_settings(); ++i) s += row_max(i);
    return s;
  }

  double row_max(std::size_t setting) const {
    double m = value(setting, 0);
    for (std::size_t o = 1; o < num_outcomes(); ++o)
      m = std::max(m, value(setting, o));
    return m;
  }

  double row_min(std::size_t setting) const {
    double m = value(setting, 0);
    for (std::size_t o = 1; o < num_outcomes(); ++o)
      m = std::min(m, value(setting, o));
    return m;
  }

  /// Sum of all entries; equals the trace of the reconstructed operator
  /// because every projector tensor has unit trace.
  double sum() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s;
  }

private:
  int n_;
  std::vector<double> values_;  // [setting][outcome], row-major
  std::optional<Transformation> transformation_;
};

namespace detail {

// Re-indexes a flat tensor over slots {0..5}^n (slot = 2*axis + outcome,
// qubit 0 slowest) into the [setting][outcome] table layout.
inline QuasiProbTable table_from_slots(int n, const std::vector<double>& slots,
                                       std::optional<Transformation> t) {
  QuasiProbTable table = QuasiProbTable::zeros(n, std::move(t));
  for (std::size_t idx = 0; idx < slots.size(); ++idx) {
    std::size_t rest = idx, setting = 0, outcome = 0;
    std::size_t pow3 = 1, pow2 = 1;
    for (int qb = n - 1; qb >= 0; --qb) {
      const std::size_t slot = rest % 6;
      rest /= 6;
      setting += (slot / 2) * pow3;
      outcome += (slot % 2) * pow2;
      pow3 *= 3;
      pow2 *= 2;
    }
    table.value(setting, outcome) = slots[idx];
  }
  return table;
}

inline std::vector<double> slots_from_table(const QuasiProbTable& table) {
  const int n = table.qubit_count();
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 6;
  std::vector<double> slots(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx, setting = 0, outcome = 0;
    std::size_t pow3 = 1, pow2 = 1;
    for (int qb = n - 1; qb >= 0; --qb) {
      const std::size_t slot = rest % 6;
      rest /= 6;
      setting += (slot / 2) * pow3;
      outcome += (slot % 2) * pow2;
      pow3 *= 3;
      pow2 *= 2;
    }
    slots[idx] = table.value(setting, outcome);
  }
  return slots;
}

}  // namespace detail

/// Quasi-probability table of an operator under a transformation T:
/// p = 2^-n sum_alpha c_alpha t_{a1} x ... x t_{an}, evaluated as a
/// mode-by-mode linear transform of the Pauli coefficient tensor.
inline QuasiProbTable quasi_prob(const Matrix& op, const Transformation& t) {
  const int n = qubit_count_for_dim(op.dim());
  PauliCoefficients coeff = pauli_coefficients(op);

  // M[slot][beta] = t_beta[slot]
  std::array<std::array<double, 4>, 6> m{};
  for (int beta = 0; beta < 4; ++beta) {
    const auto row = t.row(beta);
    for (int slot = 0; slot < 6; ++slot) m[slot][beta] = row[slot];
  }

  std::vector<double> cur = std::move(coeff.c);
  std::size_t lead = 1;
  std::size_t tail = std::size_t{1} << (2 * (n - 1));
  for (int qb = 0; qb < n; ++qb) {
    std::vector<double> next(lead * 6 * tail);
    for (std::size_t l = 0; l < lead; ++l)
      for (int slot = 0; slot < 6; ++slot) {
        double* dst = next.data() + (l * 6 + slot) * tail;
        for (int beta = 0; beta < 4; ++beta) {
          const double f = m[slot][beta];
          if (f == 0.0) continue;
          const double* src = cur.data() + (l * 4 + beta) * tail;
          for (std::size_t k = 0; k < tail; ++k) dst[k] += f * src[k];
        }
      }
    cur = std::move(next);
    lead *= 6;
    tail /= 4;
  }
  const double scale = 1.0 / static_cast<double>(std::size_t{1} << n);
  for (double& v : cur) v *= scale;
  return detail::table_from_slots(n, cur, t);
}

/// Weighted sum of projector tensors, sum_{i,j} p_{i,j} P^{j1}_{i1} x ...;
/// the inverse of quasi_prob. Contracts each mode back to Pauli coefficients
/// before materializing, so the cost stays O(n 6^n + 8^n).
inline Matrix reconstruct(const QuasiProbTable& table) {
  const int n = table.qubit_count();
  // B[beta][slot]: sigma_beta coefficient of the projector in that slot.
  std::array<std::array<double, 6>, 4> b{};
  for (int axis = 0; axis < 3; ++axis)
    for (int outcome = 0; outcome < 2; ++outcome) {
      b[0][2 * axis + outcome] = 0.5;
      b[axis + 1][2 * axis + outcome] = outcome == 0 ? 0.5 : -0.5;
    }

  std::vector<double> cur = detail::slots_from_table(table);
  std::size_t lead = 1, tail = 1;
  for (int i = 0; i < n - 1; ++i) tail *= 6;
  for (int qb = 0; qb < n; ++qb) {
    std::vector<double> next(lead * 4 * tail);
    for (std::size_t l = 0; l < lead; ++l)
      for (int beta = 0; beta < 4; ++beta) {
        double* dst = next.data() + (l * 4 + beta) * tail;
        for (int slot = 0; slot < 6; ++slot) {
          const double f = b[beta][slot];
          if (f == 0.0) continue;
          const double* src = cur.data() + (l * 6 + slot) * tail;
          for (std::size_t k = 0; k < tail; ++k) dst[k] += f * src[k];
        }
      }
    cur = std::move(next);
    lead *= 4;
    tail /= 6;
  }

  // cur now holds q_alpha with op = sum_alpha q_alpha sigma-tensor.
  const std::size_t dim = std::size_t{1} << n;
  Matrix out(dim);
  std::vector<int> alpha(n);
  for (std::size_t idx = 0; idx < cur.size(); ++idx) {
    const double q = cur[idx];
    if (q == 0.0) continue;
    std::size_t rest = idx;
    for (int qb = n - 1; qb >= 0; --qb) {
      alpha[qb] = static_cast<int>(rest & 3);
      rest >>= 2;
    }
    std::size_t flip = 0;
    for (int qb = 0; qb < n; ++qb)
      if (alpha[qb] == 1 || alpha[qb] == 2)
        flip |= std::size_t{1} << (n - 1 - qb);
    for (std::size_t j = 0; j < dim; ++j) {
      cdouble phase = 1.0;
      for (int qb = 0; qb < n; ++qb) {
        const bool bit = (j >> (n - 1 - qb)) & 1;
        if (alpha[qb] == 2) phase *= bit ? cdouble(0, -1) : cdouble(0, 1);
        if (alpha[qb] == 3 && bit) phase = -phase;
      }
      out(j ^ flip, j) += q * phase;
    }
  }
  return out;
}

inline double completeness(const QuasiProbTable& table) {
  return table.completeness();
}

inline double positivity_min(const QuasiProbTable& table) {
  return table.positivity_min();
}

/// Formats a value with 12 significant digits.
inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// CSV matrix in reference row order: one line per setting (XX..ZZ, qubit 0
/// slowest), one column per outcome (++, +-, -+, --).
inline std::string to_csv(const QuasiProbTable& table) {
  std::string out;
  for (std::size_t s = 0; s < table.num_settings(); ++s) {
    for (std::size_t o = 0; o < table.num_outcomes(); ++o) {
      if (o) out += ',';
      out += format_number(table.value(s, o));
    }
    out += '\n';
  }
  return out;
}

}  // namespace qsv
