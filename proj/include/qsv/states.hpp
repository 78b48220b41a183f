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

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qsv/linalg.hpp"

namespace qsv {

/// Signed Pauli string, e.g. -XYZ. Qubit 0 is the leftmost letter and owns
/// the most significant bit of a basis index.
struct PauliString {
  int sign = 1;  // +1 or -1
  std::string letters;

  PauliString() = default;
  PauliString(int sign, std::string letters)
      : sign(sign), letters(std::move(letters)) {
    if (this->sign != 1 && this->sign != -1)
      throw std::invalid_argument("pauli sign must be +1 or -1");
    for (char ch : this->letters)
      if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z')
        throw std::invalid_argument("pauli letter must be one of I,X,Y,Z");
  }

  int qubits() const { return static_cast<int>(letters.size()); }

  bool commutes_with(const PauliString& other) const {
    if (letters.size() != other.letters.size())
      throw std::invalid_argument("pauli string length mismatch");
    int anti = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      const char a = letters[i], b = other.letters[i];
      if (a != 'I' && b != 'I' && a != b) ++anti;
    }
    return anti % 2 == 0;
  }

  Matrix matrix() const {
    Matrix m = Matrix::identity(1);
    for (char ch : letters) {
      int k = ch == 'I' ? 0 : ch == 'X' ? 1 : ch == 'Y' ? 2 : 3;
      m = kron(m, pauli(k));
    }
    return m * cdouble(static_cast<double>(sign));
  }
};

/// Product of two commuting signed Pauli strings. Per qubit,
/// sigma_a sigma_b = i^e sigma_c with e = 1 on the cycle X->Y->Z->X and
/// e = 3 against it; commuting inputs always leave a real overall sign.
inline PauliString operator*(const PauliString& a, const PauliString& b) {
  if (a.letters.size() != b.letters.size())
    throw std::invalid_argument("pauli string length mismatch");
  auto idx = [](char ch) {
    return ch == 'I' ? 0 : ch == 'X' ? 1 : ch == 'Y' ? 2 : 3;
  };
  static const char kLetters[] = "IXYZ";
  int phase_exp = 0;  // exponent of i, mod 4
  std::string letters(a.letters.size(), 'I');
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const int x = idx(a.letters[i]);
    const int y = idx(b.letters[i]);
    if (x == 0) {
      letters[i] = kLetters[y];
    } else if (y == 0 || x == y) {
      letters[i] = x == y ? 'I' : kLetters[x];
    } else {
      letters[i] = kLetters[6 - x - y];  // the third non-identity letter
      const bool cyclic = (y - x + 3) % 3 == 1;  // X->Y, Y->Z, Z->X
      phase_exp = (phase_exp + (cyclic ? 1 : 3)) % 4;
    }
  }
  if (phase_exp % 2 != 0)
    throw std::invalid_argument("product of anticommuting pauli strings");
  int sign = a.sign * b.sign * (phase_exp == 2 ? -1 : 1);
  return PauliString(sign, std::move(letters));
}

/// Normalized n-qubit pure state. Constructors fix the global phase by
/// making the first nonzero amplitude real and positive, so equal states
/// compare equal entrywise.
class StateVector {
public:
  StateVector(int n, std::vector<cdouble> amplitudes)
      : n_(n), amp_(std::move(amplitudes)) {
    if (n_ < 1 || n_ > kMaxQubits)
      throw std::invalid_argument("qubit count must be in 1.." +
                                  std::to_string(kMaxQubits));
    if (amp_.size() != (std::size_t{1} << n_))
      throw std::invalid_argument("amplitude vector has wrong length");
    if (std::abs(norm() - 1.0) > kAlgebraTol)
      throw std::invalid_argument("state vector is not normalized");
    fix_phase();
  }

  /// Normalizes an arbitrary nonzero vector whose length is a power of two.
  static StateVector from_amplitudes(std::vector<cdouble> raw) {
    const int n = qubit_count_for_dim(raw.size());
    double s = 0.0;
    for (const auto& a : raw) s += std::norm(a);
    if (s < 1e-24) throw std::invalid_argument("cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : raw) a *= inv;
    return StateVector(n, std::move(raw));
  }

  int qubit_count() const { return n_; }
  std::size_t dim() const { return amp_.size(); }
  const std::vector<cdouble>& amplitudes() const { return amp_; }
  const cdouble& amplitude(std::size_t i) const { return amp_[i]; }

  double norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
  }

  cdouble inner(const StateVector& other) const {
    if (other.dim() != dim())
      throw std::invalid_argument("state dimension mismatch");
    cdouble s = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i)
      s += std::conj(amp_[i]) * other.amp_[i];
    return s;
  }

  /// |psi><psi|.
  Matrix projector() const {
    Matrix p(dim());
    for (std::size_t r = 0; r < dim(); ++r)
      for (std::size_t c = 0; c < dim(); ++c)
        p(r, c) = amp_[r] * std::conj(amp_[c]);
    return p;
  }

  /// Raw amplitudes of g|psi> for a signed Pauli string g. Returned without
  /// phase fixing so that stabilizer sign flips stay visible.
  std::vector<cdouble> apply(const PauliString& g) const {
    if (g.qubits() != n_) throw std::invalid_argument("pauli length mismatch");
    std::vector<cdouble> out(dim());
    std::size_t flip = 0;
    for (int qb = 0; qb < n_; ++qb)
      if (g.letters[qb] == 'X' || g.letters[qb] == 'Y')
        flip |= std::size_t{1} << (n_ - 1 - qb);
    for (std::size_t j = 0; j < dim(); ++j) {
      cdouble phase = static_cast<double>(g.sign);
      for (int qb = 0; qb < n_; ++qb) {
        const bool bit = (j >> (n_ - 1 - qb)) & 1;
        switch (g.letters[qb]) {
          case 'Y': phase *= bit ? cdouble(0, -1) : cdouble(0, 1); break;
          case 'Z': phase *= bit ? -1.0 : 1.0; break;
          default: break;
        }
      }
      // sigma maps |j> to phase * |j ^ flip>.
      out[j ^ flip] += phase * amp_[j];
    }
    return out;
  }

  double max_abs_diff(const StateVector& other) const {
    if (other.dim() != dim())
      throw std::invalid_argument("state dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < amp_.size(); ++i)
      worst = std::max(worst, std::abs(amp_[i] - other.amp_[i]));
    return worst;
  }

private:
  void fix_phase() {
    for (const auto& a : amp_) {
      if (std::abs(a) > 1e-12) {
        const cdouble rot = std::abs(a) / a;
        for (auto& b : amp_) b *= rot;
        break;
      }
    }
  }

  int n_;
  std::vector<cdouble> amp_;
};

/// (|00> + |11>) / sqrt(2).
inline StateVector bell() {
  const double r = 1.0 / std::sqrt(2.0);
  return StateVector(2, {r, 0.0, 0.0, r});
}

/// (|0...0> + |1...1>) / sqrt(2) on n qubits, 2 <= n <= 8.
inline StateVector ghz(int n) {
  if (n < 2 || n > kMaxQubits)
    throw std::invalid_argument("ghz requires 2 <= n <= " +
                                std::to_string(kMaxQubits));
  std::vector<cdouble> amp(std::size_t{1} << n);
  const double r = 1.0 / std::sqrt(2.0);
  amp.front() = r;
  amp.back() = r;
  return StateVector(n, std::move(amp));
}

/// Equal superposition of all weight-k basis strings, 1 <= k < n <= 8.
inline StateVector dicke(int n, int k) {
  if (n < 2 || n > kMaxQubits || k < 1 || k >= n)
    throw std::invalid_argument("dicke requires 1 <= k < n <= " +
                                std::to_string(kMaxQubits));
  std::vector<cdouble> amp(std::size_t{1} << n);
  std::size_t count = 0;
  for (std::size_t j = 0; j < amp.size(); ++j)
    if (std::popcount(static_cast<unsigned>(j)) == k) ++count;
  const double r = 1.0 / std::sqrt(static_cast<double>(count));
  for (std::size_t j = 0; j < amp.size(); ++j)
    if (std::popcount(static_cast<unsigned>(j)) == k) amp[j] = r;
  return StateVector(n, std::move(amp));
}

/// W_n = Dicke(n, 1).
inline StateVector w_state(int n) { return dicke(n, 1); }

/// A set of signed Pauli strings meant to generate a stabilizer group.
struct StabilizerGenerators {
  int n = 0;
  std::vector<PauliString> generators;

  StabilizerGenerators(int n, std::vector<PauliString> generators)
      : n(n), generators(std::move(generators)) {
    if (n < 1 || n > kMaxQubits)
      throw std::invalid_argument("qubit count must be in 1.." +
                                  std::to_string(kMaxQubits));
    for (const auto& g : this->generators)
      if (g.qubits() != n)
        throw std::invalid_argument("generator length does not match qubit count");
    for (std::size_t i = 0; i < this->generators.size(); ++i)
      for (std::size_t j = i + 1; j < this->generators.size(); ++j)
        if (!this->generators[i].commutes_with(this->generators[j]))
          throw std::invalid_argument("generators do not commute");
    if (!independent())
      throw std::invalid_argument("generators are not independent");
  }

  /// All 2^k group elements (subset products), identity included.
  std::vector<PauliString> group_elements() const {
    std::vector<PauliString> elems{PauliString(1, std::string(n, 'I'))};
    for (const auto& g : generators) {
      const std::size_t count = elems.size();
      for (std::size_t i = 0; i < count; ++i) elems.push_back(elems[i] * g);
    }
    return elems;
  }

private:
  // GF(2) rank of the symplectic (x|z) rows must equal the generator count.
  bool independent() const {
    std::vector<std::uint64_t> rows;
    for (const auto& g : generators) {
      std::uint64_t bits = 0;
      for (int qb = 0; qb < n; ++qb) {
        const char ch = g.letters[qb];
        if (ch == 'X' || ch == 'Y') bits |= std::uint64_t{1} << qb;
        if (ch == 'Z' || ch == 'Y') bits |= std::uint64_t{1} << (n + qb);
      }
      rows.push_back(bits);
    }
    std::size_t rank = 0;
    for (int bit = 0; bit < 2 * n; ++bit) {
      std::size_t pivot = rank;
      while (pivot < rows.size() && !(rows[pivot] >> bit & 1)) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[rank], rows[pivot]);
      for (std::size_t r = 0; r < rows.size(); ++r)
        if (r != rank && (rows[r] >> bit & 1)) rows[r] ^= rows[rank];
      ++rank;
    }
    return rank == rows.size();
  }
};

/// The unique joint +1 eigenstate of n independent commuting generators,
/// extracted from the group projector prod_i (1 + g_i)/2 by power iteration
/// with a fixed seed vector.
inline StateVector stabilizer_state(const StabilizerGenerators& gens) {
  if (static_cast<int>(gens.generators.size()) != gens.n)
    throw std::invalid_argument("stabilizer state needs exactly n generators");
  const std::size_t dim = std::size_t{1} << gens.n;
  Matrix proj = Matrix::identity(dim);
  for (const auto& g : gens.generators) {
    Matrix half = Matrix::identity(dim) + g.matrix();
    half *= 0.5;
    proj = proj * half;
  }

  std::vector<cdouble> v(dim);
  for (std::size_t j = 0; j < dim; ++j)
    v[j] = cdouble(1.0 + 0.25 * std::cos(0.7 * static_cast<double>(j + 1)),
                   0.25 * std::sin(0.3 * static_cast<double>(j + 1)));
  auto apply = [&](const std::vector<cdouble>& in) {
    std::vector<cdouble> out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
      cdouble s = 0.0;
      for (std::size_t c = 0; c < dim; ++c) s += proj(r, c) * in[c];
      out[r] = s;
    }
    return out;
  };
  auto norm_of = [](const std::vector<cdouble>& x) {
    double s = 0.0;
    for (const auto& a : x) s += std::norm(a);
    return std::sqrt(s);
  };

  std::vector<cdouble> w = apply(v);
  if (norm_of(w) < 1e-8) {
    // The fixed seed happened to be orthogonal; any basis vector with a
    // nonzero image works instead.
    for (std::size_t j = 0; j < dim && norm_of(w) < 1e-8; ++j) {
      std::fill(v.begin(), v.end(), cdouble{});
      v[j] = 1.0;
      w = apply(v);
    }
  }
  for (int iter = 0; iter < 2; ++iter) {
    const double s = norm_of(w);
    for (auto& a : w) a /= s;
    w = apply(w);
  }
  return StateVector::from_amplitudes(std::move(w));
}

/// Graph state on up to five vertices: stabilizers K_v = X_v prod_{w~v} Z_w.
inline StateVector graph_state(const std::vector<std::vector<int>>& adjacency) {
  const int n = static_cast<int>(adjacency.size());
  if (n < 1 || n > 5)
    throw std::invalid_argument("graph states are supported on 1..5 vertices");
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(adjacency[r].size()) != n)
      throw std::invalid_argument("adjacency matrix is not square");
    if (adjacency[r][r] != 0)
      throw std::invalid_argument("adjacency matrix has a self-loop");
    for (int c = 0; c < n; ++c)
      if (adjacency[r][c] != adjacency[c][r])
        throw std::invalid_argument("adjacency matrix is not symmetric");
  }
  std::vector<PauliString> gens;
  for (int v = 0; v < n; ++v) {
    std::string letters(n, 'I');
    letters[v] = 'X';
    for (int w = 0; w < n; ++w)
      if (adjacency[v][w]) letters[w] = 'Z';
    gens.emplace_back(1, letters);
  }
  return stabilizer_state(StabilizerGenerators(n, std::move(gens)));
}

}  // namespace qsv
