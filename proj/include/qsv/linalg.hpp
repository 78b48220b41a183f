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
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qsv/errors.hpp"

namespace qsv {

using cdouble = std::complex<double>;

/// Hard cap on the register size; tables of size 3^n x 2^n and matrices of
/// size 4^n stay desk-scale up to here.
inline constexpr int kMaxQubits = 8;

/// Entries of operators are expected to satisfy algebraic identities
/// (hermiticity, idempotence, eigenvalue relations) to this tolerance.
inline constexpr double kAlgebraTol = 1e-9;

/// Number of qubits for a Hilbert-space dimension, i.e. log2(dim) with
/// validation that dim is a power of two in [2, 2^kMaxQubits].
inline int qubit_count_for_dim(std::size_t dim) {
  int n = 0;
  std::size_t d = dim;
  while (d > 1 && (d & 1) == 0) {
    d >>= 1;
    ++n;
  }
  if (d != 1 || n < 1) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  if (n > kMaxQubits) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " exceeds the " +
                                std::to_string(kMaxQubits) + "-qubit cap");
  }
  return n;
}

/// Dense complex square matrix in row-major order. Tensor factors follow the
/// convention of kron(): the first factor indexes the slowest-varying blocks,
/// so qubit 0 owns the most significant bit of a basis index.
class Matrix {
public:
  Matrix() : dim_(0) {}
  explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }

  cdouble& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const cdouble& operator()(std::size_t r, std::size_t c) const {
    return a_[r * dim_ + c];
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Matrix& operator*=(cdouble s) {
    for (auto& v : a_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, cdouble s) { return a *= s; }
  friend Matrix operator*(cdouble s, Matrix a) { return a *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    a.require_same_dim(b);
    const std::size_t d = a.dim_;
    Matrix out(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        const cdouble aik = a(i, k);
        if (aik == cdouble{}) continue;
        for (std::size_t j = 0; j < d; ++j) out(i, j) += aik * b(k, j);
      }
    }
    return out;
  }

  Matrix adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  cdouble trace() const {
    cdouble t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest deviation from hermiticity, max |a_ij - conj(a_ji)|.
  double hermiticity_defect() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = r; c < dim_; ++c)
        worst = std::max(worst,
                         std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
  }

  bool is_hermitian(double tol = kAlgebraTol) const {
    return hermiticity_defect() <= tol;
  }

  double max_abs_diff(const Matrix& o) const {
    require_same_dim(o);
    double worst = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
      worst = std::max(worst, std::abs(a_[i] - o.a_[i]));
    return worst;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

private:
  void require_same_dim(const Matrix& o) const {
    if (dim_ != o.dim_) throw std::invalid_argument("matrix dimension mismatch");
  }

  std::size_t dim_;
  std::vector<cdouble> a_;
};

/// Kronecker product; the first factor varies slowest.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  Matrix out(da * db);
  for (std::size_t ra = 0; ra < da; ++ra)
    for (std::size_t ca = 0; ca < da; ++ca) {
      const cdouble f = a(ra, ca);
      if (f == cdouble{}) continue;
      for (std::size_t rb = 0; rb < db; ++rb)
        for (std::size_t cb = 0; cb < db; ++cb)
          out(ra * db + rb, ca * db + cb) = f * b(rb, cb);
    }
  return out;
}

// Single-qubit constants.
inline Matrix pauli_i() { return Matrix::identity(2); }
inline Matrix pauli_x() {
  Matrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}
inline Matrix pauli_y() {
  Matrix m(2);
  m(0, 1) = cdouble(0.0, -1.0);
  m(1, 0) = cdouble(0.0, 1.0);
  return m;
}
inline Matrix pauli_z() {
  Matrix m(2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

/// sigma_k for k in {0:I, 1:X, 2:Y, 3:Z}.
inline Matrix pauli(int k) {
  switch (k) {
    case 0: return pauli_i();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
    default: throw std::invalid_argument("pauli index must be 0..3");
  }
}

/// Eigenvalues of a Hermitian operator, sorted non-increasing. `gap` is
/// 1 - lambda_2, which is the spectral gap when the top eigenvalue is 1.
struct Spectrum {
  std::vector<double> eigenvalues;
  double gap = 0.0;
};

/// Full eigensystem; column c of `vectors` is the eigenvector of
/// eigenvalues[c].
struct EigenSystem {
  std::vector<double> eigenvalues;
  Matrix vectors;
};

namespace detail {

// One two-sided unitary rotation J annihilating A(p,q). With
// r = |A(p,q)|, phi = arg(A(p,q)) and tau = (A(q,q) - A(p,p)) / (2r), the
// smaller-angle tangent t solves t^2 + 2*tau*t - 1 = 0 and
//   J(p,p) = c,            J(p,q) = s e^{i phi},
//   J(q,p) = -s e^{-i phi}, J(q,q) = c.
inline void jacobi_rotate(Matrix& a, Matrix* v, std::size_t p, std::size_t q) {
  const cdouble apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cdouble phase = apq / r;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double tau = (aqq - app) / (2.0 * r);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cdouble spq = s * phase;              // s e^{i phi}
  const cdouble sqp = s * std::conj(phase);   // s e^{-i phi}

  const std::size_t dim = a.dim();
  for (std::size_t k = 0; k < dim; ++k) {
    if (k == p || k == q) continue;
    const cdouble akp = a(k, p);
    const cdouble akq = a(k, q);
    a(k, p) = c * akp - sqp * akq;
    a(k, q) = spq * akp + c * akq;
    a(p, k) = std::conj(a(k, p));
    a(q, k) = std::conj(a(k, q));
  }
  a(p, p) = app - t * r;
  a(q, q) = aqq + t * r;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  if (v != nullptr) {
    for (std::size_t k = 0; k < dim; ++k) {
      const cdouble vkp = (*v)(k, p);
      const cdouble vkq = (*v)(k, q);
      (*v)(k, p) = c * vkp - sqp * vkq;
      (*v)(k, q) = spq * vkp + c * vkq;
    }
  }
}

inline double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Cyclic Jacobi sweeps until the off-diagonal norm drops below 1e-12.
inline EigenSystem jacobi_eigensystem(Matrix a, bool want_vectors) {
  const std::size_t dim = a.dim();
  if (a.hermiticity_defect() > kAlgebraTol) {
    throw std::invalid_argument("jacobi eigensolver requires a Hermitian matrix");
  }
  // Fold numerical noise so the iteration works on an exactly Hermitian copy.
  for (std::size_t r = 0; r < dim; ++r) {
    a(r, r) = a(r, r).real();
    for (std::size_t c = r + 1; c < dim; ++c) {
      const cdouble m = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = m;
      a(c, r) = std::conj(m);
    }
  }

  Matrix v;
  if (want_vectors) v = Matrix::identity(dim);
  constexpr double kOffTol = 1e-12;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) < kOffTol) break;
    for (std::size_t p = 0; p + 1 < dim; ++p)
      for (std::size_t q = p + 1; q < dim; ++q)
        jacobi_rotate(a, want_vectors ? &v : nullptr, p, q);
  }

  EigenSystem sys;
  sys.eigenvalues.resize(dim);
  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(dim);
  for (std::size_t i = 0; i < dim; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });
  for (std::size_t i = 0; i < dim; ++i) sys.eigenvalues[i] = diag[order[i]];
  if (want_vectors) {
    sys.vectors = Matrix(dim);
    for (std::size_t c = 0; c < dim; ++c)
      for (std::size_t r = 0; r < dim; ++r) sys.vectors(r, c) = v(r, order[c]);
  }
  return sys;
}

}  // namespace detail

/// Eigenvalues of a Hermitian operator in non-increasing order.
inline Spectrum hermitian_eigenvalues(const Matrix& h) {
  EigenSystem sys = detail::jacobi_eigensystem(h, /*want_vectors=*/false);
  Spectrum sp;
  sp.eigenvalues = std::move(sys.eigenvalues);
  sp.gap = sp.eigenvalues.size() > 1 ? 1.0 - sp.eigenvalues[1] : 0.0;
  return sp;
}

/// Eigenvalues and eigenvectors of a Hermitian operator.
inline EigenSystem hermitian_eigensystem(const Matrix& h) {
  return detail::jacobi_eigensystem(h, /*want_vectors=*/true);
}

/// Spectral gap nu = 1 - lambda_2 of a protocol operator whose largest
/// eigenvalue is 1.
inline double spectral_gap(const Matrix& omega) {
  Spectrum sp = hermitian_eigenvalues(omega);
  if (std::abs(sp.eigenvalues.front() - 1.0) > 1e-6) {
    throw std::invalid_argument(
        "not a protocol operator: largest eigenvalue is " +
        std::to_string(sp.eigenvalues.front()) + ", expected 1");
  }
  return sp.gap;
}

/// Reduced operator on the kept qubits (given in ascending order of their
/// original position); requires a unit-trace input.
inline Matrix partial_trace(const Matrix& rho, const std::vector<int>& keep) {
  const int n = qubit_count_for_dim(rho.dim());
  if (std::abs(rho.trace() - cdouble(1.0)) > kAlgebraTol) {
    throw std::invalid_argument("partial_trace expects a unit-trace operator");
  }
  if (keep.empty()) throw std::invalid_argument("partial_trace: empty keep set");
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::unique(kept.begin(), kept.end()) != kept.end() ||
      kept.front() < 0 || kept.back() >= n) {
    throw std::invalid_argument("partial_trace: keep set out of range");
  }
  std::vector<int> traced;
  for (int qb = 0; qb < n; ++qb)
    if (!std::binary_search(kept.begin(), kept.end(), qb)) traced.push_back(qb);

  const int nk = static_cast<int>(kept.size());
  const int nt = static_cast<int>(traced.size());
  const std::size_t dk = std::size_t{1} << nk;
  const std::size_t dt = std::size_t{1} << nt;
  // Qubit q owns bit (n-1-q) of a basis index.
  auto compose = [&](std::size_t kept_bits, std::size_t traced_bits) {
    std::size_t idx = 0;
    for (int b = 0; b < nk; ++b)
      if (kept_bits >> (nk - 1 - b) & 1) idx |= std::size_t{1} << (n - 1 - kept[b]);
    for (int b = 0; b < nt; ++b)
      if (traced_bits >> (nt - 1 - b) & 1)
        idx |= std::size_t{1} << (n - 1 - traced[b]);
    return idx;
  };

  Matrix out(dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      cdouble sum = 0.0;
      for (std::size_t e = 0; e < dt; ++e)
        sum += rho(compose(r, e), compose(c, e));
      out(r, c) = sum;
    }
  return out;
}

/// Projector onto the +1 or -1 eigenspace of an observable whose spectrum
/// lies in {+1, -1}; computed as (1 + sign * O) / 2 after validating the
/// spectrum.
inline Matrix eigenspace_projector(const Matrix& observable, int sign) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("eigenspace sign must be +1 or -1");
  Spectrum sp = hermitian_eigenvalues(observable);
  for (double ev : sp.eigenvalues) {
    if (std::abs(std::abs(ev) - 1.0) > 1e-6) {
      throw std::invalid_argument(
          "observable eigenvalue " + std::to_string(ev) + " is not +-1");
    }
  }
  Matrix p = Matrix::identity(observable.dim());
  p += observable * cdouble(static_cast<double>(sign));
  p *= 0.5;
  return p;
}

}  // namespace qsv
