#pragma once

// Test-only dense complex-matrix oracle for Pauli phase bookkeeping and
// Clifford conjugation on <= 4 qubits. Kept independent of the implementation
// it checks: everything here is literal matrix arithmetic.

#include <complex>
#include <stdexcept>
#include <vector>

#include "qecgrow/pauli.hpp"

namespace dense {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat eye(std::size_t n) {
  Mat m(n, std::vector<C>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat r(n, std::vector<C>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (a[i][j] != C(0))
        for (std::size_t l = 0; l < m; ++l) r[i][l] += a[i][j] * b[j][l];
  return r;
}

inline Mat kron(const Mat& a, const Mat& b) {
  std::size_t na = a.size(), nb = b.size();
  Mat r(na * nb, std::vector<C>(na * nb, 0));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          r[i * nb + k][j * nb + l] = a[i][j] * b[k][l];
  return r;
}

inline Mat dagger(const Mat& a) {
  std::size_t n = a.size();
  Mat r(n, std::vector<C>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

inline Mat scale(C s, Mat a) {
  for (auto& row : a)
    for (auto& v : row) v *= s;
  return a;
}

inline bool approx_equal(const Mat& a, const Mat& b, double tol = 1e-9) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (std::abs(a[i][j] - b[i][j]) > tol) return false;
  return true;
}

inline Mat pauli_1q(char p) {
  switch (p) {
    case 'I':
    case '_':
      return {{1, 0}, {0, 1}};
    case 'X':
      return {{0, 1}, {1, 0}};
    case 'Y':
      return {{0, C(0, -1)}, {C(0, 1), 0}};
    case 'Z':
      return {{1, 0}, {0, -1}};
  }
  throw std::invalid_argument("pauli_1q");
}

/// Dense matrix of a PauliString including its i^phase prefactor.
inline Mat matrix_of(const qecgrow::PauliString& p) {
  Mat m = eye(1);
  for (std::size_t q = 0; q < p.num_qubits(); ++q) {
    Mat site = mul(p.x(q) ? pauli_1q('X') : eye(2),
                   p.z(q) ? pauli_1q('Z') : eye(2));
    m = kron(m, site);
  }
  static const C iphase[4] = {1, C(0, 1), -1, C(0, -1)};
  return scale(iphase[p.phase() & 3], m);
}

inline Mat gate_matrix(const qecgrow::CliffordGate& g, std::size_t n) {
  using qecgrow::GateKind;
  const double s = 1.0 / std::sqrt(2.0);
  if (g.kind == GateKind::H || g.kind == GateKind::H_YZ) {
    Mat u = g.kind == GateKind::H
                ? Mat{{s, s}, {s, -s}}
                // H_YZ = (Y + Z)/sqrt(2)
                : Mat{{s, C(0, -s)}, {C(0, s), -s}};
    Mat m = eye(1);
    for (std::size_t q = 0; q < n; ++q) m = kron(m, q == g.q0 ? u : eye(2));
    return m;
  }
  // CX built from projectors: |0><0|_c (x) I + |1><1|_c (x) X_t.
  Mat p0 = {{1, 0}, {0, 0}}, p1 = {{0, 0}, {0, 1}};
  Mat a = eye(1), b = eye(1);
  for (std::size_t q = 0; q < n; ++q) {
    a = kron(a, q == g.q0 ? p0 : eye(2));
    b = kron(b, q == g.q0 ? p1 : (q == g.q1 ? pauli_1q('X') : eye(2)));
  }
  Mat m = a;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] += b[i][j];
  return m;
}

/// g * M * g^dagger.
inline Mat conjugate_matrix(const Mat& u, const Mat& m) {
  return mul(mul(u, m), dagger(u));
}

}  // namespace dense
