#pragma once

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "qecgrow/pauli.hpp"
#include "qecgrow/rng.hpp"

namespace qecgrow {

struct MeasureResult {
  bool bit;
  bool deterministic;
};

/// Aaronson-Gottesman stabilizer tableau over n qubits: n destabilizer rows
/// and n stabilizer rows, phase-tracked with PauliString arithmetic. Initial
/// state is |0...0> (destab_i = X_i, stab_i = Z_i).
///
/// Single-owner mutable; all randomness comes from the Rng argument.
class Tableau {
 public:
  explicit Tableau(std::size_t n) : n_(n) {
    rows_.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i)
      rows_.push_back(PauliString::single(n, i, 'X'));
    for (std::size_t i = 0; i < n; ++i)
      rows_.push_back(PauliString::single(n, i, 'Z'));
  }

  std::size_t num_qubits() const { return n_; }

  const PauliString& destabilizer(std::size_t i) const { return rows_[i]; }
  const PauliString& stabilizer(std::size_t i) const { return rows_[n_ + i]; }

  void apply(const CliffordGate& g) {
    for (auto& r : rows_) conjugate_in_place(r, g);
  }

  /// Apply a Pauli operator to the state: rows anticommuting with it flip
  /// sign.
  void apply_pauli(const PauliString& p) {
    for (auto& r : rows_)
      if (!r.commutes(p)) r.set_phase(r.phase() + 2);
  }

  /// Measure a Hermitian Pauli observable. Deterministic when +-P is in the
  /// stabilizer group; otherwise the outcome comes from rng (or `forced` when
  /// provided) and the tableau is updated.
  MeasureResult measure_pauli(const PauliString& p, Rng& rng,
                              std::optional<bool> forced = std::nullopt) {
    if (p.num_qubits() != n_)
      throw std::invalid_argument("measure_pauli: size mismatch");
    if (!p.is_hermitian())
      throw std::invalid_argument("measure_pauli: non-Hermitian observable");

    std::size_t pivot = n_;
    for (std::size_t i = 0; i < n_; ++i) {
      if (!stabilizer(i).commutes(p)) {
        pivot = i;
        break;
      }
    }

    if (pivot == n_) {
      // Deterministic: express P as a product of stabilizers via the
      // destabilizer pairing.
      PauliString acc = PauliString::identity(n_);
      for (std::size_t i = 0; i < n_; ++i)
        if (!destabilizer(i).commutes(p)) acc *= stabilizer(i);
      assert(acc.same_support_pattern(p));
      bool bit = ((acc.phase() - p.phase()) & 3u) != 0;
      return {bit, true};
    }

    bool bit = forced ? *forced : rng.bit();
    PauliString old_stab = stabilizer(pivot);
    for (std::size_t r = 0; r < 2 * n_; ++r) {
      if (r == n_ + pivot) continue;
      if (!rows_[r].commutes(p)) rows_[r] *= old_stab;
    }
    rows_[pivot] = old_stab;  // new destabilizer
    PauliString s = p;
    if (bit) s.set_phase(s.phase() + 2);
    rows_[n_ + pivot] = s;
    return {bit, false};
  }

  /// The stabilizer row displaced by a fresh nondeterministic measurement of
  /// p; connects the two outcome branches. Valid before calling measure_pauli.
  std::optional<PauliString> branch_operator(const PauliString& p) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (!stabilizer(i).commutes(p)) return stabilizer(i);
    return std::nullopt;
  }

  MeasureResult measure_z(std::size_t q, Rng& rng,
                          std::optional<bool> forced = std::nullopt) {
    return measure_pauli(PauliString::single(n_, q, 'Z'), rng, forced);
  }

  /// Reset qubit q to |0> (basis 'Z') or |+> (basis 'X').
  void reset(std::size_t q, char basis, Rng& rng) {
    char meas = basis == 'Z' ? 'Z' : 'X';
    char fix = basis == 'Z' ? 'X' : 'Z';
    if (basis != 'Z' && basis != 'X')
      throw std::invalid_argument("reset: basis must be 'Z' or 'X'");
    auto r = measure_pauli(PauliString::single(n_, q, meas), rng,
                           std::nullopt);
    if (r.bit) apply_pauli(PauliString::single(n_, q, fix));
  }

 private:
  std::size_t n_;
  std::vector<PauliString> rows_;  // [0,n): destabilizers, [n,2n): stabilizers
};

}  // namespace qecgrow
