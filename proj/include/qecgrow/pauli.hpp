#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qecgrow {

/// Phase-tracked n-qubit Pauli operator.
///
/// Representation: operator = i^phase * prod_q X^x(q) * Z^z(q), with the X
/// factor to the left of the Z factor on every qubit. In this convention the
/// Hermitian Y is stored as (x=1, z=1, phase=1) since Y = i*X*Z.
class PauliString {
 public:
  PauliString() = default;

  explicit PauliString(std::size_t n)
      : n_(n), x_((n + 63) / 64, 0), z_((n + 63) / 64, 0) {}

  static PauliString identity(std::size_t n) { return PauliString(n); }

  /// Single-site Pauli given by letter 'X', 'Y', 'Z' (or 'I').
  static PauliString single(std::size_t n, std::size_t q, char pauli) {
    PauliString p(n);
    p.set_pauli(q, pauli);
    return p;
  }

  /// Parse "+XZ_Y" style labels; '_' and 'I' both mean identity. Optional
  /// leading sign: "+", "-", "+i", "-i".
  static PauliString from_str(const std::string& s) {
    std::size_t pos = 0;
    unsigned phase = 0;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
      if (s[pos] == '-') phase = 2;
      ++pos;
      if (pos < s.size() && s[pos] == 'i') {
        phase += 1;
        ++pos;
      }
    }
    PauliString p(s.size() - pos);
    for (std::size_t q = 0; pos < s.size(); ++q, ++pos) p.set_pauli(q, s[pos]);
    p.phase_ = (p.phase_ + phase) & 3u;
    return p;
  }

  std::size_t num_qubits() const { return n_; }

  bool x(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool z(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }

  void set_x(std::size_t q, bool v) { set_bit(x_, q, v); }
  void set_z(std::size_t q, bool v) { set_bit(z_, q, v); }

  /// Overwrite site q with the Hermitian Pauli named by `pauli`, adjusting the
  /// global phase so the string keeps representing the same product of named
  /// Paulis elsewhere.
  void set_pauli(std::size_t q, char pauli) {
    if (x(q) || z(q)) throw std::logic_error("set_pauli: site already set");
    switch (pauli) {
      case 'I':
      case '_':
        break;
      case 'X':
        set_x(q, true);
        break;
      case 'Z':
        set_z(q, true);
        break;
      case 'Y':
        set_x(q, true);
        set_z(q, true);
        phase_ = (phase_ + 1) & 3u;  // Y = i XZ
        break;
      default:
        throw std::invalid_argument("set_pauli: unknown Pauli letter");
    }
  }

  /// The Hermitian Pauli letter at site q, ignoring the global phase.
  char pauli(std::size_t q) const {
    bool xb = x(q), zb = z(q);
    if (xb && zb) return 'Y';
    if (xb) return 'X';
    if (zb) return 'Z';
    return '_';
  }

  unsigned phase() const { return phase_; }
  void set_phase(unsigned p) { phase_ = p & 3u; }

  std::size_t weight() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
      w += std::popcount(x_[i] | z_[i]);
    return w;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < x_.size(); ++i)
      if (x_[i] | z_[i]) return false;
    return true;
  }

  /// popcount(x & z): number of sites carrying both X and Z.
  std::size_t xz_count() const {
    std::size_t w = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
      w += std::popcount(x_[i] & z_[i]);
    return w;
  }

  bool is_hermitian() const { return ((phase_ + xz_count()) & 1u) == 0; }

  /// +1 or -1 for a Hermitian string (phase relative to the canonical
  /// i^{#Y} X^x Z^z form).
  int sign() const {
    if (!is_hermitian()) throw std::logic_error("sign: non-Hermitian string");
    return ((phase_ - xz_count()) & 3u) == 0 ? +1 : -1;
  }

  bool commutes(const PauliString& o) const {
    check_same_size(o);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < x_.size(); ++i)
      acc ^= (x_[i] & o.z_[i]) ^ (z_[i] & o.x_[i]);
    return std::popcount(acc) % 2 == 0;
  }

  /// In-place operator product: *this = (*this) * o, phase exact mod 4.
  PauliString& operator*=(const PauliString& o) {
    check_same_size(o);
    unsigned flips = 0;
    for (std::size_t i = 0; i < x_.size(); ++i) {
      flips += std::popcount(z_[i] & o.x_[i]);  // Z^a X^b = (-1)^{ab} X^b Z^a
      x_[i] ^= o.x_[i];
      z_[i] ^= o.z_[i];
    }
    phase_ = (phase_ + o.phase_ + 2 * flips) & 3u;
    return *this;
  }

  friend PauliString operator*(PauliString a, const PauliString& b) {
    a *= b;
    return a;
  }

  bool operator==(const PauliString& o) const {
    return n_ == o.n_ && phase_ == o.phase_ && x_ == o.x_ && z_ == o.z_;
  }
  bool operator!=(const PauliString& o) const { return !(*this == o); }

  /// Same masks, any phase.
  bool same_support_pattern(const PauliString& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

  std::string str() const {
    static const char* signs[4] = {"+", "+i", "-", "-i"};
    // Print in the canonical Hermitian letter form when possible.
    std::string body;
    body.reserve(n_);
    for (std::size_t q = 0; q < n_; ++q) body.push_back(pauli(q));
    unsigned canon = (phase_ - xz_count()) & 3u;
    return std::string(signs[canon]) + body;
  }

  const std::vector<std::uint64_t>& x_words() const { return x_; }
  const std::vector<std::uint64_t>& z_words() const { return z_; }
  std::vector<std::uint64_t>& x_words() { return x_; }
  std::vector<std::uint64_t>& z_words() { return z_; }

 private:
  static void set_bit(std::vector<std::uint64_t>& w, std::size_t q, bool v) {
    if (v)
      w[q >> 6] |= std::uint64_t(1) << (q & 63);
    else
      w[q >> 6] &= ~(std::uint64_t(1) << (q & 63));
  }

  void check_same_size(const PauliString& o) const {
    if (n_ != o.n_)
      throw std::invalid_argument("PauliString size mismatch: " +
                                  std::to_string(n_) + " vs " +
                                  std::to_string(o.n_));
  }

  std::size_t n_ = 0;
  unsigned phase_ = 0;
  std::vector<std::uint64_t> x_, z_;
};

inline PauliString pauli_product(const PauliString& a, const PauliString& b) {
  return a * b;
}

inline bool commutes(const PauliString& a, const PauliString& b) {
  return a.commutes(b);
}

/// Clifford gate kinds used by the circuits in this project. H_YZ is the
/// Hadamard-like gate exchanging Y and Z (and negating X); it maps |0> to
/// |+i>.
enum class GateKind : std::uint8_t { CX, H, H_YZ };

struct CliffordGate {
  GateKind kind;
  std::uint32_t q0;      // control for CX
  std::uint32_t q1 = 0;  // target for CX, unused otherwise

  static CliffordGate cx(std::uint32_t c, std::uint32_t t) {
    if (c == t) throw std::invalid_argument("CX control == target");
    return {GateKind::CX, c, t};
  }
  static CliffordGate h(std::uint32_t q) { return {GateKind::H, q, 0}; }
  static CliffordGate h_yz(std::uint32_t q) { return {GateKind::H_YZ, q, 0}; }
};

/// Conjugation p -> g p g^dagger, phase exact.
///
/// CX is phase-free in the X-before-Z convention. H picks up a sign on Y
/// sites. H_YZ acts per site as X -> -X, Z -> Y, Y -> Z.
inline void conjugate_in_place(PauliString& p, const CliffordGate& g) {
  switch (g.kind) {
    case GateKind::CX: {
      if (g.q0 >= p.num_qubits() || g.q1 >= p.num_qubits())
        throw std::invalid_argument("conjugate: qubit index out of range");
      p.set_x(g.q1, p.x(g.q1) ^ p.x(g.q0));
      p.set_z(g.q0, p.z(g.q0) ^ p.z(g.q1));
      return;
    }
    case GateKind::H: {
      if (g.q0 >= p.num_qubits())
        throw std::invalid_argument("conjugate: qubit index out of range");
      bool xb = p.x(g.q0), zb = p.z(g.q0);
      p.set_x(g.q0, zb);
      p.set_z(g.q0, xb);
      if (xb && zb) p.set_phase(p.phase() + 2);
      return;
    }
    case GateKind::H_YZ: {
      if (g.q0 >= p.num_qubits())
        throw std::invalid_argument("conjugate: qubit index out of range");
      bool xb = p.x(g.q0), zb = p.z(g.q0);
      // (x,z): 00 -> 00 (+0); 10 -> 10 (+2); 01 -> 11 (+1); 11 -> 01 (+3)
      static constexpr unsigned delta[4] = {0, 2, 1, 3};
      p.set_x(g.q0, xb ^ zb);
      if (xb || zb) p.set_phase(p.phase() + delta[xb + 2 * zb]);
      return;
    }
  }
  throw std::invalid_argument("conjugate: unsupported gate kind");
}

inline PauliString conjugate(PauliString p, const CliffordGate& g) {
  conjugate_in_place(p, g);
  return p;
}

}  // namespace qecgrow
