#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qecgrow/geometry.hpp"
#include "qecgrow/pauli.hpp"

namespace qecgrow {

enum class Op : std::uint8_t {
  R,        // reset |0>
  RX,       // reset |+>
  CX,
  H,
  H_YZ,
  M,        // Z-basis measurement
  MPP,      // joint Pauli measurement, one product per instruction
  DEP1,     // one-qubit depolarizing, independent per target
  DEP2,     // two-qubit depolarizing, independent per target pair
  TICK,
  DETECTOR,
  OBSERVABLE,  // OBSERVABLE_INCLUDE(idx)
  NOISE_OFF,
  NOISE_ON,
};

/// One circuit instruction. `targets` holds qubit ids, except:
///   MPP:      (qubit << 2) | pauli-code, code 1=X, 2=Z, 3=Y, ascending qubit
///   DETECTOR / OBSERVABLE: lookback offsets k, meaning rec[-k] at emission
struct Instruction {
  Op op;
  double arg = 0;           // probability for DEP1/DEP2
  std::uint32_t index = 0;  // observable index for OBSERVABLE
  std::vector<std::uint32_t> targets;
};

inline constexpr std::uint32_t mpp_target(std::uint32_t q, char p) {
  return (q << 2) | (p == 'X' ? 1u : p == 'Z' ? 2u : 3u);
}
inline constexpr std::uint32_t mpp_qubit(std::uint32_t t) { return t >> 2; }
inline constexpr char mpp_letter(std::uint32_t t) {
  switch (t & 3u) {
    case 1: return 'X';
    case 2: return 'Z';
    default: return 'Y';
  }
}

struct DetectorInfo {
  std::vector<std::uint32_t> meas;  // absolute measurement indices
  bool postselect = false;
};

/// Tick-structured instruction list with measurement records, detectors,
/// observables and noise-eligibility markers. Immutable once assembled;
/// builders append through the helpers below.
class Circuit {
 public:
  std::vector<Coord> coords;  // qubit id -> coordinate
  std::vector<Instruction> instructions;
  std::vector<DetectorInfo> detectors;
  std::vector<std::vector<std::uint32_t>> observables;  // index -> abs meas

  std::size_t num_qubits() const { return coords.size(); }
  std::size_t num_measurements() const { return num_meas_; }
  std::size_t num_detectors() const { return detectors.size(); }

  std::uint32_t add_qubit(Coord c) {
    coords.push_back(c);
    return static_cast<std::uint32_t>(coords.size() - 1);
  }

  void append_reset(Op op, std::vector<std::uint32_t> qs) {
    check_targets(qs);
    if (op != Op::R && op != Op::RX) throw std::logic_error("append_reset");
    instructions.push_back({op, 0, 0, std::move(qs)});
  }

  void append_cx(std::vector<std::uint32_t> pairs) {
    check_targets(pairs);
    if (pairs.size() % 2) throw std::invalid_argument("CX needs pairs");
    instructions.push_back({Op::CX, 0, 0, std::move(pairs)});
  }

  void append_1q(Op op, std::vector<std::uint32_t> qs) {
    check_targets(qs);
    if (op != Op::H && op != Op::H_YZ) throw std::logic_error("append_1q");
    instructions.push_back({op, 0, 0, std::move(qs)});
  }

  /// Returns the absolute index of the first new measurement record.
  std::uint32_t append_m(std::vector<std::uint32_t> qs) {
    check_targets(qs);
    auto first = static_cast<std::uint32_t>(num_meas_);
    num_meas_ += qs.size();
    instructions.push_back({Op::M, 0, 0, std::move(qs)});
    return first;
  }

  /// Joint Pauli measurement; sites as (qubit, letter) pairs.
  std::uint32_t append_mpp(
      const std::vector<std::pair<std::uint32_t, char>>& sites) {
    if (sites.empty()) throw std::invalid_argument("MPP: empty product");
    std::vector<std::uint32_t> ts;
    for (auto [q, p] : sites) ts.push_back(mpp_target(q, p));
    std::sort(ts.begin(), ts.end());
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
      if (mpp_qubit(ts[i]) == mpp_qubit(ts[i + 1]))
        throw std::invalid_argument("MPP: repeated qubit");
    if (mpp_qubit(ts.back()) >= num_qubits())
      throw std::invalid_argument("MPP: qubit out of range");
    auto idx = static_cast<std::uint32_t>(num_meas_++);
    instructions.push_back({Op::MPP, 0, 0, std::move(ts)});
    return idx;
  }

  void append_dep1(double p, std::vector<std::uint32_t> qs) {
    check_targets(qs);
    check_prob(p);
    instructions.push_back({Op::DEP1, p, 0, std::move(qs)});
  }

  void append_dep2(double p, std::vector<std::uint32_t> pairs) {
    check_targets(pairs);
    check_prob(p);
    if (pairs.size() % 2) throw std::invalid_argument("DEP2 needs pairs");
    instructions.push_back({Op::DEP2, p, 0, std::move(pairs)});
  }

  void append_tick() { instructions.push_back({Op::TICK, 0, 0, {}}); }
  void append_noise(bool on) {
    instructions.push_back({on ? Op::NOISE_ON : Op::NOISE_OFF, 0, 0, {}});
  }

  void append_detector(std::vector<std::uint32_t> abs_meas, bool postselect) {
    std::vector<std::uint32_t> offs;
    for (auto m : abs_meas) {
      if (m >= num_meas_) throw std::invalid_argument("detector ref in future");
      offs.push_back(static_cast<std::uint32_t>(num_meas_ - m));
    }
    std::sort(offs.begin(), offs.end());
    instructions.push_back({Op::DETECTOR, 0, 0, std::move(offs)});
    std::sort(abs_meas.begin(), abs_meas.end());
    detectors.push_back({std::move(abs_meas), postselect});
  }

  void append_observable(std::uint32_t index,
                         std::vector<std::uint32_t> abs_meas) {
    std::vector<std::uint32_t> offs;
    for (auto m : abs_meas) {
      if (m >= num_meas_) throw std::invalid_argument("observable ref in future");
      offs.push_back(static_cast<std::uint32_t>(num_meas_ - m));
    }
    std::sort(offs.begin(), offs.end());
    instructions.push_back({Op::OBSERVABLE, 0, index, std::move(offs)});
    if (observables.size() <= index) observables.resize(index + 1);
    auto& v = observables[index];
    v.insert(v.end(), abs_meas.begin(), abs_meas.end());
    std::sort(v.begin(), v.end());
  }

  /// Hermitian +1 PauliString measured by an M or MPP instruction target set.
  PauliString measured_pauli(const Instruction& in, std::size_t site) const {
    PauliString p(num_qubits());
    if (in.op == Op::M) {
      p.set_pauli(in.targets[site], 'Z');
    } else if (in.op == Op::MPP) {
      for (auto t : in.targets) p.set_pauli(mpp_qubit(t), mpp_letter(t));
    } else {
      throw std::logic_error("measured_pauli: not a measurement");
    }
    return p;
  }

  std::size_t cx_count() const {
    std::size_t n = 0;
    for (const auto& in : instructions)
      if (in.op == Op::CX) n += in.targets.size() / 2;
    return n;
  }

  /// Number of TICK-delimited spans containing at least one CX.
  std::size_t cx_tick_count() const {
    std::size_t n = 0;
    bool span_has_cx = false;
    for (const auto& in : instructions) {
      if (in.op == Op::TICK) {
        n += span_has_cx;
        span_has_cx = false;
      } else if (in.op == Op::CX) {
        span_has_cx = true;
      }
    }
    return n + span_has_cx;
  }

  bool has_noise() const {
    for (const auto& in : instructions)
      if (in.op == Op::DEP1 || in.op == Op::DEP2) return true;
    return false;
  }

  /// Structural well-formedness: resets precede first use, one touch per
  /// qubit per tick span (MPPs exempt but must commute pairwise and avoid
  /// qubits other ops touch in the span), valid refs, probabilities in range,
  /// noise markers only at span starts.
  void validate() const {
    std::vector<bool> seen_reset(num_qubits(), false);
    std::vector<int> touched(num_qubits(), -1);
    std::vector<std::vector<std::uint32_t>> span_mpps;
    int span = 0;
    bool span_has_action = false;
    std::size_t meas = 0;

    auto touch = [&](std::uint32_t q, bool is_mpp) {
      if (q >= num_qubits()) throw std::runtime_error("qubit out of range");
      if (!seen_reset[q]) throw std::runtime_error("qubit used before reset");
      if (touched[q] == span)
        throw std::runtime_error("qubit touched twice in one tick span");
      if (!is_mpp) touched[q] = span;
    };

    for (const auto& in : instructions) {
      switch (in.op) {
        case Op::TICK:
          ++span;
          span_has_action = false;
          span_mpps.clear();
          break;
        case Op::NOISE_ON:
        case Op::NOISE_OFF:
          if (span_has_action)
            throw std::runtime_error("noise marker inside a tick span");
          break;
        case Op::R:
        case Op::RX:
          for (auto q : in.targets) {
            if (q >= num_qubits()) throw std::runtime_error("qubit range");
            if (touched[q] == span)
              throw std::runtime_error("qubit touched twice in one tick span");
            seen_reset[q] = true;
            touched[q] = span;
          }
          span_has_action = true;
          break;
        case Op::CX:
        case Op::H:
        case Op::H_YZ:
        case Op::M:
          for (auto q : in.targets) touch(q, false);
          if (in.op == Op::CX)
            for (std::size_t i = 0; i < in.targets.size(); i += 2)
              if (in.targets[i] == in.targets[i + 1])
                throw std::runtime_error("CX with equal qubits");
          if (in.op == Op::M) meas += in.targets.size();
          span_has_action = true;
          break;
        case Op::MPP: {
          for (auto t : in.targets) touch(mpp_qubit(t), true);
          for (const auto& other : span_mpps) {
            // Products measured in one span must commute.
            int anti = 0;
            std::size_t i = 0, j = 0;
            while (i < in.targets.size() && j < other.size()) {
              auto qa = mpp_qubit(in.targets[i]), qb = mpp_qubit(other[j]);
              if (qa < qb) ++i;
              else if (qb < qa) ++j;
              else {
                if ((in.targets[i] & 3u) != (other[j] & 3u)) ++anti;
                ++i, ++j;
              }
            }
            if (anti % 2)
              throw std::runtime_error("anticommuting MPPs in one tick span");
          }
          span_mpps.push_back(in.targets);
          ++meas;
          span_has_action = true;
          break;
        }
        case Op::DEP1:
          check_prob(in.arg);
          for (auto q : in.targets)
            if (q >= num_qubits() || !seen_reset[q])
              throw std::runtime_error("noise on unreset qubit");
          break;
        case Op::DEP2:
          check_prob(in.arg);
          if (in.targets.size() % 2) throw std::runtime_error("DEP2 pairs");
          for (auto q : in.targets)
            if (q >= num_qubits() || !seen_reset[q])
              throw std::runtime_error("noise on unreset qubit");
          break;
        case Op::DETECTOR:
        case Op::OBSERVABLE:
          for (auto k : in.targets)
            if (k == 0 || k > meas)
              throw std::runtime_error("rec reference out of range");
          break;
      }
    }
    if (meas != num_meas_) throw std::logic_error("measurement counter drift");
  }

  std::string to_text() const;
  static Circuit from_text(const std::string& text);

  /// FNV-1a over the canonical text; stable across platforms.
  std::uint64_t hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : to_text()) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  static void check_prob(double p) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("probability outside [0,1]");
  }
  void check_targets(const std::vector<std::uint32_t>& qs) const {
    for (auto q : qs)
      if (q >= num_qubits())
        throw std::invalid_argument("qubit id out of range");
  }

  std::size_t num_meas_ = 0;
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

inline std::string Circuit::to_text() const {
  std::string out;
  for (std::size_t q = 0; q < coords.size(); ++q) {
    out += "QUBIT " + std::to_string(q) + " " + std::to_string(coords[q].x) +
           " " + std::to_string(coords[q].y) + "\n";
  }
  for (const auto& in : instructions) {
    switch (in.op) {
      case Op::R: out += "R"; break;
      case Op::RX: out += "RX"; break;
      case Op::CX: out += "CX"; break;
      case Op::H: out += "H"; break;
      case Op::H_YZ: out += "H_YZ"; break;
      case Op::M: out += "M"; break;
      case Op::MPP: {
        out += "MPP ";
        for (std::size_t i = 0; i < in.targets.size(); ++i) {
          if (i) out += "*";
          out += mpp_letter(in.targets[i]);
          out += std::to_string(mpp_qubit(in.targets[i]));
        }
        out += "\n";
        continue;
      }
      case Op::DEP1: out += "DEPOLARIZE1(" + detail::format_double(in.arg) + ")"; break;
      case Op::DEP2: out += "DEPOLARIZE2(" + detail::format_double(in.arg) + ")"; break;
      case Op::TICK: out += "TICK\n"; continue;
      case Op::NOISE_OFF: out += "NOISE_OFF\n"; continue;
      case Op::NOISE_ON: out += "NOISE_ON\n"; continue;
      case Op::DETECTOR: {
        out += "DETECTOR";
        for (auto k : in.targets) out += " rec[-" + std::to_string(k) + "]";
        out += "\n";
        continue;
      }
      case Op::OBSERVABLE: {
        out += "OBSERVABLE_INCLUDE(" + std::to_string(in.index) + ")";
        for (auto k : in.targets) out += " rec[-" + std::to_string(k) + "]";
        out += "\n";
        continue;
      }
    }
    for (auto t : in.targets) out += " " + std::to_string(t);
    out += "\n";
  }
  return out;
}

inline Circuit Circuit::from_text(const std::string& text) {
  Circuit c;
  std::istringstream ss(text);
  std::string line;
  std::size_t meas = 0;
  auto parse_recs = [&](std::istringstream& ls) {
    std::vector<std::uint32_t> abs;
    std::string tok;
    while (ls >> tok) {
      if (tok.rfind("rec[-", 0) != 0 || tok.back() != ']')
        throw std::invalid_argument("bad rec reference: " + tok);
      long k = std::stol(tok.substr(5, tok.size() - 6));
      if (k <= 0 || static_cast<std::size_t>(k) > meas)
        throw std::invalid_argument("rec reference out of range");
      abs.push_back(static_cast<std::uint32_t>(meas - k));
    }
    return abs;
  };
  while (std::getline(ss, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    auto rest_u32 = [&]() {
      std::vector<std::uint32_t> v;
      std::uint32_t q;
      while (ls >> q) v.push_back(q);
      return v;
    };
    if (word == "QUBIT") {
      std::uint32_t id;
      int x, y;
      ls >> id >> x >> y;
      if (id != c.coords.size())
        throw std::invalid_argument("QUBIT lines must be dense and ordered");
      c.add_qubit({x, y});
    } else if (word == "R") {
      c.append_reset(Op::R, rest_u32());
    } else if (word == "RX") {
      c.append_reset(Op::RX, rest_u32());
    } else if (word == "CX") {
      c.append_cx(rest_u32());
    } else if (word == "H") {
      c.append_1q(Op::H, rest_u32());
    } else if (word == "H_YZ") {
      c.append_1q(Op::H_YZ, rest_u32());
    } else if (word == "M") {
      c.append_m(rest_u32());
      meas = c.num_meas_;
    } else if (word == "MPP") {
      std::string prod;
      ls >> prod;
      std::vector<std::pair<std::uint32_t, char>> sites;
      std::size_t pos = 0;
      while (pos < prod.size()) {
        char letter = prod[pos++];
        std::size_t start = pos;
        while (pos < prod.size() && isdigit(prod[pos])) ++pos;
        sites.emplace_back(std::stoul(prod.substr(start, pos - start)), letter);
        if (pos < prod.size() && prod[pos] == '*') ++pos;
      }
      c.append_mpp(sites);
      meas = c.num_meas_;
    } else if (word.rfind("DEPOLARIZE1(", 0) == 0) {
      double p = std::stod(word.substr(12));
      c.append_dep1(p, rest_u32());
    } else if (word.rfind("DEPOLARIZE2(", 0) == 0) {
      double p = std::stod(word.substr(12));
      c.append_dep2(p, rest_u32());
    } else if (word == "TICK") {
      c.append_tick();
    } else if (word == "NOISE_OFF") {
      c.append_noise(false);
    } else if (word == "NOISE_ON") {
      c.append_noise(true);
    } else if (word == "DETECTOR") {
      c.append_detector(parse_recs(ls), false);
    } else if (word.rfind("OBSERVABLE_INCLUDE(", 0) == 0) {
      auto idx = static_cast<std::uint32_t>(std::stoul(word.substr(19)));
      c.append_observable(idx, parse_recs(ls));
    } else {
      throw std::invalid_argument("unknown instruction: " + word);
    }
  }
  return c;
}

}  // namespace qecgrow
