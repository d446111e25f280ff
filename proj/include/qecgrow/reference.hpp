#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qecgrow/circuit.hpp"
#include "qecgrow/tableau.hpp"

namespace qecgrow {

/// Noiseless execution record. Nondeterministic outcomes are pinned to 0; the
/// freedom that pinning hides is tracked exactly by "gauge" symbols: each
/// nondeterministic measurement spawns one, carrying the displaced stabilizer
/// as a symbolic Pauli frame. A later measurement depends on a gauge symbol
/// iff that frame anticommutes with its observable at measurement time. A
/// detector is deterministic iff its referenced measurements' gauge vectors
/// cancel.
struct ReferenceTrace {
  std::vector<std::uint8_t> meas_ref;            // pinned reference bit
  std::vector<std::uint8_t> meas_deterministic;  // tableau-level determinism
  std::vector<std::vector<std::uint32_t>> meas_gauge;  // sorted symbol ids
  std::vector<std::uint8_t> det_parity;  // reference parity per detector
  std::vector<std::uint8_t> obs_ref;     // reference parity per observable
  std::size_t num_gauge_symbols = 0;
};

inline ReferenceTrace reference_run(const Circuit& c,
                                    bool validate_detectors = true) {
  const std::size_t n = c.num_qubits();
  Tableau tab(n);
  Rng pin(0);  // never consulted: all branches are forced
  ReferenceTrace tr;
  tr.meas_ref.reserve(c.num_measurements());

  // Live gauge frames (mask-only Pauli strings).
  std::vector<PauliString> frames;

  auto do_measure = [&](const PauliString& p) {
    std::vector<std::uint32_t> deps;
    auto branch = tab.branch_operator(p);
    if (branch.has_value()) {
      frames.push_back(*branch);
      ++tr.num_gauge_symbols;
    }
    for (std::uint32_t g = 0; g < frames.size(); ++g)
      if (!frames[g].commutes(p)) deps.push_back(g);
    auto r = tab.measure_pauli(p, pin, false);
    tr.meas_ref.push_back(r.bit);
    tr.meas_deterministic.push_back(r.deterministic);
    tr.meas_gauge.push_back(std::move(deps));
  };

  for (const auto& in : c.instructions) {
    switch (in.op) {
      case Op::R:
      case Op::RX:
        for (auto q : in.targets) {
          tab.reset(q, in.op == Op::R ? 'Z' : 'X', pin);
          for (auto& f : frames) {
            f.set_x(q, false);
            f.set_z(q, false);
          }
        }
        break;
      case Op::CX:
        for (std::size_t i = 0; i < in.targets.size(); i += 2) {
          auto g = CliffordGate::cx(in.targets[i], in.targets[i + 1]);
          tab.apply(g);
          for (auto& f : frames) conjugate_in_place(f, g);
        }
        break;
      case Op::H:
      case Op::H_YZ:
        for (auto q : in.targets) {
          auto g = in.op == Op::H ? CliffordGate::h(q) : CliffordGate::h_yz(q);
          tab.apply(g);
          for (auto& f : frames) conjugate_in_place(f, g);
        }
        break;
      case Op::M:
        for (std::size_t i = 0; i < in.targets.size(); ++i)
          do_measure(c.measured_pauli(in, i));
        break;
      case Op::MPP:
        do_measure(c.measured_pauli(in, 0));
        break;
      default:
        break;  // noise / markers / detector lines: nothing to execute
    }
  }

  for (const auto& d : c.detectors) {
    std::uint8_t parity = 0;
    std::vector<std::uint32_t> acc;
    for (auto m : d.meas) {
      parity ^= tr.meas_ref[m];
      // Symmetric difference of gauge vectors.
      std::vector<std::uint32_t> merged;
      std::set_symmetric_difference(acc.begin(), acc.end(),
                                    tr.meas_gauge[m].begin(),
                                    tr.meas_gauge[m].end(),
                                    std::back_inserter(merged));
      acc = std::move(merged);
    }
    if (validate_detectors && !acc.empty())
      throw std::runtime_error(
          "detector depends on a nondeterministic measurement");
    tr.det_parity.push_back(parity);
  }
  for (const auto& refs : c.observables) {
    std::uint8_t parity = 0;
    for (auto m : refs) parity ^= tr.meas_ref[m];
    tr.obs_ref.push_back(parity);
  }
  return tr;
}

/// Incremental GF(2) elimination over gauge symbols, used to infer detector
/// reference sets: feeding measurements in time order, a measurement whose
/// gauge vector is reducible over earlier ones yields the reference set of a
/// deterministic parity; an irreducible one becomes a pivot.
class GaugeSolver {
 public:
  /// Returns the measurement set {m, ...} of a deterministic parity anchored
  /// at m, or nullopt if m's vector is irreducible (m becomes a pivot).
  std::optional<std::vector<std::uint32_t>> feed(
      std::uint32_t m, const std::vector<std::uint32_t>& gauge_vec) {
    std::vector<std::uint32_t> v = gauge_vec;
    std::vector<std::uint32_t> refs = {m};
    while (!v.empty()) {
      std::uint32_t lead = v.back();
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        pivots_.emplace(lead, Pivot{std::move(v), std::move(refs)});
        return std::nullopt;
      }
      v = sym_diff(v, it->second.vec);
      refs = sym_diff(refs, it->second.meas);
    }
    return refs;
  }

 private:
  struct Pivot {
    std::vector<std::uint32_t> vec;   // reduced gauge vector, sorted
    std::vector<std::uint32_t> meas;  // measurement set realizing it
  };

  static std::vector<std::uint32_t> sym_diff(
      const std::vector<std::uint32_t>& a,
      const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
  }

  std::map<std::uint32_t, Pivot> pivots_;
};

/// Rebuild `skeleton` (which must contain no DETECTOR instructions) with one
/// DETECTOR per anchor measurement whose outcome parity is deterministic,
/// reference sets inferred by gauge elimination. `anchors` maps measurement
/// index -> postselect flag.
inline Circuit finalize_detectors(
    const Circuit& skeleton, const std::map<std::uint32_t, bool>& anchors) {
  if (!skeleton.detectors.empty())
    throw std::invalid_argument("finalize_detectors: detectors already present");
  ReferenceTrace tr = reference_run(skeleton, false);

  GaugeSolver solver;
  std::map<std::uint32_t, std::pair<std::vector<std::uint32_t>, bool>> planned;
  for (std::uint32_t m = 0; m < tr.meas_ref.size(); ++m) {
    auto refs = solver.feed(m, tr.meas_gauge[m]);
    auto it = anchors.find(m);
    if (it != anchors.end() && refs.has_value())
      planned.emplace(m, std::make_pair(std::move(*refs), it->second));
  }

  Circuit out;
  out.coords = skeleton.coords;
  std::uint32_t meas = 0;
  for (const auto& in : skeleton.instructions) {
    std::uint32_t first = meas;
    switch (in.op) {
      case Op::R:
      case Op::RX:
        out.append_reset(in.op, in.targets);
        break;
      case Op::CX:
        out.append_cx(in.targets);
        break;
      case Op::H:
      case Op::H_YZ:
        out.append_1q(in.op, in.targets);
        break;
      case Op::M:
        out.append_m(in.targets);
        meas += in.targets.size();
        break;
      case Op::MPP: {
        std::vector<std::pair<std::uint32_t, char>> sites;
        for (auto t : in.targets)
          sites.emplace_back(mpp_qubit(t), mpp_letter(t));
        out.append_mpp(sites);
        ++meas;
        break;
      }
      case Op::DEP1:
        out.append_dep1(in.arg, in.targets);
        break;
      case Op::DEP2:
        out.append_dep2(in.arg, in.targets);
        break;
      case Op::TICK:
        out.append_tick();
        break;
      case Op::NOISE_ON:
        out.append_noise(true);
        break;
      case Op::NOISE_OFF:
        out.append_noise(false);
        break;
      case Op::OBSERVABLE: {
        std::vector<std::uint32_t> abs;
        for (auto off : in.targets)
          abs.push_back(
              static_cast<std::uint32_t>(out.num_measurements() - off));
        out.append_observable(in.index, abs);
        break;
      }
      case Op::DETECTOR:
        throw std::logic_error("unreachable");
    }
    for (std::uint32_t m = first; m < meas; ++m) {
      auto it = planned.find(m);
      if (it != planned.end())
        out.append_detector(it->second.first, it->second.second);
    }
  }
  return out;
}

}  // namespace qecgrow
