#pragma once

#include <stdexcept>
#include <vector>

#include "qecgrow/circuit.hpp"

namespace qecgrow {

/// Circuit-level depolarizing noise strengths (p2, p_idle, p_init, p_m).
struct NoiseParams {
  double p2 = 0;
  double p_idle = 0;
  double p_init = 0;
  double p_m = 0;

  NoiseParams() = default;
  NoiseParams(double p2_, double p_idle_, double p_init_, double p_m_)
      : p2(p2_), p_idle(p_idle_), p_init(p_init_), p_m(p_m_) {
    check();
  }

  /// Convenience form with p_idle = p_init = p1.
  static NoiseParams p1_p2_pm(double p1, double p2, double pm) {
    return NoiseParams(p2, p1, p1, pm);
  }

  bool is_zero() const {
    return p2 == 0 && p_idle == 0 && p_init == 0 && p_m == 0;
  }

 private:
  void check() const {
    for (double p : {p2, p_idle, p_init, p_m})
      if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("noise probability outside [0,1]");
  }
};

/// Insert depolarizing noise into a noiseless circuit:
///   - DEP2(p2) after every CX,
///   - DEP1(p_init) after the first reset of each qubit (fresh arrivals only,
///     re-used ancilla resets are noiseless),
///   - DEP1(p_m) before every measurement's support,
///   - DEP1(p_idle) on live untouched qubits in every tick span that contains
///     a CX or a measurement (reset-only and 1q-prep spans model off-clock
///     work and induce no idling),
/// all within NOISE_ON regions. A qubit is live from its first reset through
/// its last referencing instruction.
inline Circuit apply_noise(const Circuit& in, const NoiseParams& np) {
  if (in.has_noise())
    throw std::invalid_argument("apply_noise: circuit already contains noise");

  std::size_t n = in.num_qubits();
  std::vector<std::size_t> first_reset(n, SIZE_MAX), last_touch(n, 0);
  for (std::size_t i = 0; i < in.instructions.size(); ++i) {
    const auto& ins = in.instructions[i];
    auto touch = [&](std::uint32_t q) {
      if ((ins.op == Op::R || ins.op == Op::RX) && first_reset[q] == SIZE_MAX)
        first_reset[q] = i;
      last_touch[q] = i;
    };
    switch (ins.op) {
      case Op::R:
      case Op::RX:
      case Op::CX:
      case Op::H:
      case Op::H_YZ:
      case Op::M:
        for (auto q : ins.targets) touch(q);
        break;
      case Op::MPP:
        for (auto t : ins.targets) touch(mpp_qubit(t));
        break;
      default:
        break;
    }
  }

  Circuit out;
  out.coords = in.coords;

  bool noise_on = true;
  std::size_t det_idx = 0;
  std::size_t i = 0;
  const std::size_t end = in.instructions.size();
  while (i < end) {
    // One tick span: [i, j) where j points at the TICK (or end).
    std::size_t j = i;
    while (j < end && in.instructions[j].op != Op::TICK) ++j;

    bool span_noise_on = noise_on;
    for (std::size_t k = i; k < j; ++k) {
      if (in.instructions[k].op == Op::NOISE_ON) span_noise_on = true;
      if (in.instructions[k].op == Op::NOISE_OFF) span_noise_on = false;
    }

    bool idle_inducing = false;
    std::vector<bool> busy(n, false);
    for (std::size_t k = i; k < j; ++k) {
      const auto& ins = in.instructions[k];
      switch (ins.op) {
        case Op::CX:
        case Op::M:
        case Op::MPP:
          idle_inducing = true;
          [[fallthrough]];
        case Op::R:
        case Op::RX:
        case Op::H:
        case Op::H_YZ:
          if (ins.op == Op::MPP)
            for (auto t : ins.targets) busy[mpp_qubit(t)] = true;
          else
            for (auto q : ins.targets) busy[q] = true;
          break;
        default:
          break;
      }
    }

    for (std::size_t k = i; k < j; ++k) {
      const auto& ins = in.instructions[k];
      switch (ins.op) {
        case Op::NOISE_ON:
          noise_on = true;
          out.append_noise(true);
          break;
        case Op::NOISE_OFF:
          noise_on = false;
          out.append_noise(false);
          break;
        case Op::R:
        case Op::RX: {
          out.append_reset(ins.op, ins.targets);
          if (noise_on && np.p_init > 0) {
            std::vector<std::uint32_t> fresh;
            for (auto q : ins.targets)
              if (first_reset[q] == k) fresh.push_back(q);
            if (!fresh.empty()) out.append_dep1(np.p_init, std::move(fresh));
          }
          break;
        }
        case Op::CX:
          out.append_cx(ins.targets);
          if (noise_on && np.p2 > 0) out.append_dep2(np.p2, ins.targets);
          break;
        case Op::H:
        case Op::H_YZ:
          out.append_1q(ins.op, ins.targets);
          break;
        case Op::M:
          if (noise_on && np.p_m > 0) out.append_dep1(np.p_m, ins.targets);
          out.append_m(ins.targets);
          break;
        case Op::MPP: {
          if (noise_on && np.p_m > 0) {
            std::vector<std::uint32_t> qs;
            for (auto t : ins.targets) qs.push_back(mpp_qubit(t));
            out.append_dep1(np.p_m, std::move(qs));
          }
          std::vector<std::pair<std::uint32_t, char>> sites;
          for (auto t : ins.targets)
            sites.emplace_back(mpp_qubit(t), mpp_letter(t));
          out.append_mpp(sites);
          break;
        }
        case Op::DETECTOR:
          out.append_detector(in.detectors[det_idx].meas,
                              in.detectors[det_idx].postselect);
          ++det_idx;
          break;
        case Op::OBSERVABLE: {
          std::vector<std::uint32_t> abs;
          for (auto off : ins.targets)
            abs.push_back(
                static_cast<std::uint32_t>(out.num_measurements() - off));
          out.append_observable(ins.index, abs);
          break;
        }
        default:
          throw std::logic_error("apply_noise: unexpected instruction");
      }
    }

    if (span_noise_on && idle_inducing && np.p_idle > 0) {
      std::vector<std::uint32_t> idle;
      for (std::size_t q = 0; q < n; ++q)
        if (!busy[q] && first_reset[q] < i && last_touch[q] >= j)
          idle.push_back(static_cast<std::uint32_t>(q));
      if (!idle.empty()) out.append_dep1(np.p_idle, std::move(idle));
    }

    if (j < end) out.append_tick();
    i = j + 1;
  }
  return out;
}

}  // namespace qecgrow
