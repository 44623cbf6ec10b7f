#include "ionlink/gadget.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "ionlink/gate.hpp"

namespace ionlink {
namespace {

constexpr double kResourceTol = 1e-9;

void check_layout(const PureState& reg, const GadgetLayout& layout) {
  const int idx[4] = {layout.logic_control, layout.logic_target,
                      layout.ancilla_control, layout.ancilla_target};
  for (int a = 0; a < 4; ++a) {
    if (idx[a] < 0 || idx[a] >= reg.num_qubits()) {
      throw std::invalid_argument("gadget layout index " + std::to_string(idx[a]) +
                                  " out of range");
    }
    for (int b = a + 1; b < 4; ++b) {
      if (idx[a] == idx[b]) {
        throw std::invalid_argument("gadget layout indices must be distinct");
      }
    }
  }
}

// The shared pair is heralded as (|01> + |10>)/sqrt(2) but the tabulated frame
// fix is exact in the (|00> + |11>)/sqrt(2) frame; a local X on the control
// ancilla converts one to the other before the entangling steps.
PureState gadget_circuit(const PureState& reg, const GadgetLayout& layout) {
  PureState work = apply_gate(reg, gates::pauli_x(), {layout.ancilla_control});
  work = apply_gate(work, gates::cnot(),
                    {layout.logic_control, layout.ancilla_control});
  work = apply_gate(work, gates::cnot(),
                    {layout.ancilla_target, layout.logic_target});
  return work;
}

PureState apply_correction(const PureState& state, const GadgetLayout& layout,
                           Correction correction) {
  PureState work = state;
  if (correction == Correction::ZControl ||
      correction == Correction::ZControlXTargetNegated) {
    work = apply_gate(work, gates::pauli_z(), {layout.logic_control});
  }
  if (correction == Correction::XTarget ||
      correction == Correction::ZControlXTargetNegated) {
    work = apply_gate(work, gates::pauli_x(), {layout.logic_target});
  }
  return work;
}

// Removes both ancillas after their measurements fixed them; X-basis outcomes
// are rotated to the computational basis first. Indices shift down when the
// higher ancilla goes, so removal runs high-to-low.
PureState drop_ancillas(const PureState& state, const GadgetLayout& layout,
                        int z_outcome, int x_outcome) {
  PureState work = apply_gate(state, gates::hadamard(), {layout.ancilla_target});
  const int hi = std::max(layout.ancilla_control, layout.ancilla_target);
  const int lo = std::min(layout.ancilla_control, layout.ancilla_target);
  const int hi_outcome = (hi == layout.ancilla_control) ? z_outcome : x_outcome;
  const int lo_outcome = (hi == layout.ancilla_control) ? x_outcome : z_outcome;
  work = remove_qubit(work, hi, hi_outcome);
  return remove_qubit(work, lo, lo_outcome);
}

}  // namespace

Correction outcome_correction(int z_outcome, int x_outcome) {
  if ((z_outcome != 0 && z_outcome != 1) || (x_outcome != 0 && x_outcome != 1)) {
    throw std::invalid_argument("measurement outcomes must be 0 or 1");
  }
  if (z_outcome == 0) {
    return x_outcome == 0 ? Correction::None : Correction::ZControl;
  }
  return x_outcome == 0 ? Correction::XTarget
                        : Correction::ZControlXTargetNegated;
}

double shared_pair_weight(const PureState& reg, int first, int second) {
  if (first == second || first < 0 || second < 0 ||
      first >= reg.num_qubits() || second >= reg.num_qubits()) {
    throw std::invalid_argument("shared-pair qubits must be distinct and in range");
  }
  const std::size_t m1 = reg.mask(first);
  const std::size_t m2 = reg.mask(second);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double weight = 0.0;
  for (std::size_t i = 0; i < reg.dim(); ++i) {
    if (i & (m1 | m2)) continue;  // enumerate spectator configurations once
    const Complex overlap =
        inv_sqrt2 * (reg.amplitudes()[i | m2] + reg.amplitudes()[i | m1]);
    weight += std::norm(overlap);
  }
  return weight;
}

std::pair<PureState, GadgetRecord> remote_cnot(const PureState& reg,
                                               const GadgetLayout& layout,
                                               RandomStream& rng, bool strict) {
  check_layout(reg, layout);
  if (strict) {
    const double w =
        shared_pair_weight(reg, layout.ancilla_control, layout.ancilla_target);
    if (w < 1.0 - kResourceTol) {
      throw std::invalid_argument(
          "ancilla pair deviates from the shared state (weight " +
          std::to_string(w) + "); disable strict mode to consume it anyway");
    }
  }

  PureState work = gadget_circuit(reg, layout);
  auto [z_rec, after_z] = measure_qubit(work, layout.ancilla_control, Basis::Z, rng);
  auto [x_rec, after_x] =
      measure_qubit(after_z, layout.ancilla_target, Basis::X, rng);

  GadgetRecord record;
  record.z_outcome = z_rec.outcome;
  record.x_outcome = x_rec.outcome;
  record.correction = outcome_correction(z_rec.outcome, x_rec.outcome);
  record.branch_probability = z_rec.probability * x_rec.probability;

  PureState corrected = apply_correction(after_x, layout, record.correction);
  PureState out =
      drop_ancillas(corrected, layout, z_rec.outcome, x_rec.outcome);
  return {std::move(out), record};
}

double verify_identity(const PureState& logic_state) {
  if (logic_state.num_qubits() < 2) {
    throw std::invalid_argument("logic register needs at least 2 qubits");
  }
  if (logic_state.num_qubits() + 2 > kMaxQubits) {
    throw std::invalid_argument("logic register too large to append ancillas");
  }
  const int n = logic_state.num_qubits();
  GadgetLayout layout;
  layout.logic_control = 0;
  layout.logic_target = 1;
  layout.ancilla_control = n;
  layout.ancilla_target = n + 1;

  const PureState expected =
      apply_gate(logic_state, gates::cnot(), {0, 1});
  const PureState reg = tensor(logic_state, bell_state(BellKind::PhiPlus01_10));
  const PureState evolved = gadget_circuit(reg, layout);

  double max_deviation = 0.0;
  for (int z = 0; z < 2; ++z) {
    auto [pz, after_z] = project_qubit(evolved, layout.ancilla_control, Basis::Z, z);
    for (int x = 0; x < 2; ++x) {
      auto [px, after_x] =
          project_qubit(after_z, layout.ancilla_target, Basis::X, x);
      (void)pz;
      (void)px;
      const Correction correction = outcome_correction(z, x);
      // Frame fixes are involutions up to the tracked sign, so applying the
      // table entry again inverts it.
      PureState corrected = apply_correction(after_x, layout, correction);
      PureState out = drop_ancillas(corrected, layout, z, x);
      const double deviation = 1.0 - fidelity(out, expected);
      if (deviation > max_deviation) max_deviation = deviation;
    }
  }
  return max_deviation;
}

}  // namespace ionlink
