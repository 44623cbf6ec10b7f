#ifndef IONLINK_GADGET_HPP
#define IONLINK_GADGET_HPP

#include <utility>

#include "ionlink/state.hpp"

namespace ionlink {

// Pauli frame fix selected by the two ancilla outcomes. The fourth entry
// carries a global minus sign, tracked in the record but never applied.
enum class Correction {
  None,
  ZControl,
  XTarget,
  ZControlXTargetNegated,
};

struct GadgetLayout {
  int logic_control = 0;
  int logic_target = 1;
  int ancilla_control = 2;  // measured in Z
  int ancilla_target = 3;   // measured in X
};

struct GadgetRecord {
  int z_outcome = 0;                       // ancilla_control, {|0>, |1>}
  int x_outcome = 0;                       // ancilla_target, 0 <-> |+>
  Correction correction = Correction::None;
  double branch_probability = 0.0;         // exactly 1/4 for an ideal resource
};

// Frame fix for a given (Z, X) ancilla outcome pair:
// (0,+) -> I, (0,-) -> Z on control, (1,+) -> X on target,
// (1,-) -> -Z X with the sign kept as metadata.
Correction outcome_correction(int z_outcome, int x_outcome);

// Consumes the shared pair held in the ancilla qubits to enact CNOT between
// the logic qubits using only local gates, two single-qubit measurements and
// the tabulated frame fix. The returned register drops the two ancillas and
// keeps every other qubit in its original relative order. With strict on, the
// ancilla pair must match the ideal shared state to within 1e-9 in fidelity;
// with strict off an imperfect resource is consumed as-is and its imperfection
// propagates into the output.
std::pair<PureState, GadgetRecord> remote_cnot(const PureState& reg,
                                               const GadgetLayout& layout,
                                               RandomStream& rng,
                                               bool strict = true);

// Deterministically walks all four measurement branches for the given logic
// register (qubits 0 and 1 are the CNOT pair, any further qubits ride along)
// with a fresh ideal resource, and returns the largest 1 - fidelity against
// the direct CNOT application. Ideally <= 1e-12.
double verify_identity(const PureState& logic_state);

// Probability that the two given qubits would be found in the shared-pair
// state (|01> + |10>)/sqrt(2); 1 exactly when the register factorizes with
// that pair on (first, second).
double shared_pair_weight(const PureState& reg, int first, int second);

}  // namespace ionlink

#endif
