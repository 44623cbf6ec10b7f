#ifndef IONLINK_GATE_HPP
#define IONLINK_GATE_HPP

#include <vector>

#include "ionlink/state.hpp"

namespace ionlink {

// Unitary acting on one or two qubits, row-major matrix. For two-qubit gates
// the row/column index packs the target bits as (targets[0], targets[1]) with
// targets[0] most significant, matching the register's bit convention.
class GateOp {
 public:
  static GateOp from_matrix(int arity, std::vector<Complex> matrix);

  int arity() const { return arity_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Complex>& matrix() const { return mat_; }
  Complex element(std::size_t row, std::size_t col) const { return mat_[row * dim_ + col]; }

 private:
  GateOp(int arity, std::vector<Complex> matrix);

  int arity_ = 1;
  std::size_t dim_ = 2;
  std::vector<Complex> mat_;
};

namespace gates {
const GateOp& identity();
const GateOp& pauli_x();
const GateOp& pauli_z();
const GateOp& hadamard();
const GateOp& cnot();  // control = targets[0], target = targets[1]
}  // namespace gates

PureState apply_gate(const PureState& state, const GateOp& gate,
                     const std::vector<int>& targets);

}  // namespace ionlink

#endif
