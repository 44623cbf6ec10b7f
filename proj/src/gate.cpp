#include "ionlink/gate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ionlink {

GateOp::GateOp(int arity, std::vector<Complex> matrix)
    : arity_(arity), dim_(std::size_t{1} << arity), mat_(std::move(matrix)) {}

GateOp GateOp::from_matrix(int arity, std::vector<Complex> matrix) {
  if (arity != 1 && arity != 2) {
    throw std::invalid_argument("gate arity must be 1 or 2");
  }
  const std::size_t dim = std::size_t{1} << arity;
  if (matrix.size() != dim * dim) {
    throw std::invalid_argument("gate matrix holds " +
                                std::to_string(matrix.size()) +
                                " entries, expected " + std::to_string(dim * dim));
  }
  // U^dagger U = I within kAlgebraTol.
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      Complex dot{0.0, 0.0};
      for (std::size_t k = 0; k < dim; ++k) {
        dot += std::conj(matrix[k * dim + r]) * matrix[k * dim + c];
      }
      const Complex expected = (r == c) ? Complex{1.0, 0.0} : Complex{0.0, 0.0};
      if (std::abs(dot - expected) > kAlgebraTol) {
        throw std::invalid_argument("gate matrix is not unitary");
      }
    }
  }
  return GateOp(arity, std::move(matrix));
}

namespace gates {

const GateOp& identity() {
  static const GateOp g = GateOp::from_matrix(1, {Complex{1, 0}, Complex{0, 0},
                                                  Complex{0, 0}, Complex{1, 0}});
  return g;
}

const GateOp& pauli_x() {
  static const GateOp g = GateOp::from_matrix(1, {Complex{0, 0}, Complex{1, 0},
                                                  Complex{1, 0}, Complex{0, 0}});
  return g;
}

const GateOp& pauli_z() {
  static const GateOp g = GateOp::from_matrix(1, {Complex{1, 0}, Complex{0, 0},
                                                  Complex{0, 0}, Complex{-1, 0}});
  return g;
}

const GateOp& hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  static const GateOp g = GateOp::from_matrix(1, {Complex{h, 0}, Complex{h, 0},
                                                  Complex{h, 0}, Complex{-h, 0}});
  return g;
}

const GateOp& cnot() {
  static const GateOp g = GateOp::from_matrix(
      2, {Complex{1, 0}, Complex{0, 0}, Complex{0, 0}, Complex{0, 0},
          Complex{0, 0}, Complex{1, 0}, Complex{0, 0}, Complex{0, 0},
          Complex{0, 0}, Complex{0, 0}, Complex{0, 0}, Complex{1, 0},
          Complex{0, 0}, Complex{0, 0}, Complex{1, 0}, Complex{0, 0}});
  return g;
}

}  // namespace gates

PureState apply_gate(const PureState& state, const GateOp& gate,
                     const std::vector<int>& targets) {
  const int n = state.num_qubits();
  const int k = gate.arity();
  if (static_cast<int>(targets.size()) != k) {
    throw std::invalid_argument("gate expects " + std::to_string(k) +
                                " target(s), got " +
                                std::to_string(targets.size()));
  }
  for (std::size_t a = 0; a < targets.size(); ++a) {
    if (targets[a] < 0 || targets[a] >= n) {
      throw std::invalid_argument("gate target " + std::to_string(targets[a]) +
                                  " out of range");
    }
    for (std::size_t b = a + 1; b < targets.size(); ++b) {
      if (targets[a] == targets[b]) {
        throw std::invalid_argument("gate targets must be distinct");
      }
    }
  }

  const std::size_t span = std::size_t{1} << k;
  // Sub-block index c maps its bit (k-1-j) onto targets[j]'s register bit.
  std::vector<std::size_t> pattern(span, 0);
  for (std::size_t c = 0; c < span; ++c) {
    for (int j = 0; j < k; ++j) {
      if ((c >> (k - 1 - j)) & 1u) pattern[c] |= state.mask(targets[j]);
    }
  }
  std::size_t target_union = 0;
  for (int j = 0; j < k; ++j) target_union |= state.mask(targets[j]);
  std::vector<std::size_t> free_masks;
  for (int pos = 0; pos < n; ++pos) {
    const std::size_t m = std::size_t{1} << pos;
    if (!(m & target_union)) free_masks.push_back(m);
  }

  std::vector<Complex> out(state.dim());
  std::vector<Complex> local(span);
  const std::size_t groups = state.dim() >> k;
  for (std::size_t g = 0; g < groups; ++g) {
    std::size_t base = 0;
    std::size_t rem = g;
    for (const std::size_t m : free_masks) {
      if (rem & 1u) base |= m;
      rem >>= 1;
    }
    for (std::size_t c = 0; c < span; ++c) {
      local[c] = state.amplitudes()[base | pattern[c]];
    }
    for (std::size_t r = 0; r < span; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < span; ++c) acc += gate.element(r, c) * local[c];
      out[base | pattern[r]] = acc;
    }
  }
  return PureState(n, std::move(out));
}

}  // namespace ionlink
