#ifndef IONLINK_STATE_HPP
#define IONLINK_STATE_HPP

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "ionlink/random.hpp"

namespace ionlink {

using Complex = std::complex<double>;

// Tolerances used across the library: exact algebra vs accumulated sums.
inline constexpr double kAlgebraTol = 1e-12;
inline constexpr double kSumTol = 1e-9;
inline constexpr double kZeroBranchTol = 1e-14;
inline constexpr int kMaxQubits = 12;

enum class Basis { Z, X };

enum class BellKind {
  PhiPlus01_10,   // (|01> + |10>)/sqrt(2), the heralded entangling-link state
  PsiMinus01_10,  // (|01> - |10>)/sqrt(2), the two-photon coincidence state
};

struct MeasurementRecord {
  int qubit = 0;
  Basis basis = Basis::Z;
  int outcome = 0;  // X basis: 0 <-> |+>, 1 <-> |->
  double probability = 0.0;
};

// Dense amplitude vector over up to kMaxQubits qubits.
// Index convention: qubit 0 is the MOST significant bit of the basis index,
// so |q0 q1 ... q_{n-1}> lives at index q0*2^{n-1} + ... + q_{n-1}.
// Global phase is physical state bookkeeping and is never normalized away;
// equality checks go through fidelity(), which is phase-insensitive.
class PureState {
 public:
  PureState(int num_qubits, std::vector<Complex> amplitudes);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  Complex amplitude(std::size_t index) const;
  double norm_sq() const;

  // Bit value of `qubit` within basis index `index`.
  int bit(std::size_t index, int qubit) const {
    return static_cast<int>((index >> (num_qubits_ - 1 - qubit)) & 1u);
  }
  std::size_t mask(int qubit) const {
    return std::size_t{1} << (num_qubits_ - 1 - qubit);
  }

 private:
  int num_qubits_ = 0;
  std::vector<Complex> amps_;
};

// Hermitian, unit-trace, positive-semidefinite operator built from pure-state
// ensembles. Row-major dense storage; capped at 6 qubits (the PSD check runs a
// dense eigensolve and nothing in scope needs more than 2).
class DensityOperator {
 public:
  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Complex>& matrix() const { return mat_; }
  Complex element(std::size_t row, std::size_t col) const { return mat_[row * dim_ + col]; }

  // Smallest eigenvalue (Jacobi rotations on the real symmetric embedding).
  double min_eigenvalue() const;
  // Enforces hermiticity / unit trace at kAlgebraTol and eigenvalues >= -1e-10.
  void validate() const;

 private:
  friend DensityOperator density_from_ensemble(
      const std::vector<std::pair<double, PureState>>&);
  DensityOperator(int num_qubits, std::vector<Complex> mat);

  int num_qubits_ = 0;
  std::size_t dim_ = 0;
  std::vector<Complex> mat_;
};

PureState make_basis_state(int num_qubits, std::size_t basis_index);
PureState bell_state(BellKind kind);

// Projective measurement of one qubit; the returned state is collapsed and
// renormalized. X-basis outcomes are equivalent to conjugating with H and
// measuring in Z.
std::pair<MeasurementRecord, PureState> measure_qubit(const PureState& state,
                                                      int qubit, Basis basis,
                                                      RandomStream& rng);

// Deterministic projection onto a chosen outcome. Returns the Born probability
// of that branch plus the collapsed state; branches below kZeroBranchTol cannot
// be forced and raise std::domain_error.
std::pair<double, PureState> project_qubit(const PureState& state, int qubit,
                                           Basis basis, int outcome);

double fidelity(const PureState& state, const PureState& target);
double fidelity(const DensityOperator& rho, const PureState& target);

DensityOperator density_from_ensemble(
    const std::vector<std::pair<double, PureState>>& ensemble);

// Kronecker composition: `left`'s qubits come first (most significant).
PureState tensor(const PureState& left, const PureState& right);

// Drops a qubit known to sit in computational basis state |outcome>; remaining
// qubits keep their relative order. Residual weight on the discarded branch
// above kAlgebraTol means the qubit was still entangled and is an error.
PureState remove_qubit(const PureState& state, int qubit, int outcome);

}  // namespace ionlink

#endif
