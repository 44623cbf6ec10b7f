#include "ionlink/state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ionlink {
namespace {

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1) {
    throw std::invalid_argument("qubit count " + std::to_string(num_qubits) +
                                " must be at least 1");
  }
  if (num_qubits > kMaxQubits) {
    throw std::length_error("qubit count " + std::to_string(num_qubits) +
                            " exceeds the supported maximum of " +
                            std::to_string(kMaxQubits));
  }
}

void check_qubit_index(const PureState& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::invalid_argument("qubit index " + std::to_string(qubit) +
                                " out of range for " +
                                std::to_string(state.num_qubits()) + " qubits");
  }
}

// In-place Hadamard on one qubit; used to express X-basis operations as
// Z-basis ones in the rotated frame.
void hadamard_in_place(std::vector<Complex>& amps, std::size_t mask) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if (i & mask) continue;
    const Complex a0 = amps[i];
    const Complex a1 = amps[i | mask];
    amps[i] = inv_sqrt2 * (a0 + a1);
    amps[i | mask] = inv_sqrt2 * (a0 - a1);
  }
}

struct Collapse {
  double probability = 0.0;
  std::vector<Complex> amps;
};

// Z-basis collapse of `qubit` onto `outcome` in the given amplitude frame.
Collapse collapse_z(const std::vector<Complex>& amps, std::size_t mask,
                    int outcome) {
  double p = 0.0;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool hit = ((i & mask) != 0) == (outcome == 1);
    if (hit) p += std::norm(amps[i]);
  }
  Collapse result;
  result.probability = p;
  if (p <= 0.0) return result;
  const double scale = 1.0 / std::sqrt(p);
  result.amps.assign(amps.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const bool hit = ((i & mask) != 0) == (outcome == 1);
    if (hit) result.amps[i] = amps[i] * scale;
  }
  return result;
}

}  // namespace

PureState::PureState(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  check_qubit_count(num_qubits_);
  const std::size_t expected = std::size_t{1} << num_qubits_;
  if (amps_.size() != expected) {
    throw std::invalid_argument("amplitude vector holds " +
                                std::to_string(amps_.size()) +
                                " entries, expected " + std::to_string(expected));
  }
  const double n2 = norm_sq();
  if (std::abs(n2 - 1.0) > kSumTol) {
    throw std::invalid_argument("state norm^2 = " + std::to_string(n2) +
                                " is not 1 within tolerance");
  }
  const double scale = 1.0 / std::sqrt(n2);
  for (Complex& a : amps_) a *= scale;
}

Complex PureState::amplitude(std::size_t index) const {
  if (index >= amps_.size()) {
    throw std::invalid_argument("basis index " + std::to_string(index) +
                                " out of range");
  }
  return amps_[index];
}

double PureState::norm_sq() const {
  double n2 = 0.0;
  for (const Complex& a : amps_) n2 += std::norm(a);
  return n2;
}

PureState make_basis_state(int num_qubits, std::size_t basis_index) {
  check_qubit_count(num_qubits);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (basis_index >= dim) {
    throw std::invalid_argument("basis index " + std::to_string(basis_index) +
                                " out of range for " + std::to_string(num_qubits) +
                                " qubits");
  }
  std::vector<Complex> amps(dim, Complex{0.0, 0.0});
  amps[basis_index] = Complex{1.0, 0.0};
  return PureState(num_qubits, std::move(amps));
}

PureState bell_state(BellKind kind) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Complex> amps(4, Complex{0.0, 0.0});
  amps[1] = Complex{inv_sqrt2, 0.0};  // |01>
  amps[2] = (kind == BellKind::PhiPlus01_10) ? Complex{inv_sqrt2, 0.0}
                                             : Complex{-inv_sqrt2, 0.0};  // |10>
  return PureState(2, std::move(amps));
}

std::pair<MeasurementRecord, PureState> measure_qubit(const PureState& state,
                                                      int qubit, Basis basis,
                                                      RandomStream& rng) {
  check_qubit_index(state, qubit);
  const std::size_t mask = state.mask(qubit);
  std::vector<Complex> work = state.amplitudes();
  if (basis == Basis::X) hadamard_in_place(work, mask);

  double p0 = 0.0;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!(i & mask)) p0 += std::norm(work[i]);
  }
  const int outcome = rng.uniform() < p0 ? 0 : 1;
  Collapse c = collapse_z(work, mask, outcome);
  if (basis == Basis::X) hadamard_in_place(c.amps, mask);

  MeasurementRecord record{qubit, basis, outcome, c.probability};
  return {record, PureState(state.num_qubits(), std::move(c.amps))};
}

std::pair<double, PureState> project_qubit(const PureState& state, int qubit,
                                           Basis basis, int outcome) {
  check_qubit_index(state, qubit);
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("projection outcome must be 0 or 1");
  }
  const std::size_t mask = state.mask(qubit);
  std::vector<Complex> work = state.amplitudes();
  if (basis == Basis::X) hadamard_in_place(work, mask);

  Collapse c = collapse_z(work, mask, outcome);
  if (c.probability < kZeroBranchTol) {
    throw std::domain_error("cannot project onto branch with probability " +
                            std::to_string(c.probability));
  }
  if (basis == Basis::X) hadamard_in_place(c.amps, mask);
  return {c.probability, PureState(state.num_qubits(), std::move(c.amps))};
}

double fidelity(const PureState& state, const PureState& target) {
  if (state.num_qubits() != target.num_qubits()) {
    throw std::invalid_argument("fidelity requires equal qubit counts");
  }
  Complex overlap{0.0, 0.0};
  const auto& a = state.amplitudes();
  const auto& b = target.amplitudes();
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(b[i]) * a[i];
  return std::norm(overlap);
}

double fidelity(const DensityOperator& rho, const PureState& target) {
  if (rho.num_qubits() != target.num_qubits()) {
    throw std::invalid_argument("fidelity requires equal qubit counts");
  }
  const auto& t = target.amplitudes();
  Complex value{0.0, 0.0};
  for (std::size_t r = 0; r < rho.dim(); ++r) {
    Complex row{0.0, 0.0};
    for (std::size_t c = 0; c < rho.dim(); ++c) row += rho.element(r, c) * t[c];
    value += std::conj(t[r]) * row;
  }
  return value.real();
}

DensityOperator::DensityOperator(int num_qubits, std::vector<Complex> mat)
    : num_qubits_(num_qubits),
      dim_(std::size_t{1} << num_qubits),
      mat_(std::move(mat)) {}

DensityOperator density_from_ensemble(
    const std::vector<std::pair<double, PureState>>& ensemble) {
  if (ensemble.empty()) {
    throw std::invalid_argument("ensemble must contain at least one state");
  }
  const int n = ensemble.front().second.num_qubits();
  if (n > 6) {
    throw std::length_error("density operators support at most 6 qubits");
  }
  double total = 0.0;
  for (const auto& [w, state] : ensemble) {
    if (w < 0.0) throw std::invalid_argument("ensemble weights must be >= 0");
    if (state.num_qubits() != n) {
      throw std::invalid_argument("ensemble states must share a qubit count");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kSumTol) {
    throw std::invalid_argument("ensemble weights sum to " +
                                std::to_string(total) + ", expected 1");
  }
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> mat(dim * dim, Complex{0.0, 0.0});
  for (const auto& [w, state] : ensemble) {
    const auto& a = state.amplitudes();
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        mat[r * dim + c] += w * a[r] * std::conj(a[c]);
      }
    }
  }
  return DensityOperator(n, std::move(mat));
}

double DensityOperator::min_eigenvalue() const {
  // Real symmetric embedding [[Re, -Im], [Im, Re]] shares the spectrum of the
  // Hermitian matrix (each eigenvalue doubled); cyclic Jacobi sweeps suffice at
  // these dimensions.
  const std::size_t d = dim_;
  const std::size_t m = 2 * d;
  std::vector<double> s(m * m, 0.0);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const Complex v = mat_[r * d + c];
      s[r * m + c] = v.real();
      s[(r + d) * m + (c + d)] = v.real();
      s[r * m + (c + d)] = -v.imag();
      s[(r + d) * m + c] = v.imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) off += s[p * m + q] * s[p * m + q];
    }
    if (off < 1e-26) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = s[p * m + q];
        if (std::abs(apq) < 1e-300) continue;
        const double app = s[p * m + p];
        const double aqq = s[q * m + q];
        const double phi = 0.5 * std::atan2(2.0 * apq, aqq - app);
        const double c = std::cos(phi);
        const double t = std::sin(phi);
        for (std::size_t k = 0; k < m; ++k) {
          const double skp = s[k * m + p];
          const double skq = s[k * m + q];
          s[k * m + p] = c * skp - t * skq;
          s[k * m + q] = t * skp + c * skq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double spk = s[p * m + k];
          const double sqk = s[q * m + k];
          s[p * m + k] = c * spk - t * sqk;
          s[q * m + k] = t * spk + c * sqk;
        }
      }
    }
  }
  double min_eig = s[0];
  for (std::size_t p = 1; p < m; ++p) min_eig = std::min(min_eig, s[p * m + p]);
  return min_eig;
}

void DensityOperator::validate() const {
  Complex trace{0.0, 0.0};
  for (std::size_t r = 0; r < dim_; ++r) {
    trace += element(r, r);
    for (std::size_t c = 0; c < dim_; ++c) {
      const Complex diff = element(r, c) - std::conj(element(c, r));
      if (std::abs(diff) > kAlgebraTol) {
        throw std::invalid_argument("density operator is not hermitian");
      }
    }
  }
  if (std::abs(trace - Complex{1.0, 0.0}) > kAlgebraTol) {
    throw std::invalid_argument("density operator trace differs from 1");
  }
  if (min_eigenvalue() < -1e-10) {
    throw std::invalid_argument("density operator has a negative eigenvalue");
  }
}

PureState tensor(const PureState& left, const PureState& right) {
  const int n = left.num_qubits() + right.num_qubits();
  check_qubit_count(n);
  const std::size_t rdim = right.dim();
  std::vector<Complex> amps(left.dim() * rdim);
  for (std::size_t i = 0; i < left.dim(); ++i) {
    for (std::size_t j = 0; j < rdim; ++j) {
      amps[i * rdim + j] = left.amplitudes()[i] * right.amplitudes()[j];
    }
  }
  return PureState(n, std::move(amps));
}

PureState remove_qubit(const PureState& state, int qubit, int outcome) {
  check_qubit_index(state, qubit);
  if (state.num_qubits() < 2) {
    throw std::invalid_argument("cannot remove the only qubit of a register");
  }
  if (outcome != 0 && outcome != 1) {
    throw std::invalid_argument("removal outcome must be 0 or 1");
  }
  const std::size_t mask = state.mask(qubit);
  const std::size_t low = mask - 1;  // bits below the removed position
  double dropped = 0.0;
  std::vector<Complex> amps(state.dim() / 2);
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const bool keep = ((i & mask) != 0) == (outcome == 1);
    if (!keep) {
      dropped += std::norm(state.amplitudes()[i]);
      continue;
    }
    const std::size_t packed = ((i >> 1) & ~low) | (i & low);
    amps[packed] = state.amplitudes()[i];
  }
  if (dropped > kAlgebraTol) {
    throw std::invalid_argument(
        "qubit still carries weight " + std::to_string(dropped) +
        " outside the stated outcome; it cannot be removed");
  }
  return PureState(state.num_qubits() - 1, std::move(amps));
}

}  // namespace ionlink
