#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "doctest.h"
#include "ionlink/gate.hpp"
#include "ionlink/random.hpp"
#include "ionlink/state.hpp"
#include "oracle_utils.hpp"

using ionlink::Basis;
using ionlink::BellKind;
using ionlink::Complex;
using ionlink::PureState;
using ionlink::RandomStream;

namespace {

PureState random_state(int n, RandomStream& rng) {
  const std::size_t dim = std::size_t{1} << n;
  std::vector<Complex> amps(dim);
  double norm = 0.0;
  for (auto& a : amps) {
    a = Complex{rng.gaussian(1.0), rng.gaussian(1.0)};
    norm += std::norm(a);
  }
  norm = std::sqrt(norm);
  for (auto& a : amps) a /= norm;
  return PureState(n, std::move(amps));
}

oracle::cvec to_vec(const PureState& s) {
  oracle::cvec v(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) v[i] = s.amplitude(i);
  return v;
}

}  // namespace

TEST_CASE("basis states put unit amplitude at the right index") {
  for (std::size_t idx = 0; idx < 8; ++idx) {
    const PureState s = ionlink::make_basis_state(3, idx);
    CHECK(s.num_qubits() == 3);
    CHECK(s.dim() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
      CHECK(std::abs(s.amplitude(i) - (i == idx ? 1.0 : 0.0)) < 1e-15);
    }
  }
  CHECK_THROWS_AS(ionlink::make_basis_state(2, 4), std::invalid_argument);
}

TEST_CASE("qubit 0 is the most significant bit of the basis index") {
  // |10> must sit at index 2, not 1.
  const PureState s = ionlink::make_basis_state(2, 2);
  CHECK(s.bit(2, 0) == 1);
  CHECK(s.bit(2, 1) == 0);
  CHECK(s.mask(0) == 2);
  CHECK(s.mask(1) == 1);
  // |1111> fills the top index of a 4-qubit register.
  const PureState all_ones = ionlink::make_basis_state(4, 15);
  CHECK(std::abs(all_ones.amplitude(15) - 1.0) < 1e-15);
}

TEST_CASE("measuring an eigenstate is deterministic and non-destructive") {
  const PureState s = ionlink::make_basis_state(2, 2);  // |10>
  RandomStream rng(1);
  const auto [record, after] = ionlink::measure_qubit(s, 0, Basis::Z, rng);
  CHECK(record.outcome == 1);
  CHECK(record.probability == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(ionlink::fidelity(after, s) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("projecting half of a shared pair collapses the partner") {
  const PureState pair = ionlink::bell_state(BellKind::PhiPlus01_10);
  const auto [p, collapsed] = ionlink::project_qubit(pair, 0, Basis::Z, 0);
  CHECK(p == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(ionlink::fidelity(collapsed, ionlink::make_basis_state(2, 1)) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("overlap of the shared pair with one of its components is a half") {
  const PureState pair = ionlink::bell_state(BellKind::PhiPlus01_10);
  CHECK(ionlink::fidelity(pair, ionlink::make_basis_state(2, 1)) ==
        doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("both shared-pair flavors match their amplitude vectors") {
  const PureState plus = ionlink::bell_state(BellKind::PhiPlus01_10);
  const PureState minus = ionlink::bell_state(BellKind::PsiMinus01_10);
  CHECK(oracle::fid(to_vec(plus), oracle::bell_shared()) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(oracle::fid(to_vec(minus), oracle::bell_coincidence()) ==
        doctest::Approx(1.0).epsilon(1e-13));
  // The two flavors are orthogonal.
  CHECK(ionlink::fidelity(plus, minus) < 1e-12);
}

TEST_CASE("constructor rejects malformed amplitude vectors") {
  std::vector<Complex> three(3, Complex{0.5, 0.0});
  CHECK_THROWS_AS(PureState(2, three), std::invalid_argument);
  std::vector<Complex> unnormalized = {Complex{1.0, 0.0}, Complex{1.0, 0.0}};
  CHECK_THROWS_AS(PureState(1, unnormalized), std::invalid_argument);
  CHECK_THROWS_AS(ionlink::make_basis_state(ionlink::kMaxQubits + 1, 0), std::length_error);
  CHECK_THROWS_AS(ionlink::make_basis_state(0, 0), std::invalid_argument);
}

TEST_CASE("small normalization drift is accepted and cleaned up") {
  const double eps = 1e-10;  // inside kSumTol
  std::vector<Complex> amps = {Complex{std::sqrt(1.0 + eps), 0.0}, Complex{0.0, 0.0}};
  const PureState s(1, amps);
  CHECK(std::abs(s.norm_sq() - 1.0) < 1e-14);
}

TEST_CASE("single-qubit gates match dense embeddings on random states") {
  RandomStream rng(2024);
  const std::vector<std::pair<const ionlink::GateOp*, const oracle::cmat*>> gates = {
      {&ionlink::gates::hadamard(), &oracle::m_h()},
      {&ionlink::gates::pauli_x(), &oracle::m_x()},
      {&ionlink::gates::pauli_z(), &oracle::m_z()},
      {&ionlink::gates::identity(), &oracle::m_id()},
  };
  for (int n = 1; n <= 4; ++n) {
    for (int q = 0; q < n; ++q) {
      const PureState s = random_state(n, rng);
      for (const auto& [gate, dense] : gates) {
        const PureState out = ionlink::apply_gate(s, *gate, {q});
        const oracle::cvec expect = oracle::matvec(oracle::embed(n, {q}, *dense), to_vec(s));
        CHECK(oracle::fid(to_vec(out), expect) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(out.norm_sq() - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("controlled-not matches its dense embedding for every qubit pair") {
  RandomStream rng(77);
  for (int n = 2; n <= 4; ++n) {
    for (int c = 0; c < n; ++c) {
      for (int t = 0; t < n; ++t) {
        if (c == t) continue;
        const PureState s = random_state(n, rng);
        const PureState out = ionlink::apply_gate(s, ionlink::gates::cnot(), {c, t});
        const oracle::cvec expect =
            oracle::matvec(oracle::embed(n, {c, t}, oracle::m_cnot()), to_vec(s));
        CHECK(oracle::fid(to_vec(out), expect) == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gate application validates targets") {
  const PureState s = ionlink::make_basis_state(2, 0);
  CHECK_THROWS_AS(ionlink::apply_gate(s, ionlink::gates::cnot(), {0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ionlink::apply_gate(s, ionlink::gates::cnot(), {0, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ionlink::apply_gate(s, ionlink::gates::hadamard(), {0, 1}),
                  std::invalid_argument);
}

TEST_CASE("gate construction enforces unitarity") {
  std::vector<Complex> not_unitary = {Complex{1.0, 0.0}, Complex{1.0, 0.0},
                                      Complex{0.0, 0.0}, Complex{1.0, 0.0}};
  CHECK_THROWS_AS(ionlink::GateOp::from_matrix(1, not_unitary), std::invalid_argument);
  CHECK_THROWS_AS(ionlink::GateOp::from_matrix(3, {}), std::invalid_argument);
}

TEST_CASE("conjugating a phase flip with mixers gives a bit flip") {
  RandomStream rng(5);
  for (int i = 0; i < 10; ++i) {
    const PureState s = random_state(3, rng);
    const int q = i % 3;
    PureState a = ionlink::apply_gate(s, ionlink::gates::hadamard(), {q});
    a = ionlink::apply_gate(a, ionlink::gates::pauli_z(), {q});
    a = ionlink::apply_gate(a, ionlink::gates::hadamard(), {q});
    const PureState b = ionlink::apply_gate(s, ionlink::gates::pauli_x(), {q});
    CHECK(ionlink::fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("projection probabilities are complete and states renormalized") {
  RandomStream rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const PureState s = random_state(3, rng);
    for (int q = 0; q < 3; ++q) {
      for (Basis basis : {Basis::Z, Basis::X}) {
        double total = 0.0;
        for (int outcome : {0, 1}) {
          try {
            const auto [p, collapsed] = ionlink::project_qubit(s, q, basis, outcome);
            total += p;
            CHECK(std::abs(collapsed.norm_sq() - 1.0) < 1e-12);
          } catch (const std::domain_error&) {
            // zero-weight branch, contributes nothing
          }
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("projection on a dead branch raises a domain error") {
  const PureState zero = ionlink::make_basis_state(1, 0);
  CHECK_THROWS_AS(ionlink::project_qubit(zero, 0, Basis::Z, 1), std::domain_error);
  const auto [p, kept] = ionlink::project_qubit(zero, 0, Basis::Z, 0);
  CHECK(p == doctest::Approx(1.0));
  CHECK(oracle::fid(to_vec(kept), to_vec(zero)) == doctest::Approx(1.0));
}

TEST_CASE("x-basis projection agrees with mixing then z-projection") {
  RandomStream rng(404);
  for (int trial = 0; trial < 10; ++trial) {
    const PureState s = random_state(2, rng);
    for (int outcome : {0, 1}) {
      const auto [px, sx] = ionlink::project_qubit(s, 0, Basis::X, outcome);
      const PureState mixed = ionlink::apply_gate(s, ionlink::gates::hadamard(), {0});
      const auto [pz, sz] = ionlink::project_qubit(mixed, 0, Basis::Z, outcome);
      CHECK(px == doctest::Approx(pz).epsilon(1e-12));
      const PureState back = ionlink::apply_gate(sz, ionlink::gates::hadamard(), {0});
      CHECK(ionlink::fidelity(sx, back) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampled measurement outcomes follow the Born rule") {
  // |+> measured in Z lands on 0 about half the time.
  const std::vector<Complex> plus = {Complex{1.0 / std::sqrt(2.0), 0.0},
                                     Complex{1.0 / std::sqrt(2.0), 0.0}};
  const PureState s(1, plus);
  RandomStream rng(91);
  const int n = 20000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) {
    const auto [record, collapsed] = ionlink::measure_qubit(s, 0, Basis::Z, rng);
    if (record.outcome == 0) ++zeros;
    CHECK(record.probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(collapsed.norm_sq() - 1.0) < 1e-12);
  }
  const double p_hat = static_cast<double>(zeros) / n;
  CHECK(std::abs(p_hat - 0.5) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("measurement in X of a basis state is an even coin") {
  const PureState zero = ionlink::make_basis_state(1, 0);
  RandomStream rng(123);
  int plus = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto [record, collapsed] = ionlink::measure_qubit(zero, 0, Basis::X, rng);
    if (record.outcome == 0) ++plus;
  }
  CHECK(std::abs(plus / static_cast<double>(n) - 0.5) < 4.0 * std::sqrt(0.25 / n));
}

TEST_CASE("fidelity ignores global phase and detects orthogonality") {
  const PureState a = ionlink::bell_state(BellKind::PhiPlus01_10);
  std::vector<Complex> rotated(4);
  const Complex phase = std::polar(1.0, 1.234);
  for (std::size_t i = 0; i < 4; ++i) rotated[i] = phase * a.amplitude(i);
  const PureState b(2, rotated);
  CHECK(ionlink::fidelity(a, b) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(ionlink::fidelity(a, ionlink::make_basis_state(1, 0)),
                  std::invalid_argument);
}

TEST_CASE("tensor composition places left factor on the high bits") {
  const PureState one = ionlink::make_basis_state(1, 1);
  const PureState zero = ionlink::make_basis_state(1, 0);
  const PureState joined = ionlink::tensor(one, zero);  // |10>
  CHECK(joined.num_qubits() == 2);
  CHECK(std::abs(joined.amplitude(2) - 1.0) < 1e-15);
  RandomStream rng(6);
  const PureState l = random_state(2, rng);
  const PureState r = random_state(1, rng);
  const PureState both = ionlink::tensor(l, r);
  for (std::size_t i = 0; i < both.dim(); ++i) {
    const Complex expect = l.amplitude(i >> 1) * r.amplitude(i & 1);
    CHECK(std::abs(both.amplitude(i) - expect) < 1e-13);
  }
}

TEST_CASE("removing a disentangled qubit undoes a tensor product") {
  RandomStream rng(8);
  const PureState payload = random_state(2, rng);
  const PureState marker = ionlink::make_basis_state(1, 1);
  const PureState reg = ionlink::tensor(payload, marker);
  const PureState back = ionlink::remove_qubit(reg, 2, 1);
  CHECK(ionlink::fidelity(back, payload) == doctest::Approx(1.0).epsilon(1e-12));
  // Claiming the wrong outcome leaves all the weight on the other branch.
  CHECK_THROWS_AS(ionlink::remove_qubit(reg, 2, 0), std::invalid_argument);
  // Removing one half of an entangled pair is an error, not a silent trace.
  const PureState pair = ionlink::bell_state(BellKind::PhiPlus01_10);
  CHECK_THROWS_AS(ionlink::remove_qubit(pair, 0, 0), std::invalid_argument);
}

TEST_CASE("removal keeps the relative order of the survivors") {
  RandomStream rng(9);
  const PureState a = random_state(1, rng);
  const PureState b = random_state(1, rng);
  const PureState mid = ionlink::make_basis_state(1, 0);
  const PureState reg = ionlink::tensor(ionlink::tensor(a, mid), b);
  const PureState dropped = ionlink::remove_qubit(reg, 1, 0);
  CHECK(ionlink::fidelity(dropped, ionlink::tensor(a, b)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ensemble density operators stay physical") {
  const PureState a = ionlink::bell_state(BellKind::PhiPlus01_10);
  const PureState b = ionlink::bell_state(BellKind::PsiMinus01_10);
  const auto rho = ionlink::density_from_ensemble({{0.99, a}, {0.01, b}});
  rho.validate();
  CHECK(rho.min_eigenvalue() >= -1e-10);
  // Overlap with the majority component, checked against a dense contraction.
  const double f = ionlink::fidelity(rho, a);
  oracle::cmat dense = oracle::zeros(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) dense[i][j] = rho.element(i, j);
  CHECK(f == doctest::Approx(oracle::density_overlap(dense, oracle::bell_shared()))
                 .epsilon(1e-13));
  CHECK(f == doctest::Approx(0.99).epsilon(1e-12));
}

TEST_CASE("simple ensembles produce the expected matrices") {
  const PureState zero = ionlink::make_basis_state(1, 0);
  const auto pure = ionlink::density_from_ensemble({{1.0, zero}});
  CHECK(std::abs(pure.element(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(pure.element(1, 1)) < 1e-14);
  const PureState one = ionlink::make_basis_state(1, 1);
  const auto mix = ionlink::density_from_ensemble({{0.5, zero}, {0.5, one}});
  CHECK(std::abs(mix.element(0, 0) - 0.5) < 1e-14);
  CHECK(std::abs(mix.element(1, 1) - 0.5) < 1e-14);
  CHECK(std::abs(mix.element(0, 1)) < 1e-14);
}

TEST_CASE("ensemble weights must form a distribution") {
  const PureState a = ionlink::make_basis_state(1, 0);
  CHECK_THROWS_AS(ionlink::density_from_ensemble({{0.5, a}}), std::invalid_argument);
  CHECK_THROWS_AS(ionlink::density_from_ensemble({{-0.1, a}, {1.1, a}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ionlink::density_from_ensemble({}), std::invalid_argument);
}

TEST_CASE("density operators cap the register size") {
  const PureState big = ionlink::make_basis_state(7, 0);
  CHECK_THROWS_AS(ionlink::density_from_ensemble({{1.0, big}}), std::length_error);
}

TEST_CASE("mixed-state overlap interpolates between the components") {
  const PureState a = ionlink::make_basis_state(1, 0);
  const PureState b = ionlink::make_basis_state(1, 1);
  for (double w : {0.1, 0.25, 0.5, 0.9}) {
    const auto rho = ionlink::density_from_ensemble({{w, a}, {1.0 - w, b}});
    CHECK(ionlink::fidelity(rho, a) == doctest::Approx(w).epsilon(1e-12));
  }
}

TEST_CASE("random streams are deterministic and splittable") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  RandomStream s0 = RandomStream::substream(42, 0);
  RandomStream s1 = RandomStream::substream(42, 1);
  bool differ = false;
  for (int i = 0; i < 10; ++i) differ = differ || (s0.next() != s1.next());
  CHECK(differ);
  CHECK(RandomStream::derive_seed(42, 3) == RandomStream::derive_seed(42, 3));
  CHECK(RandomStream::derive_seed(42, 3) != RandomStream::derive_seed(42, 4));
}

TEST_CASE("uniform draws live in the half-open unit interval") {
  RandomStream rng(7);
  double lo = 1.0, hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo < 0.01);
  CHECK(hi > 0.99);
}

TEST_CASE("gaussian draws have the requested spread") {
  RandomStream rng(13);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gaussian(2.0);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 * 2.0 / std::sqrt(static_cast<double>(n)));
  CHECK(var == doctest::Approx(4.0).epsilon(0.05));
}
