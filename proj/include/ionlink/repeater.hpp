#ifndef IONLINK_REPEATER_HPP
#define IONLINK_REPEATER_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "ionlink/state.hpp"

namespace ionlink {

// Pauli fix applied to the far end qubit after a connecting measurement.
enum class SwapFix {
  None,
  FlipEnd,       // X
  PhaseEnd,      // Z
  PhaseFlipEnd,  // Z X
};

struct SwapRecord {
  int x_outcome = 0;  // middle qubit k, X basis, 0 <-> |+>
  int z_outcome = 0;  // middle qubit k', Z basis
  SwapFix correction = SwapFix::None;
  double branch_probability = 0.0;
};

// Entangling-link budget of one segment: per-attempt success probability of
// the station-local protocol and the attempt repetition period.
struct LinkBudget {
  double success_prob = 0.0;  // (0, 1]
  double attempt_time = 0.0;  // seconds, > 0
};

// Chain of n_segments spans, each of length segment_length through fiber of
// the given attenuation. Segments are prepared sequentially left to right and
// connected by swaps at the intermediate stations; swaps are instantaneous and
// error-free apart from the exploratory per-swap fidelity multiplier.
struct RepeaterConfig {
  int n_segments = 1;
  double segment_length = 0.0;  // km
  double attenuation = 0.0;     // 1/km
  LinkBudget link;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  double swap_fidelity = 1.0;

  void validate() const;  // throws std::invalid_argument naming the field
};

struct RepeaterResult {
  std::vector<double> per_trial_times;        // seconds, one entry per trial
  double mean_time = 0.0;
  double analytic_time = 0.0;                 // n * e^{alpha L0} * t / p
  double direct_time = 0.0;                   // e^{n alpha L0} * t / p
  double final_fidelity = 0.0;                // mean end-to-end vs the link state
  double fidelity_se = 0.0;                   // standard error of that mean
  std::array<std::uint64_t, 4> swap_outcomes{};  // counts indexed z*2 + x
};

// Photon survival over one span: e^{-attenuation * length}.
double channel_transmission(double attenuation, double length);

// Attempts until first success at per-attempt probability p, distributed as a
// run of independent tries but drawn from a single uniform.
std::uint64_t sample_attempts(double p, RandomStream& rng);

// Per-attempt probability that a segment heralds: p * e^{-attenuation * length}.
double segment_success_prob(double success_prob, double attenuation,
                            double length);

// Connects two adjacent pairs held in a 4-qubit register (A, k, k', B): CNOT
// from k onto k', X measurement of k, Z measurement of k', then the tabulated
// fix on B. Two ideal link states in yields the ideal link state on (A, B) in
// every branch. Returns the surviving (A, B) pair.
std::pair<PureState, SwapRecord> entanglement_swap(const PureState& reg,
                                                   RandomStream& rng);

// Sequential chain Monte Carlo; per-trial substreams keyed on the trial index
// make per_trial_times bit-identical for a given (config, seed) regardless of
// evaluation order.
RepeaterResult simulate_chain(const RepeaterConfig& config);

double analytic_chain_time(const RepeaterConfig& config);
double direct_transmission_time(const RepeaterConfig& config);

}  // namespace ionlink

#endif
