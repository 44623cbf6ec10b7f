#include "ionlink/repeater.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "ionlink/gate.hpp"
#include "ionlink/stats.hpp"

namespace ionlink {

// Number of attempts until the first success, inverse-CDF sampled so a segment
// costs one uniform regardless of how long it takes. Matches the distribution
// of repeated single attempts exactly.
std::uint64_t sample_attempts(double p, RandomStream& rng) {
  const double u = rng.uniform();
  if (p >= 1.0) return 1;
  const double raw = std::floor(std::log1p(-u) / std::log1p(-p));
  if (!(raw >= 0.0)) return 1;
  if (raw >= 9.0e18) return std::uint64_t{9000000000000000000ull};
  return 1 + static_cast<std::uint64_t>(raw);
}

namespace {

SwapFix swap_fix(int z_outcome, int x_outcome) {
  if (z_outcome == 1) {
    return x_outcome == 0 ? SwapFix::None : SwapFix::PhaseEnd;
  }
  return x_outcome == 0 ? SwapFix::FlipEnd : SwapFix::PhaseFlipEnd;
}

}  // namespace

void RepeaterConfig::validate() const {
  if (n_segments < 1) {
    throw std::invalid_argument("n_segments must be >= 1");
  }
  if (!(segment_length >= 0.0)) {
    throw std::invalid_argument("segment_length must be >= 0");
  }
  if (!(attenuation >= 0.0)) {
    throw std::invalid_argument("attenuation must be >= 0");
  }
  if (!(link.success_prob > 0.0 && link.success_prob <= 1.0)) {
    throw std::invalid_argument("link success_prob must lie in (0, 1]");
  }
  if (!(link.attempt_time > 0.0)) {
    throw std::invalid_argument("link attempt_time must be > 0");
  }
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  if (!(swap_fidelity >= 0.0 && swap_fidelity <= 1.0)) {
    throw std::invalid_argument("swap_fidelity must lie in [0, 1]");
  }
}

double channel_transmission(double attenuation, double length) {
  if (!(attenuation >= 0.0)) {
    throw std::domain_error("attenuation must be >= 0");
  }
  if (!(length >= 0.0)) {
    throw std::domain_error("length must be >= 0");
  }
  return std::exp(-attenuation * length);
}

double segment_success_prob(double success_prob, double attenuation,
                            double length) {
  if (!(success_prob > 0.0 && success_prob <= 1.0)) {
    throw std::domain_error("success_prob must lie in (0, 1]");
  }
  return success_prob * channel_transmission(attenuation, length);
}

std::pair<PureState, SwapRecord> entanglement_swap(const PureState& reg,
                                                   RandomStream& rng) {
  if (reg.num_qubits() != 4) {
    throw std::invalid_argument(
        "swap register must hold exactly (A, k, k', B)");
  }
  PureState work = apply_gate(reg, gates::cnot(), {1, 2});
  auto [x_rec, after_x] = measure_qubit(work, 1, Basis::X, rng);
  auto [z_rec, after_z] = measure_qubit(after_x, 2, Basis::Z, rng);

  SwapRecord record;
  record.x_outcome = x_rec.outcome;
  record.z_outcome = z_rec.outcome;
  record.correction = swap_fix(z_rec.outcome, x_rec.outcome);
  record.branch_probability = x_rec.probability * z_rec.probability;

  PureState corrected = after_z;
  if (record.correction == SwapFix::FlipEnd ||
      record.correction == SwapFix::PhaseFlipEnd) {
    corrected = apply_gate(corrected, gates::pauli_x(), {3});
  }
  if (record.correction == SwapFix::PhaseEnd ||
      record.correction == SwapFix::PhaseFlipEnd) {
    corrected = apply_gate(corrected, gates::pauli_z(), {3});
  }

  PureState rotated = apply_gate(corrected, gates::hadamard(), {1});
  PureState without_z = remove_qubit(rotated, 2, z_rec.outcome);
  PureState pair = remove_qubit(without_z, 1, x_rec.outcome);
  return {std::move(pair), record};
}

RepeaterResult simulate_chain(const RepeaterConfig& config) {
  config.validate();
  const double p_seg = segment_success_prob(
      config.link.success_prob, config.attenuation, config.segment_length);
  const PureState link = bell_state(BellKind::PhiPlus01_10);

  RepeaterResult result;
  result.per_trial_times.resize(config.trials);
  result.analytic_time = analytic_chain_time(config);
  result.direct_time = direct_transmission_time(config);

  RunningStats fidelity_stats;
  const double swap_scale =
      std::pow(config.swap_fidelity, config.n_segments - 1);
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    RandomStream rng = RandomStream::substream(config.seed, trial);
    std::uint64_t attempts = 0;
    PureState chain = link;
    for (int seg = 0; seg < config.n_segments; ++seg) {
      attempts += sample_attempts(p_seg, rng);
      if (seg == 0) continue;
      auto [pair, record] = entanglement_swap(tensor(chain, link), rng);
      chain = std::move(pair);
      result.swap_outcomes[record.z_outcome * 2 + record.x_outcome] += 1;
    }
    result.per_trial_times[trial] =
        static_cast<double>(attempts) * config.link.attempt_time;
    fidelity_stats.add(fidelity(chain, link) * swap_scale);
  }

  double time_sum = 0.0;
  for (const double t : result.per_trial_times) time_sum += t;
  result.mean_time = time_sum / static_cast<double>(config.trials);
  result.final_fidelity = fidelity_stats.mean;
  result.fidelity_se = fidelity_stats.sem();
  return result;
}

double analytic_chain_time(const RepeaterConfig& config) {
  config.validate();
  const double per_segment =
      config.link.attempt_time /
      segment_success_prob(config.link.success_prob, config.attenuation,
                           config.segment_length);
  return static_cast<double>(config.n_segments) * per_segment;
}

double direct_transmission_time(const RepeaterConfig& config) {
  config.validate();
  const double loss = std::exp(-config.attenuation * config.segment_length *
                               static_cast<double>(config.n_segments));
  return config.link.attempt_time / (config.link.success_prob * loss);
}

}  // namespace ionlink
