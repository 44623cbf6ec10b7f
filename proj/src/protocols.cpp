#include "ionlink/protocols.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ionlink {
namespace {

// Largest half-angle for which the collection fraction stays in [0, 1].
double max_half_angle() {
  static const double v = std::acos(-1.0 / 3.0);
  return v;
}

PureState type1_link_state(double phase) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<Complex> amps(4, Complex{0.0, 0.0});
  amps[1] = Complex{inv_sqrt2, 0.0};
  amps[2] = std::polar(inv_sqrt2, phase);
  return PureState(2, std::move(amps));
}

EntangleOutcome failed_attempt(const ProtocolParams& params) {
  EntangleOutcome out;
  out.success = false;
  out.attempts = 1;
  out.elapsed = params.attempt_time;
  return out;
}

}  // namespace

double ProtocolParams::collection() const {
  const double base =
      collection_override ? *collection_override : collection_efficiency(half_angle);
  return collection_gain * base;
}

double ProtocolParams::phase_spread() const {
  if (phase_spread_override) return *phase_spread_override;
  return std::sqrt(2.0) * wavevector_diff * position_spread;
}

void ProtocolParams::validate() const {
  if (!(excite_prob >= 0.0 && excite_prob <= 1.0)) {
    throw std::invalid_argument("excite_prob must lie in [0, 1]");
  }
  if (!(detector_eff > 0.0 && detector_eff <= 1.0)) {
    throw std::invalid_argument("detector_eff must lie in (0, 1]");
  }
  if (!(collection_gain >= 1.0)) {
    throw std::invalid_argument("collection_gain must be >= 1");
  }
  if (collection_override) {
    if (!(*collection_override >= 0.0 && *collection_override <= 1.0)) {
      throw std::invalid_argument("collection_override must lie in [0, 1]");
    }
  } else if (!(half_angle >= 0.0 && half_angle <= max_half_angle())) {
    throw std::invalid_argument("half_angle must lie in [0, acos(-1/3)]");
  }
  const double pc = collection();
  if (!(pc >= 0.0 && pc <= 1.0 + kAlgebraTol)) {
    throw std::invalid_argument(
        "effective collection (gain * base) exceeds 1; lower collection_gain");
  }
  if (!(lifetime > 0.0)) {
    throw std::invalid_argument("lifetime must be > 0");
  }
  if (!(attempt_time >= lifetime)) {
    throw std::invalid_argument("attempt_time must be >= lifetime");
  }
  if (!(wavevector_diff >= 0.0)) {
    throw std::invalid_argument("wavevector_diff must be >= 0");
  }
  if (!(position_spread >= 0.0)) {
    throw std::invalid_argument("position_spread must be >= 0");
  }
  if (phase_spread_override && !(*phase_spread_override >= 0.0)) {
    throw std::invalid_argument("phase_spread_override must be >= 0");
  }
  if (photons_required < 1) {
    throw std::invalid_argument("photons_required must be >= 1");
  }
}

double collection_efficiency(double half_angle) {
  if (!(half_angle >= 0.0 && half_angle <= max_half_angle())) {
    throw std::domain_error("half_angle outside [0, acos(-1/3)]");
  }
  return 3.0 * (1.0 - std::cos(half_angle)) / 4.0;
}

double success_prob_type1(const ProtocolParams& params) {
  params.validate();
  return params.excite_prob * params.collection() * params.detector_eff / 2.0;
}

double success_prob_type2(const ProtocolParams& params) {
  params.validate();
  const double amp = params.collection() * params.detector_eff;
  const double base = amp * amp / 8.0;
  return params.pbs_variant ? 4.0 * base : base;
}

double expected_entangle_time(double success_prob, double attempt_time) {
  if (!(success_prob > 0.0 && success_prob <= 1.0)) {
    throw std::domain_error("success_prob must lie in (0, 1]");
  }
  if (!(attempt_time > 0.0)) {
    throw std::domain_error("attempt_time must be > 0");
  }
  return attempt_time / success_prob;
}

EntangleOutcome attempt_type1(const ProtocolParams& params, RandomStream& rng) {
  const double p = success_prob_type1(params);
  if (rng.uniform() >= p) return failed_attempt(params);

  EntangleOutcome out;
  out.success = true;
  out.attempts = 1;
  out.elapsed = params.attempt_time;
  // A heralded click is a double-decay contaminant with conditional weight
  // excite_prob; otherwise the link state carries the sampled path phase.
  if (rng.uniform() < params.excite_prob) {
    out.state = make_basis_state(2, 3);
    out.error_flagged = true;
    return out;
  }
  const double phase = rng.gaussian(params.phase_spread());
  out.state = type1_link_state(phase);
  return out;
}

EntangleOutcome attempt_type2(const ProtocolParams& params, RandomStream& rng) {
  const double p = success_prob_type2(params);
  if (rng.uniform() >= p) return failed_attempt(params);

  EntangleOutcome out;
  out.success = true;
  out.attempts = 1;
  out.elapsed = params.attempt_time;
  // Both photons travel both paths, so the path phase cancels identically and
  // the coincidence heralds the exact singlet-like state for any spread.
  out.state = bell_state(BellKind::PsiMinus01_10);
  return out;
}

EntangleOutcome run_until_success(ProtocolKind kind, const ProtocolParams& params,
                                  RandomStream& rng, std::uint64_t max_attempts) {
  if (max_attempts < 1) {
    throw std::invalid_argument("max_attempts must be >= 1");
  }
  params.validate();
  const double prob = (kind == ProtocolKind::TypeI) ? success_prob_type1(params)
                                                    : success_prob_type2(params);
  if (prob <= 0.0) {
    throw std::domain_error(
        "success probability is 0 for these parameters; the wait never ends");
  }
  for (std::uint64_t attempt = 1; attempt <= max_attempts; ++attempt) {
    EntangleOutcome out = (kind == ProtocolKind::TypeI)
                              ? attempt_type1(params, rng)
                              : attempt_type2(params, rng);
    if (out.success) {
      out.attempts = attempt;
      out.elapsed = static_cast<double>(attempt) * params.attempt_time;
      return out;
    }
  }
  EntangleOutcome out;
  out.success = false;
  out.attempts = max_attempts;
  out.elapsed = static_cast<double>(max_attempts) * params.attempt_time;
  return out;
}

double type1_fidelity_analytic(double phase_spread, double excite_prob) {
  if (!(phase_spread >= 0.0)) {
    throw std::domain_error("phase_spread must be >= 0");
  }
  if (!(excite_prob >= 0.0 && excite_prob <= 1.0)) {
    throw std::domain_error("excite_prob must lie in [0, 1]");
  }
  const double coherence = std::exp(-phase_spread * phase_spread / 2.0);
  return (1.0 - excite_prob) * (1.0 + coherence) / 2.0;
}

double detection_time(double lifetime, double collection, double detector_eff,
                      int photons) {
  if (!(lifetime > 0.0)) throw std::domain_error("lifetime must be > 0");
  if (!(collection > 0.0 && collection <= 1.0)) {
    throw std::domain_error("collection must lie in (0, 1]");
  }
  if (!(detector_eff > 0.0 && detector_eff <= 1.0)) {
    throw std::domain_error("detector_eff must lie in (0, 1]");
  }
  if (photons < 1) throw std::domain_error("photons must be >= 1");
  return static_cast<double>(photons) * lifetime / (collection * detector_eff);
}

double strong_coupling_ratio(double coupling, double cavity_decay,
                             double scatter_rate) {
  if (!(coupling > 0.0)) throw std::domain_error("coupling must be > 0");
  if (!(cavity_decay > 0.0)) throw std::domain_error("cavity_decay must be > 0");
  if (!(scatter_rate > 0.0)) throw std::domain_error("scatter_rate must be > 0");
  return coupling * coupling / (cavity_decay * scatter_rate);
}

}  // namespace ionlink
