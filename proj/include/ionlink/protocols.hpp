#ifndef IONLINK_PROTOCOLS_HPP
#define IONLINK_PROTOCOLS_HPP

#include <cstdint>
#include <optional>

#include "ionlink/state.hpp"

namespace ionlink {

enum class ProtocolKind {
  TypeI,   // single-photon interference link
  TypeII,  // two-photon coincidence link
};

// Physical knobs of one entangling link. Units: seconds, radians, 1/m and m
// for the wavevector/position pair. attempt_time is the full repetition period
// of one attempt; lifetime is the emitter decay time bounding it from below.
struct ProtocolParams {
  double excite_prob = 0.0;                      // double-excitation weight, [0, 1]
  double half_angle = 0.0;                       // collection cone half-angle
  std::optional<double> collection_override;     // bypasses the solid-angle form
  double detector_eff = 1.0;                     // (0, 1]
  double collection_gain = 1.0;                  // cavity/mirror boost, >= 1
  double attempt_time = 1.0;                     // >= lifetime
  double lifetime = 1.0;                         // > 0
  double wavevector_diff = 0.0;                  // |k1 - k2| of the two paths
  double position_spread = 0.0;                  // rms ion displacement
  std::optional<double> phase_spread_override;   // direct sigma_phi
  bool pbs_variant = false;                      // polarizing splitter variant
  int photons_required = 1;                      // coincidence photon count

  // Effective photon collection probability including the gain; in [0, 1].
  double collection() const;
  // Path-phase spread: override, else sqrt(2) * wavevector_diff * position_spread.
  double phase_spread() const;
  // Throws std::invalid_argument naming the offending field. The zero edge of
  // excite_prob / collection is allowed so analytic queries can probe limits.
  void validate() const;
};

struct EntangleOutcome {
  bool success = false;
  std::uint64_t attempts = 0;             // >= 1, counts the successful attempt
  double elapsed = 0.0;                   // attempts * attempt_time, exactly
  std::optional<PureState> state;         // present iff success
  bool error_flagged = false;             // heralded-but-contaminated diagnostic
};

// Fraction of fluorescence photons captured by a cone of the given half-angle.
// Domain [0, acos(-1/3)], where the fraction reaches 1.
double collection_efficiency(double half_angle);

double success_prob_type1(const ProtocolParams& params);
double success_prob_type2(const ProtocolParams& params);

// Mean time to success for attempt period t and per-attempt probability p: t/p.
double expected_entangle_time(double success_prob, double attempt_time);

EntangleOutcome attempt_type1(const ProtocolParams& params, RandomStream& rng);
EntangleOutcome attempt_type2(const ProtocolParams& params, RandomStream& rng);

// Repeats single attempts until one succeeds or max_attempts is reached; the
// cap is reported as an unsuccessful outcome, not an error.
EntangleOutcome run_until_success(ProtocolKind kind, const ProtocolParams& params,
                                  RandomStream& rng, std::uint64_t max_attempts);

// Phase-noise-averaged fidelity of the heralded Type I state against the ideal
// link state, including the contaminant branch:
// (1 - excite_prob) * (1 + exp(-sigma^2 / 2)) / 2.
double type1_fidelity_analytic(double phase_spread, double excite_prob);

// Mean time to register `photons` detector clicks from an emitter of the given
// lifetime through collection * detector_eff.
double detection_time(double lifetime, double collection, double detector_eff,
                      int photons);

// Cavity figure of merit g^2 / (kappa * gamma); >> 1 is the strong regime.
double strong_coupling_ratio(double coupling, double cavity_decay,
                             double scatter_rate);

}  // namespace ionlink

#endif
