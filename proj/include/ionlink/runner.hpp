#ifndef IONLINK_RUNNER_HPP
#define IONLINK_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "ionlink/protocols.hpp"
#include "ionlink/repeater.hpp"

namespace ionlink {

enum class Command { VerifyGate, Entangle, Repeater, Sweep };

// Inclusive linear grid over one named parameter (keys mirror the CLI flags).
struct SweepAxis {
  std::string key;
  double from = 0.0;
  double to = 0.0;
  int points = 1;
};

struct RunConfig {
  Command command = Command::Entangle;
  ProtocolKind protocol = ProtocolKind::TypeI;
  ProtocolParams params;
  RepeaterConfig repeater;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t max_attempts = 10000000;
  int random_states = 100;  // verify-gate sample count
  int threads = 1;
  std::optional<SweepAxis> sweep;
  Command sweep_target = Command::Entangle;
  std::string output_path;  // empty -> the stream handed to run()
};

// Validates, simulates, and writes one CSV table. Results go to `out` (or to
// output_path when set, resolved against the IONLINK_OUT_DIR environment
// variable for relative paths); progress lines go to `log`. Returns 0 on
// success, 1 on validation/threshold/output failures.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace ionlink

#endif
