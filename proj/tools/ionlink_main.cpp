#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ionlink/runner.hpp"

namespace {

constexpr const char* kVersion = "ionlink 1.0.0";

constexpr const char* kUsage =
    "ionlink <command> [options]\n"
    "\n"
    "Commands:\n"
    "  verify-gate   check the measurement-based CNOT against direct application\n"
    "  entangle      Monte Carlo one entangling link, analytic columns alongside\n"
    "  repeater      simulate a segmented chain with entanglement swapping\n"
    "  sweep         repeat entangle or repeater along one parameter axis\n"
    "\n"
    "Run 'ionlink <command> --help' for the command's options.\n"
    "Units: seconds, radians, km, 1/km. Results go to stdout (or --output);\n"
    "logs go to stderr. Exit codes: 0 ok, 1 validation/threshold, 2 usage.\n";

constexpr const char* kFooter =
    "Config file: flat key=value lines mirroring the long flag names\n"
    "(e.g. 'eta-d=0.5'), '#' comments, UTF-8. Command-line flags override the\n"
    "file. Relative --output paths resolve against $IONLINK_OUT_DIR when set.\n"
    "Same seed, same config: byte-identical output.";

struct FlagValues {
  std::string protocol = "type1";
  std::string preset;
  std::string target = "entangle";
  std::string axis;
  std::string output;
  double axis_from = 0.0;
  double axis_to = 0.0;
  int axis_steps = 1;
  double pe = 0.0;
  double theta = 0.0;
  double pc = 0.0;
  double eta_d = 1.0;
  double enhancement = 1.0;
  double tc = 1.0;
  double te = 1.0;
  double delta_k = 0.0;
  double sigma_x = 0.0;
  double sigma_phi = 0.0;
  bool pbs = false;
  int k_photons = 1;
  int n_segments = 1;
  double l0 = 0.0;
  double alpha = 0.0;
  double alpha_l0 = 0.0;
  double ps = 0.0;
  double swap_fidelity = 1.0;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
  std::uint64_t max_attempts = 10000000;
  int random_states = 100;
  int threads = 1;
};

bool has_value(const CLI::App& app, const std::string& name) {
  const CLI::Option* opt = app.get_option_no_throw(name);
  return opt != nullptr && opt->count() > 0;
}

void add_common(CLI::App& app, FlagValues& v) {
  app.add_option("--seed", v.seed, "Master seed; per-trial substreams derive from it");
  app.add_option("--output", v.output, "Write the CSV table to this path instead of stdout");
  app.add_option("--threads", v.threads, "Worker threads for trial batches (results identical)")
      ->check(CLI::Range(1, 256));
  app.set_config("--config", "", "Flat key=value config file; flags take precedence");
  app.allow_config_extras(false);
  app.footer(kFooter);
}

void add_protocol_options(CLI::App& app, FlagValues& v) {
  app.add_option("--protocol", v.protocol, "Entangling link flavor")
      ->check(CLI::IsMember({"type1", "type2"}));
  app.add_option("--pe", v.pe, "Excitation probability of the emitting ion, [0,1]");
  auto* theta = app.add_option("--theta", v.theta,
                               "Collection cone half-angle, radians in [0, acos(-1/3)]");
  app.add_option("--pc", v.pc, "Collection probability override, bypasses --theta")
      ->excludes(theta);
  app.add_option("--eta-d", v.eta_d, "Detector efficiency, (0,1]");
  app.add_option("--enhancement", v.enhancement, "Collection gain factor, >= 1");
  app.add_option("--tc", v.tc, "Attempt repetition period, seconds");
  app.add_option("--te", v.te, "Emitter lifetime, seconds");
  auto* dk = app.add_option("--delta-k", v.delta_k,
                            "Wavevector difference of the two photon paths, 1/m");
  auto* sx = app.add_option("--sigma-x", v.sigma_x, "RMS ion position spread, m");
  app.add_option("--sigma-phi", v.sigma_phi,
                 "Path phase spread override, radians; bypasses --delta-k/--sigma-x")
      ->excludes(dk)
      ->excludes(sx);
  app.add_flag("--pbs", v.pbs, "Polarizing-splitter coincidence variant (x4 rate)");
  app.add_option("--k-photons", v.k_photons, "Detector clicks needed for state readout");
  app.add_option("--max-attempts", v.max_attempts, "Attempt cap per trial");
  app.add_option("--preset", v.preset, "Named parameter set")
      ->check(CLI::IsMember({"cd111"}));
}

void add_repeater_options(CLI::App& app, FlagValues& v) {
  app.add_option("--n", v.n_segments, "Number of chain segments");
  auto* l0 = app.add_option("--l0", v.l0, "Segment length, km");
  auto* alpha = app.add_option("--alpha", v.alpha, "Fiber attenuation, 1/km");
  app.add_option("--alpha-l0", v.alpha_l0,
                 "Per-segment attenuation-length product (sets --alpha with --l0 1)")
      ->excludes(l0)
      ->excludes(alpha);
  app.add_option("--ps", v.ps, "Per-attempt success probability of one station link");
  if (!app.get_option_no_throw("--tc"))
    app.add_option("--tc", v.tc, "Attempt repetition period, seconds");
  app.add_option("--swap-fidelity", v.swap_fidelity,
                 "Exploratory per-swap fidelity multiplier, [0,1]");
}

void apply_preset(const CLI::App& app, FlagValues& v, bool& pc_given) {
  if (v.preset != "cd111") return;
  if (!has_value(app, "--te")) v.te = 3e-9;
  if (!has_value(app, "--tc")) v.tc = 3e-9;
  if (!has_value(app, "--pe")) v.pe = 0.01;
  if (!has_value(app, "--eta-d")) v.eta_d = 0.01;
  if (!has_value(app, "--pc") && !has_value(app, "--theta")) {
    v.pc = 0.1;
    pc_given = true;
  }
}

ionlink::RunConfig build_config(const CLI::App& app, const FlagValues& v,
                                ionlink::Command command, bool pc_given,
                                bool sigma_phi_given, bool alpha_l0_given) {
  ionlink::RunConfig cfg;
  cfg.command = command;
  cfg.protocol = (v.protocol == "type2") ? ionlink::ProtocolKind::TypeII
                                         : ionlink::ProtocolKind::TypeI;
  cfg.trials = v.trials;
  cfg.seed = v.seed;
  cfg.max_attempts = v.max_attempts;
  cfg.random_states = v.random_states;
  cfg.threads = v.threads;
  cfg.output_path = v.output;

  ionlink::ProtocolParams& p = cfg.params;
  p.excite_prob = v.pe;
  p.half_angle = v.theta;
  if (pc_given) p.collection_override = v.pc;
  p.detector_eff = v.eta_d;
  p.collection_gain = v.enhancement;
  p.attempt_time = v.tc;
  p.lifetime = v.te;
  p.wavevector_diff = v.delta_k;
  p.position_spread = v.sigma_x;
  if (sigma_phi_given) p.phase_spread_override = v.sigma_phi;
  p.pbs_variant = v.pbs;
  p.photons_required = v.k_photons;

  ionlink::RepeaterConfig& r = cfg.repeater;
  r.n_segments = v.n_segments;
  if (alpha_l0_given) {
    r.attenuation = v.alpha_l0;
    r.segment_length = 1.0;
  } else {
    r.attenuation = v.alpha;
    r.segment_length = v.l0;
  }
  r.link.success_prob = v.ps;
  r.link.attempt_time = v.tc;
  r.swap_fidelity = v.swap_fidelity;

  if (command == ionlink::Command::Sweep) {
    ionlink::SweepAxis axis;
    axis.key = v.axis;
    axis.from = v.axis_from;
    axis.to = v.axis_to;
    axis.points = v.axis_steps;
    cfg.sweep = axis;
    cfg.sweep_target = (v.target == "repeater") ? ionlink::Command::Repeater
                                                : ionlink::Command::Entangle;
  }
  (void)app;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << kUsage;
    return 2;
  }
  const std::string command = argv[1];
  if (command == "-h" || command == "--help" || command == "help") {
    std::cout << kUsage;
    return 0;
  }
  if (command == "--version") {
    std::cout << kVersion << "\n";
    return 0;
  }

  ionlink::Command cmd;
  if (command == "verify-gate") {
    cmd = ionlink::Command::VerifyGate;
  } else if (command == "entangle") {
    cmd = ionlink::Command::Entangle;
  } else if (command == "repeater") {
    cmd = ionlink::Command::Repeater;
  } else if (command == "sweep") {
    cmd = ionlink::Command::Sweep;
  } else {
    std::cerr << "unknown command '" << command << "'\n\n" << kUsage;
    return 2;
  }

  FlagValues v;
  CLI::App app{std::string("ionlink ") + command};
  add_common(app, v);
  switch (cmd) {
    case ionlink::Command::VerifyGate:
      app.description("Check the measurement-based CNOT against direct application");
      app.add_option("--random", v.random_states,
                     "Number of random logic states to test beyond the basis set")
          ->check(CLI::Range(0, 1000000));
      break;
    case ionlink::Command::Entangle:
      app.description("Monte Carlo one entangling link and report empirical vs analytic");
      add_protocol_options(app, v);
      app.add_option("--trials", v.trials, "Repeat-until-success experiments to run");
      break;
    case ionlink::Command::Repeater:
      app.description("Simulate a segmented repeater chain with entanglement swapping");
      add_repeater_options(app, v);
      app.add_option("--trials", v.trials, "Independent chain deliveries to simulate");
      break;
    case ionlink::Command::Sweep:
      app.description("Repeat entangle or repeater along one parameter axis");
      add_protocol_options(app, v);
      add_repeater_options(app, v);
      app.add_option("--trials", v.trials, "Trials per grid point");
      app.add_option("--target", v.target, "Command repeated at each grid point")
          ->check(CLI::IsMember({"entangle", "repeater"}));
      app.add_option("--axis", v.axis, "Swept parameter key (a long flag name, e.g. pe)")
          ->required();
      app.add_option("--from", v.axis_from, "First axis value")->required();
      app.add_option("--to", v.axis_to, "Last axis value")->required();
      app.add_option("--steps", v.axis_steps, "Number of grid points")
          ->required()
          ->check(CLI::Range(1, 1000000));
      break;
  }

  std::vector<const char*> args;
  args.push_back(argv[0]);
  for (int i = 2; i < argc; ++i) args.push_back(argv[i]);
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  bool pc_given = has_value(app, "--pc");
  const bool sigma_phi_given = has_value(app, "--sigma-phi");
  const bool alpha_l0_given = has_value(app, "--alpha-l0");
  apply_preset(app, v, pc_given);
  const ionlink::RunConfig cfg =
      build_config(app, v, cmd, pc_given, sigma_phi_given, alpha_l0_given);
  return ionlink::run(cfg, std::cout, std::cerr);
}
