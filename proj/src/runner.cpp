#include "ionlink/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "ionlink/csv.hpp"
#include "ionlink/gadget.hpp"
#include "ionlink/stats.hpp"

namespace ionlink {
namespace {

constexpr double kVerifyThreshold = 1e-12;

const std::vector<std::string>& entangle_header() {
  static const std::vector<std::string> h = {
      "protocol",       "trials",        "seed",          "max_attempts",
      "excite_prob",    "collection",    "detector_eff",  "pbs",
      "phase_spread",   "attempt_time",  "success_prob",  "p_hat",
      "p_hat_se",       "successes",     "attempts_mean", "attempts_se",
      "attempts_expected", "time_mean",  "time_se",       "time_expected",
      "fidelity_mean",  "fidelity_se",   "fidelity_analytic",
      "flagged_frac",   "flagged_se",    "flagged_expected", "detect_time"};
  return h;
}

const std::vector<std::string>& repeater_header() {
  static const std::vector<std::string> h = {
      "n_segments", "segment_length", "attenuation",  "alpha_l0",
      "ps",         "attempt_time",   "p_segment",    "trials",
      "seed",       "swap_fidelity",  "time_mean",    "time_se",
      "time_analytic", "time_direct", "fidelity_mean", "fidelity_se",
      "fidelity_expected", "swaps_i", "swaps_x",      "swaps_z",
      "swaps_zx"};
  return h;
}

const std::vector<std::string>& verify_header() {
  static const std::vector<std::string> h = {"group", "states", "max_deviation",
                                             "threshold", "pass", "seed"};
  return h;
}

struct EntangleTrial {
  std::uint64_t attempts = 0;
  double fidelity = 0.0;
  bool success = false;
  bool flagged = false;
};

// Runs `trials` independent repeat-until-success experiments on per-trial
// substreams; any thread split yields the same per-trial records.
std::vector<EntangleTrial> collect_entangle_trials(const RunConfig& config) {
  std::vector<EntangleTrial> trials(config.trials);
  const PureState target = (config.protocol == ProtocolKind::TypeI)
                               ? bell_state(BellKind::PhiPlus01_10)
                               : bell_state(BellKind::PsiMinus01_10);
  auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t t = lo; t < hi; ++t) {
      RandomStream rng = RandomStream::substream(config.seed, t);
      EntangleOutcome out = run_until_success(config.protocol, config.params,
                                              rng, config.max_attempts);
      EntangleTrial& rec = trials[t];
      rec.attempts = out.attempts;
      rec.success = out.success;
      rec.flagged = out.error_flagged;
      if (out.success) rec.fidelity = fidelity(*out.state, target);
    }
  };
  const int threads = std::max(1, config.threads);
  if (threads == 1 || config.trials < 2) {
    worker(0, config.trials);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t block =
        (config.trials + threads - 1) / static_cast<std::uint64_t>(threads);
    for (int i = 0; i < threads; ++i) {
      const std::uint64_t lo = block * static_cast<std::uint64_t>(i);
      if (lo >= config.trials) break;
      const std::uint64_t hi = std::min(config.trials, lo + block);
      pool.emplace_back(worker, lo, hi);
    }
    for (std::thread& th : pool) th.join();
  }
  return trials;
}

ResultRow entangle_row(const RunConfig& config, std::uint64_t seed_label) {
  const ProtocolParams& p = config.params;
  const double p_analytic = (config.protocol == ProtocolKind::TypeI)
                                ? success_prob_type1(p)
                                : success_prob_type2(p);
  if (!(p_analytic > 0.0)) {
    throw std::invalid_argument(
        "success probability is 0 for these parameters (excite_prob, "
        "collection, detector_eff); nothing to sample");
  }
  if (config.trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }

  RunConfig local = config;
  local.seed = seed_label;
  const std::vector<EntangleTrial> trials = collect_entangle_trials(local);

  std::uint64_t total_attempts = 0;
  std::uint64_t successes = 0;
  std::uint64_t flagged = 0;
  RunningStats attempts_stats;
  RunningStats time_stats;
  RunningStats fidelity_stats;
  for (const EntangleTrial& rec : trials) {
    total_attempts += rec.attempts;
    attempts_stats.add(static_cast<double>(rec.attempts));
    time_stats.add(static_cast<double>(rec.attempts) * p.attempt_time);
    if (rec.success) {
      successes += 1;
      fidelity_stats.add(rec.fidelity);
      if (rec.flagged) flagged += 1;
    }
  }
  const double p_hat =
      static_cast<double>(successes) / static_cast<double>(total_attempts);
  const double flagged_frac =
      successes ? static_cast<double>(flagged) / static_cast<double>(successes)
                : 0.0;
  const double flagged_expected =
      (config.protocol == ProtocolKind::TypeI) ? p.excite_prob : 0.0;

  ResultRow row;
  row.set("protocol",
          std::string(config.protocol == ProtocolKind::TypeI ? "type1" : "type2"));
  row.set("trials", config.trials);
  row.set("seed", seed_label);
  row.set("max_attempts", config.max_attempts);
  row.set("excite_prob", p.excite_prob);
  row.set("collection", p.collection());
  row.set("detector_eff", p.detector_eff);
  row.set("pbs", p.pbs_variant ? 1 : 0);
  row.set("phase_spread", p.phase_spread());
  row.set("attempt_time", p.attempt_time);
  row.set("success_prob", p_analytic);
  row.set("p_hat", p_hat);
  row.set("p_hat_se", binomial_se(p_hat, total_attempts));
  row.set("successes", successes);
  row.set("attempts_mean", attempts_stats.mean);
  row.set("attempts_se", attempts_stats.sem());
  row.set("attempts_expected", 1.0 / p_analytic);
  row.set("time_mean", time_stats.mean);
  row.set("time_se", time_stats.sem());
  row.set("time_expected", expected_entangle_time(p_analytic, p.attempt_time));
  row.set("fidelity_mean", fidelity_stats.mean);
  row.set("fidelity_se", fidelity_stats.sem());
  row.set("fidelity_analytic",
          (config.protocol == ProtocolKind::TypeI)
              ? type1_fidelity_analytic(p.phase_spread(), p.excite_prob)
              : 1.0);
  row.set("flagged_frac", flagged_frac);
  row.set("flagged_se", binomial_se(flagged_frac, successes));
  row.set("flagged_expected", flagged_expected);
  row.set("detect_time", detection_time(p.lifetime, p.collection(),
                                        p.detector_eff, p.photons_required));
  return row;
}

ResultRow repeater_row(const RunConfig& config, std::uint64_t seed_label) {
  RepeaterConfig chain = config.repeater;
  chain.trials = config.trials;
  chain.seed = seed_label;
  chain.validate();

  const RepeaterResult result = simulate_chain(chain);
  RunningStats time_stats;
  for (const double t : result.per_trial_times) time_stats.add(t);

  ResultRow row;
  row.set("n_segments", chain.n_segments);
  row.set("segment_length", chain.segment_length);
  row.set("attenuation", chain.attenuation);
  row.set("alpha_l0", chain.attenuation * chain.segment_length);
  row.set("ps", chain.link.success_prob);
  row.set("attempt_time", chain.link.attempt_time);
  row.set("p_segment",
          segment_success_prob(chain.link.success_prob, chain.attenuation,
                               chain.segment_length));
  row.set("trials", chain.trials);
  row.set("seed", seed_label);
  row.set("swap_fidelity", chain.swap_fidelity);
  row.set("time_mean", result.mean_time);
  row.set("time_se", time_stats.sem());
  row.set("time_analytic", result.analytic_time);
  row.set("time_direct", result.direct_time);
  row.set("fidelity_mean", result.final_fidelity);
  row.set("fidelity_se", result.fidelity_se);
  row.set("fidelity_expected",
          std::pow(chain.swap_fidelity, chain.n_segments - 1));
  row.set("swaps_i", result.swap_outcomes[2]);   // (z=1, x=+): no fix
  row.set("swaps_x", result.swap_outcomes[0]);   // (z=0, x=+): flip
  row.set("swaps_z", result.swap_outcomes[3]);   // (z=1, x=-): phase
  row.set("swaps_zx", result.swap_outcomes[1]);  // (z=0, x=-): both
  return row;
}

PureState haar_random_state(int num_qubits, RandomStream& rng) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Complex> amps(dim);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double re = rng.gaussian(1.0);
    const double im = rng.gaussian(1.0);
    amps[i] = Complex{re, im};
    norm2 += std::norm(amps[i]);
  }
  const double scale = 1.0 / std::sqrt(norm2);
  for (Complex& a : amps) a *= scale;
  return PureState(num_qubits, std::move(amps));
}

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (config.random_states < 0) {
    throw std::invalid_argument("random state count must be >= 0");
  }
  double basis_max = 0.0;
  for (std::size_t idx = 0; idx < 4; ++idx) {
    basis_max = std::max(basis_max, verify_identity(make_basis_state(2, idx)));
  }
  double haar_max = 0.0;
  RandomStream rng(config.seed);
  for (int i = 0; i < config.random_states; ++i) {
    haar_max = std::max(haar_max, verify_identity(haar_random_state(2, rng)));
  }

  std::vector<ResultRow> rows;
  ResultRow basis_row;
  basis_row.set("group", std::string("basis"));
  basis_row.set("states", 4);
  basis_row.set("max_deviation", basis_max);
  basis_row.set("threshold", kVerifyThreshold);
  basis_row.set("pass", basis_max <= kVerifyThreshold ? 1 : 0);
  basis_row.set("seed", config.seed);
  rows.push_back(basis_row);
  ResultRow haar_row;
  haar_row.set("group", std::string("random"));
  haar_row.set("states", config.random_states);
  haar_row.set("max_deviation", haar_max);
  haar_row.set("threshold", kVerifyThreshold);
  haar_row.set("pass", haar_max <= kVerifyThreshold ? 1 : 0);
  haar_row.set("seed", config.seed);
  rows.push_back(haar_row);

  emit_csv(verify_header(), rows, out);
  const double overall = std::max(basis_max, haar_max);
  log << "verify-gate max deviation " << format_double(overall) << " over "
      << (4 + config.random_states) << " states\n";
  if (overall > kVerifyThreshold) {
    log << "error: deviation exceeds threshold "
        << format_double(kVerifyThreshold) << "\n";
    return 1;
  }
  return 0;
}

void apply_axis_value(RunConfig& config, const std::string& key, double value) {
  ProtocolParams& p = config.params;
  RepeaterConfig& r = config.repeater;
  if (key == "pe") {
    p.excite_prob = value;
  } else if (key == "theta") {
    p.half_angle = value;
    p.collection_override.reset();
  } else if (key == "pc") {
    p.collection_override = value;
  } else if (key == "eta-d") {
    p.detector_eff = value;
  } else if (key == "enhancement") {
    p.collection_gain = value;
  } else if (key == "tc") {
    p.attempt_time = value;
    r.link.attempt_time = value;
  } else if (key == "te") {
    p.lifetime = value;
  } else if (key == "delta-k") {
    p.wavevector_diff = value;
    p.phase_spread_override.reset();
  } else if (key == "sigma-x") {
    p.position_spread = value;
    p.phase_spread_override.reset();
  } else if (key == "sigma-phi") {
    p.phase_spread_override = value;
  } else if (key == "k-photons") {
    p.photons_required = static_cast<int>(std::llround(value));
  } else if (key == "n") {
    r.n_segments = static_cast<int>(std::llround(value));
  } else if (key == "l0") {
    r.segment_length = value;
  } else if (key == "alpha") {
    r.attenuation = value;
  } else if (key == "alpha-l0") {
    r.attenuation = value;
    r.segment_length = 1.0;
  } else if (key == "ps") {
    r.link.success_prob = value;
  } else if (key == "swap-fidelity") {
    r.swap_fidelity = value;
  } else {
    throw std::invalid_argument("unknown sweep axis '" + key + "'");
  }
}

int run_sweep(const RunConfig& config, std::ostream& out, std::ostream& log) {
  if (!config.sweep) {
    throw std::invalid_argument("sweep requires an axis");
  }
  const SweepAxis& axis = config.sweep.value();
  if (axis.points < 1) {
    throw std::invalid_argument("sweep points must be >= 1");
  }
  if (config.sweep_target != Command::Entangle &&
      config.sweep_target != Command::Repeater) {
    throw std::invalid_argument("sweep target must be entangle or repeater");
  }

  std::vector<double> values(axis.points);
  for (int i = 0; i < axis.points; ++i) {
    values[i] = (axis.points == 1)
                    ? axis.from
                    : axis.from + (axis.to - axis.from) *
                                      (static_cast<double>(i) /
                                       static_cast<double>(axis.points - 1));
  }

  // Validate every grid point before simulating any of them.
  std::vector<RunConfig> points;
  points.reserve(values.size());
  for (const double v : values) {
    RunConfig point = config;
    point.command = config.sweep_target;
    point.sweep.reset();
    apply_axis_value(point, axis.key, v);
    if (config.sweep_target == Command::Entangle) {
      point.params.validate();
    } else {
      RepeaterConfig chain = point.repeater;
      chain.trials = point.trials;
      chain.validate();
    }
    points.push_back(std::move(point));
  }

  std::vector<std::string> header = {"sweep_key", "sweep_value"};
  const std::vector<std::string>& inner =
      (config.sweep_target == Command::Entangle) ? entangle_header()
                                                 : repeater_header();
  header.insert(header.end(), inner.begin(), inner.end());

  std::vector<ResultRow> rows;
  rows.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::uint64_t point_seed = RandomStream::derive_seed(config.seed, i);
    ResultRow inner_row = (config.sweep_target == Command::Entangle)
                              ? entangle_row(points[i], point_seed)
                              : repeater_row(points[i], point_seed);
    ResultRow row;
    row.set("sweep_key", axis.key);
    row.set("sweep_value", values[i]);
    for (const auto& [key, value] : inner_row.cells()) row.set(key, value);
    rows.push_back(std::move(row));
  }
  emit_csv(header, rows, out);
  log << "sweep wrote " << rows.size() << " rows over " << axis.key << "\n";
  return 0;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& log) {
  switch (config.command) {
    case Command::VerifyGate:
      return run_verify(config, out, log);
    case Command::Entangle: {
      config.params.validate();
      std::vector<ResultRow> rows = {entangle_row(config, config.seed)};
      emit_csv(entangle_header(), rows, out);
      log << "entangle wrote 1 row (" << config.trials << " trials)\n";
      return 0;
    }
    case Command::Repeater: {
      std::vector<ResultRow> rows = {repeater_row(config, config.seed)};
      emit_csv(repeater_header(), rows, out);
      log << "repeater wrote 1 row (" << config.trials << " trials)\n";
      return 0;
    }
    case Command::Sweep:
      return run_sweep(config, out, log);
  }
  throw std::invalid_argument("unknown command");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
  try {
    if (config.output_path.empty()) {
      return dispatch(config, out, log);
    }
    std::filesystem::path path(config.output_path);
    if (path.is_relative()) {
      if (const char* dir = std::getenv("IONLINK_OUT_DIR")) {
        path = std::filesystem::path(dir) / path;
      }
    }
    // Buffer the table first so a failed run never leaves a partial file.
    std::ostringstream buffer;
    const int status = dispatch(config, buffer, log);
    if (status != 0) return status;
    std::ofstream file(path);
    if (!file) {
      log << "error: cannot open output path " << path.string() << "\n";
      return 1;
    }
    file << buffer.str();
    file.close();
    if (!file) {
      log << "error: write failed for output path " << path.string() << "\n";
      return 1;
    }
    log << "wrote " << path.string() << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::length_error& e) {
    log << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ionlink
