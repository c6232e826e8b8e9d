// Copyright 2026 The qsprep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.  Thin argument plumbing only: every algorithm
// lives in the headers.  Exit codes: 0 success, 1 finished but a requested
// fidelity was not reached, 2 bad input, 3 internal-consistency failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsprep/adapt.hpp"
#include "qsprep/bench.hpp"
#include "qsprep/circuit_io.hpp"
#include "qsprep/cvoqram.hpp"
#include "qsprep/errors.hpp"
#include "qsprep/ground_state.hpp"
#include "qsprep/hamiltonian.hpp"
#include "qsprep/io_util.hpp"
#include "qsprep/pools.hpp"
#include "qsprep/sparse_state.hpp"
#include "qsprep/targets.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUnreached = 1;
constexpr int kInputFailure = 2;
constexpr int kInternalFailure = 3;

constexpr double kVerifySlack = 1e-8;  // cvoqram verification fidelity floor is 1 - this

using nlohmann::ordered_json;

// The primary artifact goes to --out (atomic write) or stdout; human summary
// lines go to the other stream so piping the artifact stays clean.
void emit_artifact(const std::string &content, const std::string &out_path) {
  if (out_path.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
  } else {
    qsprep::write_file_atomic(out_path, content);
  }
}

void summary_line(const std::string &out_path, const std::string &line) {
  std::FILE *stream = out_path.empty() ? stderr : stdout;
  std::fwrite(line.data(), 1, line.size(), stream);
  std::fputc('\n', stream);
}

ordered_json load_config(const std::string &path) {
  const auto j = ordered_json::parse(qsprep::read_file(path), nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) {
    throw qsprep::input_error("config must be a JSON object: " + path);
  }
  return j;
}

/// Explicit command-line flags win; otherwise a config key fills the slot.
template <typename T>
void config_fallback(const CLI::App *cmd, const std::string &flag, const ordered_json &cfg,
                     const char *key, T &slot) {
  if (cmd->count(flag) == 0 && cfg.contains(key)) {
    try {
      slot = cfg.at(key).get<T>();
    } catch (const nlohmann::json::exception &) {
      throw qsprep::input_error(std::string("config key \"") + key + "\" has the wrong type");
    }
  }
}

qsprep::pools::Pool build_pool(const std::string &kind, int n_qubits, bool restrict_sz) {
  if (kind == "qeb") return qsprep::pools::build_qeb_pool(n_qubits, restrict_sz);
  if (kind == "qubit") {
    if (restrict_sz) {
      throw qsprep::input_error("--restrict-sz applies only to the qeb pool");
    }
    return qsprep::pools::build_qubit_pool(n_qubits);
  }
  throw qsprep::input_error("unknown pool kind \"" + kind + "\" (expected qeb or qubit)");
}

std::string json_text(const ordered_json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// ground-state
// ---------------------------------------------------------------------------

struct GroundStateArgs {
  std::string hamiltonian_path;
  std::string out;
  double cutoff = 1e-12;
};

int run_ground_state(const GroundStateArgs &args) {
  const qsprep::PauliSumHamiltonian h = qsprep::load_hamiltonian(args.hamiltonian_path);
  const qsprep::GroundStateResult result = qsprep::ground_state(h, args.cutoff);
  emit_artifact(json_text(qsprep::sparse_to_json(result.state)), args.out);
  summary_line(args.out, "energy " + qsprep::format_double(result.energy) + " residual " +
                             qsprep::format_double(result.residual) + " entries " +
                             std::to_string(result.state.entries.size()) + " method " +
                             result.method);
  return kOk;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthArgs {
  int n_qubits = 0;
  int patterns = 0;
  int particles = 0;
  double sz = 0.0;
  double decay = 0.85;
  std::uint64_t seed = 1;
  bool complex_phases = false;
  std::string out;
};

int run_synth(const SynthArgs &args) {
  const qsprep::SparseState state =
      qsprep::synthetic_target(args.n_qubits, args.patterns, args.particles, args.sz, args.decay,
                               args.seed, args.complex_phases);
  emit_artifact(json_text(qsprep::sparse_to_json(state)), args.out);
  summary_line(args.out, "entries " + std::to_string(state.entries.size()) + " n_qubits " +
                             std::to_string(state.n_qubits));
  return kOk;
}

// ---------------------------------------------------------------------------
// truncate
// ---------------------------------------------------------------------------

struct TruncateArgs {
  std::string state_path;
  std::string out;
  std::string format = "csv";
  std::int64_t keep = 0;
  double threshold = 0.0;
  std::vector<std::int64_t> grid;
};

int run_truncate(const TruncateArgs &args, const CLI::App *cmd) {
  const int modes = (cmd->count("--keep") > 0) + (cmd->count("--threshold") > 0) +
                    (cmd->count("--grid") > 0);
  if (modes != 1) {
    throw qsprep::input_error("pass exactly one of --keep, --threshold, --grid");
  }
  qsprep::SparseState target = qsprep::load_sparse_state(args.state_path);
  qsprep::validate_sparse_state(target);

  if (cmd->count("--grid") > 0) {
    std::vector<std::pair<std::int64_t, double>> rows;
    for (std::int64_t keep : args.grid) {
      if (keep < 1) throw qsprep::input_error("--grid entries must be >= 1");
      rows.emplace_back(keep,
                        qsprep::truncate_keep(target, static_cast<size_t>(keep)).fidelity_vs_original);
    }
    if (args.format == "json") {
      ordered_json j = ordered_json::array();
      for (const auto &[keep, fidelity] : rows) {
        j.push_back(ordered_json{{"keep", keep}, {"fidelity", fidelity}});
      }
      emit_artifact(json_text(j), args.out);
    } else {
      std::string csv = "# qsprep-truncate-v1\nkeep,fidelity\n";
      for (const auto &[keep, fidelity] : rows) {
        csv += std::to_string(keep) + "," + qsprep::format_double(fidelity) + "\n";
      }
      emit_artifact(csv, args.out);
    }
    return kOk;
  }

  const qsprep::TruncationResult result =
      cmd->count("--keep") > 0
          ? qsprep::truncate_keep(target, static_cast<size_t>(args.keep))
          : qsprep::truncate_threshold(target, args.threshold);
  emit_artifact(json_text(qsprep::sparse_to_json(result.state)), args.out);
  summary_line(args.out, "kept " + std::to_string(result.state.entries.size()) + " fidelity " +
                             qsprep::format_double(result.fidelity_vs_original));
  return kOk;
}

// ---------------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string state_path;
  std::string out;
  std::string format = "csv";
};

int run_spectrum(const SpectrumArgs &args) {
  qsprep::SparseState target = qsprep::load_sparse_state(args.state_path);
  qsprep::validate_sparse_state(target);
  const auto rows = qsprep::spectrum(target);
  if (args.format == "json") {
    ordered_json j = ordered_json::array();
    for (const auto &row : rows) {
      j.push_back(ordered_json{{"rank", row.rank}, {"abs_c", row.abs_c},
                               {"cum_weight", row.cum_weight}});
    }
    emit_artifact(json_text(j), args.out);
  } else {
    emit_artifact("# qsprep-spectrum-v1\n" + qsprep::spectrum_to_csv(rows), args.out);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// cvoqram
// ---------------------------------------------------------------------------

struct CvoqramArgs {
  std::string state_path;
  std::string out;           // report JSON
  std::string circuit_path;  // optional gate-list JSON
};

int run_cvoqram(const CvoqramArgs &args) {
  qsprep::SparseState target = qsprep::load_sparse_state(args.state_path);
  qsprep::validate_sparse_state(target);
  std::vector<qsprep::cvoqram::Pattern> patterns;
  patterns.reserve(target.entries.size());
  for (const auto &e : target.entries) patterns.push_back({e.pattern, e.amplitude});

  const qsprep::cvoqram::LoadPlan plan = qsprep::cvoqram::preprocess(
      target.n_qubits, std::move(patterns), qsprep::cvoqram::PreprocessOptions{});
  const qsprep::cvoqram::CompiledCircuit compiled = qsprep::cvoqram::compile(plan);
  if (!args.circuit_path.empty()) {
    qsprep::save_circuit_json(compiled.circuit, args.circuit_path);
  }

  const qsprep::cvoqram::InstrumentedRun run = qsprep::cvoqram::run_instrumented(plan);
  const qsprep::cvoqram::ProjectedRegister projected =
      qsprep::cvoqram::project_register(run.final_state);
  const double achieved = qsprep::fidelity(qsprep::to_state_vector(target),
                                           projected.register_state);

  std::map<int, long long> mu;
  for (const auto &step : plan.steps) {
    mu[static_cast<int>(step.ones.size())] += 1;
  }
  ordered_json histogram = ordered_json::object();
  for (const auto &[weight, count] : mu) histogram[std::to_string(weight)] = count;

  const qsprep::GateCounts counts = qsprep::count_gates(compiled.circuit);
  ordered_json report;
  report["n_qubits"] = target.n_qubits;
  report["pattern_count"] = plan.steps.size();
  report["formula_cnot_count"] = qsprep::cvoqram::cnot_count(plan);
  report["mu_histogram"] = histogram;
  report["gate_counts"] = ordered_json{{"cnot", counts.cnot},
                                       {"single_qubit", counts.single_qubit},
                                       {"mcu_unexpanded", counts.mcu_unexpanded}};
  report["verification"] = ordered_json{{"fidelity", achieved},
                                        {"ancilla_one_weight", run.ancilla_one_weight},
                                        {"max_invariant_deviation", run.max_invariant_deviation}};
  emit_artifact(json_text(report), args.out);
  summary_line(args.out, "fidelity " + qsprep::format_double(achieved) + " formula_cnots " +
                             std::to_string(qsprep::cvoqram::cnot_count(plan)));

  if (achieved < 1.0 - kVerifySlack) {
    std::fprintf(stderr, "verification failed: fidelity %s below 1 - 1e-8\n",
                 qsprep::format_double(achieved).c_str());
    return kInternalFailure;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// adapt
// ---------------------------------------------------------------------------

struct AdaptArgs {
  std::string state_path;
  std::string config_path;
  std::string out;         // ansatz JSON
  std::string trace_path;  // iteration CSV
  std::string resume_path;
  std::string pool_kind = "qeb";
  bool restrict_sz = false;
  std::string initial_pattern;
  double target_fidelity = 1.0 - 1e-6;
  int max_operators = 60;
  double screen_tolerance = 1e-9;
  std::uint64_t seed = 1;
};

int run_adapt(AdaptArgs args, const CLI::App *cmd) {
  if (!args.config_path.empty()) {
    const ordered_json cfg = load_config(args.config_path);
    config_fallback(cmd, "target", cfg, "target", args.state_path);
    config_fallback(cmd, "--pool", cfg, "pool", args.pool_kind);
    config_fallback(cmd, "--restrict-sz", cfg, "restrict_sz", args.restrict_sz);
    config_fallback(cmd, "--initial", cfg, "initial_pattern", args.initial_pattern);
    config_fallback(cmd, "--target-fidelity", cfg, "target_fidelity", args.target_fidelity);
    config_fallback(cmd, "--max-operators", cfg, "max_operators", args.max_operators);
    config_fallback(cmd, "--screen-tolerance", cfg, "screen_tolerance", args.screen_tolerance);
    config_fallback(cmd, "--seed", cfg, "seed", args.seed);
    config_fallback(cmd, "--out", cfg, "out", args.out);
    config_fallback(cmd, "--trace", cfg, "trace_out", args.trace_path);
    config_fallback(cmd, "--resume", cfg, "resume", args.resume_path);
  }
  if (args.state_path.empty()) {
    throw qsprep::input_error("adapt needs a target state (argument or config \"target\")");
  }

  qsprep::SparseState target = qsprep::load_sparse_state(args.state_path);
  qsprep::validate_sparse_state(target);
  const qsprep::StateVector target_vec = qsprep::to_state_vector(target);
  const qsprep::pools::Pool pool =
      build_pool(args.pool_kind, target.n_qubits, args.restrict_sz);

  std::vector<qsprep::adapt::AnsatzElement> resume;
  if (!args.resume_path.empty()) {
    const auto saved = ordered_json::parse(qsprep::read_file(args.resume_path), nullptr,
                                           /*allow_exceptions=*/false);
    if (saved.is_discarded()) {
      throw qsprep::input_error("malformed ansatz JSON in " + args.resume_path);
    }
    resume = qsprep::adapt::ansatz_from_json(pool, saved);
    if (args.initial_pattern.empty() && saved.contains("initial_pattern")) {
      args.initial_pattern = saved.at("initial_pattern").get<std::string>();
    }
  }
  if (args.initial_pattern.empty()) {
    args.initial_pattern = qsprep::adapt::dominant_pattern(target_vec);
  }

  qsprep::adapt::AdaptOptions options;
  options.target_fidelity = args.target_fidelity;
  options.max_operators = args.max_operators;
  options.screen_tolerance = args.screen_tolerance;
  options.seed = args.seed;

  const qsprep::adapt::AdaptResult result =
      qsprep::adapt::run(pool, target_vec, qsprep::basis_state(target.n_qubits, args.initial_pattern),
                         options, std::move(resume));

  if (!args.trace_path.empty()) {
    qsprep::write_file_atomic(args.trace_path,
                              "# qsprep-adapt-trace-v1\n" + qsprep::adapt::trace_to_csv(result.trace));
  }
  emit_artifact(json_text(qsprep::adapt::ansatz_to_json(pool, result, args.initial_pattern)),
                args.out);
  summary_line(args.out, "fidelity " + qsprep::format_double(result.fidelity) + " operators " +
                             std::to_string(result.ansatz.size()) + " stop " +
                             qsprep::adapt::to_string(result.stop_reason));
  return result.fidelity >= args.target_fidelity ? kOk : kUnreached;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
  std::string state_path;
  std::string config_path;
  std::string out;          // frontier CSV
  std::string trace_path;   // adapt trace CSV
  std::string ansatz_path;  // adapt ansatz JSON
  std::vector<double> grid = {0.5, 0.8, 0.9, 0.95, 0.99};
  std::string pool_kind = "qeb";
  bool restrict_sz = false;
  std::string initial_pattern;
  int max_operators = 60;
  double screen_tolerance = 1e-9;
  std::uint64_t seed = 1;
};

int run_bench(BenchArgs args, const CLI::App *cmd) {
  if (!args.config_path.empty()) {
    const ordered_json cfg = load_config(args.config_path);
    config_fallback(cmd, "target", cfg, "target", args.state_path);
    config_fallback(cmd, "--grid", cfg, "grid", args.grid);
    config_fallback(cmd, "--pool", cfg, "pool", args.pool_kind);
    config_fallback(cmd, "--restrict-sz", cfg, "restrict_sz", args.restrict_sz);
    config_fallback(cmd, "--initial", cfg, "initial_pattern", args.initial_pattern);
    config_fallback(cmd, "--max-operators", cfg, "max_operators", args.max_operators);
    config_fallback(cmd, "--screen-tolerance", cfg, "screen_tolerance", args.screen_tolerance);
    config_fallback(cmd, "--seed", cfg, "seed", args.seed);
    config_fallback(cmd, "--out", cfg, "out", args.out);
    config_fallback(cmd, "--trace", cfg, "trace_out", args.trace_path);
    config_fallback(cmd, "--ansatz", cfg, "ansatz_out", args.ansatz_path);
  }
  if (args.state_path.empty()) {
    throw qsprep::input_error("bench needs a target state (argument or config \"target\")");
  }

  qsprep::SparseState target = qsprep::load_sparse_state(args.state_path);
  qsprep::validate_sparse_state(target);
  const qsprep::StateVector target_vec = qsprep::to_state_vector(target);
  const qsprep::pools::Pool pool =
      build_pool(args.pool_kind, target.n_qubits, args.restrict_sz);
  if (args.initial_pattern.empty()) {
    args.initial_pattern = qsprep::adapt::dominant_pattern(target_vec);
  }

  qsprep::adapt::AdaptOptions options;
  options.max_operators = args.max_operators;
  options.screen_tolerance = args.screen_tolerance;
  options.seed = args.seed;

  const qsprep::bench::BenchResult result =
      qsprep::bench::run(pool, target, qsprep::basis_state(target.n_qubits, args.initial_pattern),
                         args.grid, options);

  if (!args.trace_path.empty()) {
    qsprep::write_file_atomic(
        args.trace_path,
        "# qsprep-adapt-trace-v1\n" + qsprep::adapt::trace_to_csv(result.adapt_result.trace));
  }
  if (!args.ansatz_path.empty()) {
    qsprep::write_file_atomic(
        args.ansatz_path,
        json_text(qsprep::adapt::ansatz_to_json(pool, result.adapt_result, args.initial_pattern)));
  }
  emit_artifact("# qsprep-bench-v1\n" + qsprep::bench::frontier_to_csv(result.rows), args.out);
  summary_line(args.out,
               std::string("grid points ") + std::to_string(args.grid.size()) + " all_reached " +
                   (result.all_reached ? "true" : "false"));
  return result.all_reached ? kOk : kUnreached;
}

// ---------------------------------------------------------------------------
// esp-bound
// ---------------------------------------------------------------------------

struct EspArgs {
  int orbitals = 0;
  int alpha = 0;
  int beta = 0;
  std::string out;
  std::string format = "text";
};

int run_esp(const EspArgs &args) {
  const std::uint64_t bound = qsprep::esp_cnot_bound(args.orbitals, args.alpha, args.beta);
  if (args.format == "json") {
    emit_artifact(json_text(ordered_json{{"orbitals", args.orbitals},
                                         {"alpha", args.alpha},
                                         {"beta", args.beta},
                                         {"cnot_bound", bound}}),
                  args.out);
  } else if (args.format == "csv") {
    emit_artifact("# qsprep-esp-bound-v1\norbitals,alpha,beta,cnot_bound\n" +
                      std::to_string(args.orbitals) + "," + std::to_string(args.alpha) + "," +
                      std::to_string(args.beta) + "," + std::to_string(bound) + "\n",
                  args.out);
  } else {
    emit_artifact(std::to_string(bound) + "\n", args.out);
  }
  return kOk;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Sparse quantum state preparation: exact loading, adaptive ansatz, cost frontiers"};
  app.require_subcommand(1);

  GroundStateArgs gs;
  CLI::App *gs_cmd = app.add_subcommand("ground-state", "Lowest eigenstate of a Pauli-sum file");
  gs_cmd->add_option("hamiltonian", gs.hamiltonian_path, "Hamiltonian text file")->required();
  gs_cmd->add_option("--cutoff", gs.cutoff, "Drop amplitudes below this magnitude");
  gs_cmd->add_option("--out", gs.out, "Write the state JSON here instead of stdout");

  SynthArgs sy;
  CLI::App *sy_cmd = app.add_subcommand("synth", "Seeded correlated sparse target state");
  sy_cmd->add_option("--n", sy.n_qubits, "Register width (even)")->required();
  sy_cmd->add_option("--patterns", sy.patterns, "Number of determinants")->required();
  sy_cmd->add_option("--particles", sy.particles, "Particle-number sector")->required();
  sy_cmd->add_option("--sz", sy.sz, "Spin-projection sector");
  sy_cmd->add_option("--decay", sy.decay, "Amplitude decay ratio in (0,1)");
  sy_cmd->add_option("--seed", sy.seed, "RNG seed");
  sy_cmd->add_flag("--complex-phases", sy.complex_phases, "Random U(1) phases instead of signs");
  sy_cmd->add_option("--out", sy.out, "Write the state JSON here instead of stdout");

  TruncateArgs tr;
  CLI::App *tr_cmd = app.add_subcommand("truncate", "Keep the largest-amplitude entries");
  tr_cmd->add_option("state", tr.state_path, "Sparse state file")->required();
  tr_cmd->add_option("--keep", tr.keep, "Keep this many entries");
  tr_cmd->add_option("--threshold", tr.threshold, "Keep entries with |amplitude| >= threshold");
  tr_cmd->add_option("--grid", tr.grid, "Keep-counts to tabulate as CSV")->delimiter(',');
  tr_cmd->add_option("--format", tr.format, "Grid output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  tr_cmd->add_option("--out", tr.out, "Output path (state JSON or grid CSV)");

  SpectrumArgs sp;
  CLI::App *sp_cmd = app.add_subcommand("spectrum", "Sorted amplitude magnitudes and weights");
  sp_cmd->add_option("state", sp.state_path, "Sparse state file")->required();
  sp_cmd->add_option("--format", sp.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sp_cmd->add_option("--out", sp.out, "Output path");

  CvoqramArgs cv;
  CLI::App *cv_cmd = app.add_subcommand("cvoqram", "Compile and verify the exact loader circuit");
  cv_cmd->add_option("state", cv.state_path, "Sparse state file")->required();
  cv_cmd->add_option("--circuit", cv.circuit_path, "Write the gate list JSON here");
  cv_cmd->add_option("--out", cv.out, "Write the report JSON here instead of stdout");

  AdaptArgs ad;
  CLI::App *ad_cmd = app.add_subcommand("adapt", "Grow an adaptive overlap ansatz for a target");
  ad_cmd->add_option("target", ad.state_path, "Sparse state file");
  ad_cmd->add_option("--config", ad.config_path, "JSON config file");
  ad_cmd->add_option("--pool", ad.pool_kind, "Operator pool: qeb or qubit");
  ad_cmd->add_flag("--restrict-sz", ad.restrict_sz, "Keep only spin-preserving excitations");
  ad_cmd->add_option("--initial", ad.initial_pattern, "Starting basis pattern");
  ad_cmd->add_option("--target-fidelity", ad.target_fidelity, "Stop once reached");
  ad_cmd->add_option("--max-operators", ad.max_operators, "Ansatz size cap");
  ad_cmd->add_option("--screen-tolerance", ad.screen_tolerance, "Stall threshold on the screen");
  ad_cmd->add_option("--seed", ad.seed, "RNG seed for optimizer restarts");
  ad_cmd->add_option("--resume", ad.resume_path, "Continue from a saved ansatz JSON");
  ad_cmd->add_option("--trace", ad.trace_path, "Write the per-iteration CSV here");
  ad_cmd->add_option("--out", ad.out, "Write the ansatz JSON here instead of stdout");

  BenchArgs be;
  CLI::App *be_cmd = app.add_subcommand("bench", "Fidelity-vs-gate-count frontier for both routes");
  be_cmd->add_option("target", be.state_path, "Sparse state file");
  be_cmd->add_option("--config", be.config_path, "JSON config file");
  be_cmd->add_option("--grid", be.grid, "Fidelity grid, strictly increasing in (0,1]")
      ->delimiter(',');
  be_cmd->add_option("--pool", be.pool_kind, "Operator pool: qeb or qubit");
  be_cmd->add_flag("--restrict-sz", be.restrict_sz, "Keep only spin-preserving excitations");
  be_cmd->add_option("--initial", be.initial_pattern, "Starting basis pattern");
  be_cmd->add_option("--max-operators", be.max_operators, "Ansatz size cap");
  be_cmd->add_option("--screen-tolerance", be.screen_tolerance, "Stall threshold on the screen");
  be_cmd->add_option("--seed", be.seed, "RNG seed for optimizer restarts");
  be_cmd->add_option("--trace", be.trace_path, "Write the adaptive run's trace CSV here");
  be_cmd->add_option("--ansatz", be.ansatz_path, "Write the adaptive run's ansatz JSON here");
  be_cmd->add_option("--out", be.out, "Write the frontier CSV here instead of stdout");

  EspArgs esp;
  CLI::App *esp_cmd = app.add_subcommand("esp-bound", "Entangled-subspace CNOT cost bound");
  esp_cmd->add_option("--orbitals", esp.orbitals, "Spatial orbitals")->required();
  esp_cmd->add_option("--alpha", esp.alpha, "Alpha occupation")->required();
  esp_cmd->add_option("--beta", esp.beta, "Beta occupation")->required();
  esp_cmd->add_option("--format", esp.format, "text, csv, or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  esp_cmd->add_option("--out", esp.out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInputFailure;
  }

  try {
    if (app.got_subcommand(gs_cmd)) return run_ground_state(gs);
    if (app.got_subcommand(sy_cmd)) return run_synth(sy);
    if (app.got_subcommand(tr_cmd)) return run_truncate(tr, tr_cmd);
    if (app.got_subcommand(sp_cmd)) return run_spectrum(sp);
    if (app.got_subcommand(cv_cmd)) return run_cvoqram(cv);
    if (app.got_subcommand(ad_cmd)) return run_adapt(ad, ad_cmd);
    if (app.got_subcommand(be_cmd)) return run_bench(be, be_cmd);
    if (app.got_subcommand(esp_cmd)) return run_esp(esp);
  } catch (const qsprep::input_error &e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kInputFailure;
  } catch (const qsprep::internal_error &e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternalFailure;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return kInternalFailure;
  }
  return kInputFailure;  // unreachable with require_subcommand(1)
}
