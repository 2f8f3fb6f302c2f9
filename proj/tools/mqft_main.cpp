// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mqft/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitAborts = 4;

struct GlobalOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> workers;
};

void apply_overrides(mqft::ExperimentConfig& cfg, const GlobalOptions& opts) {
  if (opts.seed) {
    cfg.master_seed = *opts.seed;
    cfg.has_seed = true;
  }
  if (opts.out_dir) cfg.out_dir = *opts.out_dir;
  if (opts.workers) cfg.workers = *opts.workers;
  cfg.validate();
}

int execute(mqft::ExperimentConfig cfg) {
  const mqft::RunSummary summary = mqft::run_experiment(cfg);
  const auto files = mqft::emit_records(summary, cfg.out_dir);

  std::printf("mode %s finished in %.3f s\n",
              mqft::to_string(cfg.mode).c_str(), summary.wall_seconds);
  for (const auto& f : files) std::printf("wrote %s\n", f.c_str());
  if (!summary.trials.empty()) {
    std::printf("trials %zu, censored %zu, aborted %zu\n",
                summary.trials.size(), summary.censored_trials,
                summary.aborted_trials);
    if (summary.estimates) {
      std::printf("p_hat: inverse-mean %.6g, censoring-aware %.6g\n",
                  summary.estimates->inverse_mean,
                  summary.estimates->censoring_aware);
    }
  }
  if (summary.bounds) {
    std::printf("bounds: p_min %.6g, p_max %.6g\n", summary.bounds->p_min,
                summary.bounds->p_max);
  }
  if (summary.oracle) {
    std::printf("oracle-check n=%d: max TV %.3g (controlled gates), %.3g "
                "(classical control) -> %s\n",
                summary.oracle->n, summary.oracle->max_tv_qft_vs_serial,
                summary.oracle->max_tv_semiclassical_vs_serial,
                summary.oracle->pass ? "PASS" : "FAIL");
    if (!summary.oracle->pass) return kExitCheckFailed;
  }

  if (!summary.trials.empty() && summary.aborted_trials > 0) {
    const double fraction = static_cast<double>(summary.aborted_trials) /
                            static_cast<double>(summary.trials.size());
    if (fraction > cfg.abort_fraction_limit) {
      std::fprintf(stderr,
                   "error: %.1f%% of trials aborted on retry cap (limit "
                   "%.1f%%)\n",
                   100.0 * fraction, 100.0 * cfg.abort_fraction_limit);
      return kExitAborts;
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial measured-QFT experiment simulator"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Override the master seed");
  app.add_option("--out-dir", global.out_dir, "Override the output directory");
  app.add_option("--workers", global.workers, "Override the worker count");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  run->fallthrough();
  run->add_option("config", config_path, "Path to a key = value config file")
      ->required();

  int oracle_n = 5;
  int oracle_random = 20;
  auto* oracle = app.add_subcommand(
      "oracle-check", "Certify circuit-form equivalence at a given size");
  oracle->fallthrough();
  oracle->add_option("--n", oracle_n, "Qubit count (1..14)");
  oracle->add_option("--random", oracle_random,
                     "Number of random non-representable phases");

  std::size_t kmax = 0, nmax = 0, kmin = 0, nmin = 0, trials = 0;
  std::size_t bounds_qubits = 0;
  double alpha = 0.05;
  std::string convention = "cumulative";
  auto* bounds = app.add_subcommand(
      "bounds", "Error-probability range from extreme trial outcomes");
  bounds->fallthrough();
  bounds->add_option("--kmax", kmax, "Longest observed run")->required();
  bounds->add_option("--nmax", nmax, "Trials reaching kmax")->required();
  bounds->add_option("--kmin", kmin, "Shortest observed run")->required();
  bounds->add_option("--nmin", nmin, "Trials stopping at kmin")->required();
  bounds->add_option("--trials", trials, "Number of trials")->required();
  bounds->add_option("--n-qubits", bounds_qubits,
                     "Trial length (defaults to kmax)");
  bounds->add_option("--alpha", alpha, "Tail probability level");
  bounds->add_option("--convention", convention,
                     "p_min convention: cumulative | exact_at_k");

  CLI11_PARSE(app, argc, argv);

  try {
    mqft::ExperimentConfig cfg;
    if (run->parsed()) {
      cfg = mqft::ExperimentConfig::load(config_path);
    } else if (oracle->parsed()) {
      cfg.mode = mqft::Mode::oracle_check;
      cfg.oracle_n = oracle_n;
      cfg.oracle_random_phases = oracle_random;
      cfg.master_seed = 1;  // deterministic default for the random phases
      cfg.has_seed = true;
    } else {
      cfg.mode = mqft::Mode::bounds;
      cfg.kmax = kmax;
      cfg.nmax = nmax;
      cfg.kmin = kmin;
      cfg.nmin = nmin;
      cfg.n_trials = trials;
      cfg.n_qubits = bounds_qubits == 0 ? kmax : bounds_qubits;
      cfg.alpha = alpha;
      if (convention == "cumulative") {
        cfg.convention = mqft::PminConvention::cumulative;
      } else if (convention == "exact_at_k") {
        cfg.convention = mqft::PminConvention::exact_at_k;
      } else {
        throw mqft::ConfigError("unknown convention \"" + convention + "\"");
      }
    }
    apply_overrides(cfg, global);
    return execute(std::move(cfg));
  } catch (const mqft::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const mqft::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
}
