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

#ifndef MQFT_EXPERIMENT_HPP_
#define MQFT_EXPERIMENT_HPP_

#include <optional>
#include <string>
#include <vector>

#include "mqft/census.hpp"
#include "mqft/config.hpp"
#include "mqft/fringe.hpp"
#include "mqft/stats.hpp"

namespace mqft {

/// Per-trial record condensed for reporting.
struct TrialBrief {
  std::size_t run_length = 0;
  bool censored = false;
  bool aborted = false;
  std::size_t abort_step = 0;
  std::uint64_t retries = 0;
  std::string bits;  // recovered word, only kept when emit_bits is on
};

struct HistogramBin {
  std::size_t lo = 0;  // inclusive
  std::size_t hi = 0;  // inclusive
  std::size_t count = 0;
};

struct OracleCheckSummary {
  int n = 0;
  int phases_checked = 0;
  double max_tv_qft_vs_serial = 0.0;
  double max_tv_semiclassical_vs_serial = 0.0;
  bool pass = false;
};

/// Everything a mode produces, ready for emission. Estimates, bounds and
/// histogram are filled for the trial-running modes; the other payloads
/// belong to their mode. Wall time is reported on the terminal only so
/// output files stay byte-identical across reruns.
struct RunSummary {
  ExperimentConfig config;

  std::vector<TrialBrief> trials;
  std::size_t censored_trials = 0;
  std::size_t aborted_trials = 0;
  std::optional<ErrorRateEstimates> estimates;
  std::optional<ConfidenceBounds> bounds;
  std::string bounds_note;  // set when bounds could not be computed
  std::size_t bounds_kmax = 0, bounds_nmax = 0;
  std::size_t bounds_kmin = 0, bounds_nmin = 0;
  std::vector<HistogramBin> histogram;

  std::optional<FringeScan> fringe;
  std::optional<FringeFit> fringe_fit_result;
  std::optional<CensusResult> census;
  std::optional<OracleCheckSummary> oracle;

  double wall_seconds = 0.0;
};

/// Executes the configured experiment. Trial t draws from the random
/// stream derived from (master_seed, t), so results do not depend on the
/// worker count. Throws ConfigError / IoError for bad inputs.
RunSummary run_experiment(const ExperimentConfig& config);

/// Writes the mode's output files under `out_dir`:
///   trial modes   trials.jsonl, histogram.csv, summary.txt
///   fringe        fringe.csv, summary.txt
///   census        census.csv, summary.txt
///   bounds        summary.txt
///   oracle-check  summary.txt
/// Returns the paths written. Throws IoError on failure.
std::vector<std::string> emit_records(const RunSummary& summary,
                                      const std::string& out_dir);

}  // namespace mqft

#endif  // MQFT_EXPERIMENT_HPP_
