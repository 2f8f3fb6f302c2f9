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

#include "mqft/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "mqft/oracle.hpp"
#include "mqft/pipeline.hpp"
#include "mqft/rng.hpp"

namespace mqft {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<PhaseWord> load_word_file(const std::string& path,
                                      std::size_t n_qubits,
                                      std::size_t n_trials) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read phase word file: " + path);
  std::vector<PhaseWord> words;
  std::string line;
  while (std::getline(in, line) && words.size() < n_trials) {
    if (line.empty()) continue;
    PhaseWord word = PhaseWord::from_string(line);
    if (word.size() != n_qubits) {
      throw ConfigError("config: phase word file line " +
                        std::to_string(words.size() + 1) + " has length " +
                        std::to_string(word.size()) + ", expected " +
                        std::to_string(n_qubits));
    }
    words.push_back(std::move(word));
  }
  if (words.size() < n_trials) {
    throw ConfigError("config: phase word file has fewer words than trials");
  }
  return words;
}

TrialBrief condense(const TrialRecord& record, bool keep_bits) {
  TrialBrief brief;
  brief.run_length = record.run_length;
  brief.censored = record.censored;
  brief.aborted = record.aborted;
  brief.abort_step = record.abort_step;
  for (auto r : record.retries) brief.retries += r;
  if (keep_bits) {
    brief.bits.reserve(record.recovered.size());
    for (auto b : record.recovered) {
      brief.bits.push_back(static_cast<char>('0' + b));
    }
  }
  return brief;
}

void run_trials(const ExperimentConfig& cfg, RunSummary& summary) {
  std::optional<std::vector<PhaseWord>> file_words;
  if (cfg.word_source == WordSource::file) {
    file_words = load_word_file(cfg.word_file, cfg.n_qubits, cfg.n_trials);
  }

  summary.trials.assign(cfg.n_trials, TrialBrief{});
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t t = next.fetch_add(1); t < cfg.n_trials;
         t = next.fetch_add(1)) {
      auto rng = make_stream(cfg.master_seed, t);
      PhaseWord word = [&] {
        switch (cfg.word_source) {
          case WordSource::random:
            return PhaseWord::random(cfg.n_qubits, rng);
          case WordSource::explicit_bits:
            return PhaseWord::from_string(cfg.word_bits);
          case WordSource::file:
            return (*file_words)[t];
        }
        return PhaseWord::from_string(cfg.word_bits);
      }();
      const TrialRecord record =
          cfg.mode == Mode::ideal
              ? run_serial_mqft(word)
              : run_serial_mqft(word, cfg.noise, rng, cfg.repetitions);
      summary.trials[t] = condense(record, cfg.emit_bits);
    }
  };

  std::vector<std::thread> pool;
  const int workers = std::min<int>(cfg.workers,
                                    static_cast<int>(cfg.n_trials));
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Aggregate. Aborted trials carry no usable run length.
  TrialStats stats;
  stats.n_qubits = cfg.n_qubits;
  for (const auto& trial : summary.trials) {
    if (trial.aborted) {
      ++summary.aborted_trials;
      continue;
    }
    stats.run_lengths.push_back(trial.run_length);
    stats.censored.push_back(trial.censored ? 1 : 0);
    if (trial.censored) ++summary.censored_trials;
  }
  if (!stats.run_lengths.empty()) {
    summary.estimates = estimate_error_rate(stats);

    // Success side counts correctly transformed bits (a censored trial got
    // all n right, an uncensored one stopped being right at run_length).
    // Failure side looks at uncensored trials only.
    std::size_t k_max = 0;
    std::size_t k_min = cfg.n_qubits + 1;
    for (std::size_t i = 0; i < stats.run_lengths.size(); ++i) {
      const std::size_t successes =
          stats.censored[i] ? cfg.n_qubits : stats.run_lengths[i] - 1;
      k_max = std::max(k_max, successes);
      if (!stats.censored[i]) k_min = std::min(k_min, stats.run_lengths[i]);
    }
    std::size_t n_max = 0, n_min = 0;
    for (std::size_t i = 0; i < stats.run_lengths.size(); ++i) {
      const std::size_t successes =
          stats.censored[i] ? cfg.n_qubits : stats.run_lengths[i] - 1;
      if (successes >= k_max) ++n_max;
      if (!stats.censored[i] && stats.run_lengths[i] <= k_min) ++n_min;
    }
    summary.bounds_kmax = k_max;
    summary.bounds_nmax = n_max;
    summary.bounds_kmin = k_min <= cfg.n_qubits ? k_min : 0;
    summary.bounds_nmin = n_min;
    if (k_max >= 1 && n_min >= 1) {
      try {
        summary.bounds = confidence_bounds(
            k_max, n_max, k_min, n_min, stats.run_lengths.size(), cfg.n_qubits,
            cfg.alpha, cfg.convention);
      } catch (const std::exception& e) {
        summary.bounds_note = e.what();
      }
    } else {
      summary.bounds_note =
          k_max < 1 ? "every trial failed at the first qubit"
                    : "no trial failed, the lower bound is undefined";
    }

    for (std::size_t lo = 1; lo <= cfg.n_qubits; lo += cfg.hist_bin_width) {
      HistogramBin bin;
      bin.lo = lo;
      bin.hi = std::min(cfg.n_qubits, lo + cfg.hist_bin_width - 1);
      for (std::size_t len : stats.run_lengths) {
        if (len >= bin.lo && len <= bin.hi) ++bin.count;
      }
      summary.histogram.push_back(bin);
    }
  }
}

void run_fringe(const ExperimentConfig& cfg, RunSummary& summary) {
  std::vector<double> voltages(static_cast<std::size_t>(cfg.fringe_points));
  for (int i = 0; i < cfg.fringe_points; ++i) {
    voltages[static_cast<std::size_t>(i)] =
        cfg.fringe_v_start + (cfg.fringe_v_stop - cfg.fringe_v_start) * i /
                                 (cfg.fringe_points - 1);
  }
  // Every voltage point draws from its own stream so the scan is invariant
  // under any future parallelization of the loop.
  FringeScan scan;
  scan.voltages = voltages;
  scan.pulses_per_point = cfg.pulses_per_point;
  for (std::size_t i = 0; i < voltages.size(); ++i) {
    auto rng = make_stream(cfg.master_seed, i);
    const auto point = simulate_fringe_scan(
        cfg.noise.visibility, cfg.noise.v_pi, cfg.phase_offset,
        std::span<const double>(&voltages[i], 1), cfg.pulses_per_point, rng);
    scan.counts.push_back(point.counts.front());
  }
  summary.fringe = scan;
  summary.fringe_fit_result = fit_fringe(scan);
}

void run_census(const ExperimentConfig& cfg, RunSummary& summary) {
  std::vector<PhaseWord> words;
  words.reserve(cfg.census_words);
  for (std::size_t w = 0; w < cfg.census_words; ++w) {
    auto rng = make_stream(cfg.master_seed, w);
    words.push_back(PhaseWord::random(cfg.n_qubits, rng));
  }
  CensusSettings settings;
  settings.truncation_m = cfg.noise.truncation_m;
  settings.dac_digits = cfg.noise.dac_digits;
  settings.v_pi = cfg.noise.v_pi;
  summary.census = phase_error_census(words, settings);
}

void run_oracle_check(const ExperimentConfig& cfg, RunSummary& summary) {
  OracleCheckSummary check;
  check.n = cfg.oracle_n;
  const auto qft = build_qft_circuit(cfg.oracle_n);
  const auto semiclassical = build_semiclassical_circuit(cfg.oracle_n);

  const auto compare = [&](double phi) {
    const auto serial = serial_pipeline_distribution(cfg.oracle_n, phi);
    const auto via_qft =
        outcome_distribution(qft, product_input_state(cfg.oracle_n, phi));
    const auto via_semi = outcome_distribution(
        semiclassical, product_input_state(cfg.oracle_n, phi));
    check.max_tv_qft_vs_serial = std::max(check.max_tv_qft_vs_serial,
                                          total_variation(via_qft, serial));
    check.max_tv_semiclassical_vs_serial =
        std::max(check.max_tv_semiclassical_vs_serial,
                 total_variation(via_semi, serial));
    ++check.phases_checked;
  };

  const std::uint64_t count = std::uint64_t{1} << cfg.oracle_n;
  for (std::uint64_t w = 0; w < count; ++w) {
    compare(std::ldexp(static_cast<double>(w), -cfg.oracle_n));
  }
  auto rng = make_stream(cfg.master_seed, 0);
  for (int i = 0; i < cfg.oracle_random_phases; ++i) {
    compare(random_unit(rng));
  }
  check.pass = check.max_tv_qft_vs_serial <= 1e-9 &&
               check.max_tv_semiclassical_vs_serial <= 1e-9;
  summary.oracle = check;
}

void run_bounds(const ExperimentConfig& cfg, RunSummary& summary) {
  summary.bounds_kmax = cfg.kmax;
  summary.bounds_nmax = cfg.nmax;
  summary.bounds_kmin = cfg.kmin;
  summary.bounds_nmin = cfg.nmin;
  summary.bounds = confidence_bounds(cfg.kmax, cfg.nmax, cfg.kmin, cfg.nmin,
                                     cfg.n_trials, cfg.n_qubits, cfg.alpha,
                                     cfg.convention);
}

}  // namespace

RunSummary run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  RunSummary summary;
  summary.config = config;
  switch (config.mode) {
    case Mode::ideal:
    case Mode::noisy:
    case Mode::majority:
      run_trials(config, summary);
      break;
    case Mode::fringe:
      run_fringe(config, summary);
      break;
    case Mode::census:
      run_census(config, summary);
      break;
    case Mode::oracle_check:
      run_oracle_check(config, summary);
      break;
    case Mode::bounds:
      run_bounds(config, summary);
      break;
  }
  summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return summary;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write output file: " + path.string());
  return out;
}

void write_trials_jsonl(const RunSummary& summary,
                        const std::filesystem::path& path) {
  auto out = open_output(path);
  for (std::size_t t = 0; t < summary.trials.size(); ++t) {
    const auto& trial = summary.trials[t];
    nlohmann::ordered_json record;
    record["trial"] = t;
    record["run_length"] = trial.run_length;
    record["censored"] = trial.censored;
    record["aborted"] = trial.aborted;
    if (trial.aborted) record["abort_step"] = trial.abort_step;
    record["retries"] = trial.retries;
    if (!trial.bits.empty()) record["bits"] = trial.bits;
    out << record.dump() << "\n";
  }
}

void write_histogram_csv(const RunSummary& summary,
                         const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "bin_lo,bin_hi,count\n";
  for (const auto& bin : summary.histogram) {
    out << bin.lo << "," << bin.hi << "," << bin.count << "\n";
  }
}

void write_fringe_csv(const RunSummary& summary,
                      const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "voltage,counts\n";
  const auto& scan = *summary.fringe;
  for (std::size_t i = 0; i < scan.voltages.size(); ++i) {
    out << format_double(scan.voltages[i]) << ","
        << format_double(scan.counts[i]) << "\n";
  }
}

void write_census_csv(const RunSummary& summary,
                      const std::filesystem::path& path) {
  auto out = open_output(path);
  out << "cos_delta_lo,cos_delta_hi,count\n";
  const int bins = 50;
  double lo = 0.98;
  for (double c : summary.census->cos_delta) lo = std::min(lo, c);
  const double hi = 1.0;
  const auto counts = summary.census->histogram(bins, lo, hi);
  for (int i = 0; i < bins; ++i) {
    const double a = lo + (hi - lo) * i / bins;
    const double b = lo + (hi - lo) * (i + 1) / bins;
    out << format_double(a) << "," << format_double(b) << ","
        << counts[static_cast<std::size_t>(i)] << "\n";
  }
}

void write_summary_txt(const RunSummary& summary,
                       const std::filesystem::path& path) {
  auto out = open_output(path);
  const auto& cfg = summary.config;
  out << "mqft run summary\n";
  out << "mode: " << to_string(cfg.mode) << "\n";
  if (cfg.has_seed) out << "master_seed: " << cfg.master_seed << "\n";

  if (!summary.trials.empty()) {
    out << "trials: " << summary.trials.size() << "\n";
    out << "n_qubits: " << cfg.n_qubits << "\n";
    out << "censored_trials: " << summary.censored_trials << "\n";
    out << "aborted_trials: " << summary.aborted_trials << "\n";
    if (summary.estimates) {
      out << "p_hat_inverse_mean: " << format_double(summary.estimates->inverse_mean)
          << "\n";
      out << "p_hat_censoring_aware: "
          << format_double(summary.estimates->censoring_aware) << "\n";
      if (summary.estimates->all_censored) {
        out << "note: every trial ran to full length; the censoring-aware "
               "estimate degenerates to 0\n";
      }
    }
  }
  if (summary.bounds || !summary.bounds_note.empty()) {
    out << "bounds_inputs: kmax=" << summary.bounds_kmax
        << " nmax=" << summary.bounds_nmax << " kmin=" << summary.bounds_kmin
        << " nmin=" << summary.bounds_nmin << " alpha="
        << format_double(cfg.alpha) << " convention="
        << (cfg.convention == PminConvention::cumulative ? "cumulative"
                                                         : "exact_at_k")
        << "\n";
    if (summary.bounds) {
      out << "p_min: " << format_double(summary.bounds->p_min) << "\n";
      out << "p_max: " << format_double(summary.bounds->p_max) << "\n";
    } else {
      out << "bounds_unavailable: " << summary.bounds_note << "\n";
    }
  }
  if (summary.fringe_fit_result) {
    const auto& fit = *summary.fringe_fit_result;
    out << "fringe_fit_visibility: " << format_double(fit.visibility) << "\n";
    out << "fringe_fit_v_pi: " << format_double(fit.v_pi) << "\n";
    out << "fringe_fit_phase_offset: " << format_double(fit.phase_offset)
        << "\n";
    out << "fringe_fit_residual: " << format_double(fit.residual) << "\n";
  }
  if (summary.census) {
    out << "census_rotations: " << summary.census->rotations << "\n";
    out << "census_mean_abs_cos_delta: "
        << format_double(summary.census->mean_abs) << "\n";
    out << "census_min_abs_cos_delta: "
        << format_double(summary.census->min_abs) << "\n";
  }
  if (summary.oracle) {
    const auto& check = *summary.oracle;
    out << "oracle_n: " << check.n << "\n";
    out << "oracle_phases_checked: " << check.phases_checked << "\n";
    out << "oracle_max_tv_qft_vs_serial: "
        << format_double(check.max_tv_qft_vs_serial) << "\n";
    out << "oracle_max_tv_semiclassical_vs_serial: "
        << format_double(check.max_tv_semiclassical_vs_serial) << "\n";
    out << "oracle_equivalence: " << (check.pass ? "PASS" : "FAIL") << "\n";
  }

  out << "\n[config]\n" << cfg.serialize();
}

}  // namespace

std::vector<std::string> emit_records(const RunSummary& summary,
                                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  std::vector<std::string> written;
  const auto emit = [&](const char* name, auto writer) {
    const fs::path path = fs::path(out_dir) / name;
    writer(summary, path);
    written.push_back(path.string());
  };

  const Mode mode = summary.config.mode;
  if (mode == Mode::ideal || mode == Mode::noisy || mode == Mode::majority) {
    emit("trials.jsonl", write_trials_jsonl);
    emit("histogram.csv", write_histogram_csv);
  }
  if (mode == Mode::fringe) emit("fringe.csv", write_fringe_csv);
  if (mode == Mode::census) emit("census.csv", write_census_csv);
  emit("summary.txt", write_summary_txt);
  return written;
}

}  // namespace mqft
