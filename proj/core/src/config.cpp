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

#include "mqft/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mqft/phase_word.hpp"

namespace mqft {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct KeyValues {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.contains(key); }

  std::string take(const std::string& key) const { return values.at(key); }

  template <typename T, typename Parse>
  void get(const std::string& key, T& out, Parse parse) {
    if (!has(key)) return;
    const std::string raw = take(key);
    try {
      out = parse(raw);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception&) {
      throw ConfigError("config: bad value for key \"" + key + "\": " + raw);
    }
  }
};

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument(s);
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t pos = 0;
  const std::uint64_t v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::invalid_argument(s);
  return v;
}

long long parse_i64(const std::string& s) {
  std::size_t pos = 0;
  const long long v = std::stoll(s, &pos);
  if (pos != s.size()) throw std::invalid_argument(s);
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument(s);
}

Mode parse_mode(const std::string& s) {
  if (s == "ideal") return Mode::ideal;
  if (s == "noisy") return Mode::noisy;
  if (s == "majority") return Mode::majority;
  if (s == "fringe") return Mode::fringe;
  if (s == "census") return Mode::census;
  if (s == "oracle-check") return Mode::oracle_check;
  if (s == "bounds") return Mode::bounds;
  throw ConfigError("config: unknown mode \"" + s + "\"");
}

const std::set<std::string>& allowed_keys(Mode mode) {
  static const std::set<std::string> common = {"mode", "master_seed",
                                               "out_dir", "workers"};
  static const std::set<std::string> noise_keys = {
      "profile",    "visibility", "truncation_m", "dac_digits",
      "v_pi",       "mu",         "loss_db",      "eta_det",
      "dark_rate",  "retry_cap",  "p_override",   "extra_delta"};
  static const std::set<std::string> run_keys = {
      "n_qubits",       "n_trials", "phase_word",
      "repetitions",    "emit_bits", "hist_bin_width",
      "alpha",          "bounds_convention", "abort_fraction_limit"};

  static const auto make = [](std::initializer_list<const std::set<std::string>*>
                                  groups,
                              std::initializer_list<const char*> extra) {
    std::set<std::string> keys;
    for (const auto* g : groups) keys.insert(g->begin(), g->end());
    for (const char* k : extra) keys.insert(k);
    return keys;
  };
  static const std::set<std::string> ideal = make({&common, &run_keys}, {});
  static const std::set<std::string> noisy =
      make({&common, &run_keys, &noise_keys}, {});
  static const std::set<std::string> fringe =
      make({&common, &noise_keys},
           {"fringe_v_start", "fringe_v_stop", "fringe_points",
            "pulses_per_point", "phase_offset"});
  static const std::set<std::string> census =
      make({&common, &noise_keys}, {"census_words", "n_qubits"});
  static const std::set<std::string> oracle =
      make({&common}, {"oracle_n", "oracle_random_phases"});
  static const std::set<std::string> bounds =
      make({&common}, {"kmax", "nmax", "kmin", "nmin", "n_trials", "n_qubits",
                       "alpha", "bounds_convention"});
  switch (mode) {
    case Mode::ideal:
      return ideal;
    case Mode::noisy:
    case Mode::majority:
      return noisy;
    case Mode::fringe:
      return fringe;
    case Mode::census:
      return census;
    case Mode::oracle_check:
      return oracle;
    case Mode::bounds:
      return bounds;
  }
  return ideal;
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::ideal:
      return "ideal";
    case Mode::noisy:
      return "noisy";
    case Mode::majority:
      return "majority";
    case Mode::fringe:
      return "fringe";
    case Mode::census:
      return "census";
    case Mode::oracle_check:
      return "oracle-check";
    case Mode::bounds:
      return "bounds";
  }
  return "?";
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value, got \"" + line + "\"");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config: empty key or value in \"" + line + "\"");
    }
    if (kv.values.contains(key)) {
      throw ConfigError("config: duplicate key \"" + key + "\"");
    }
    kv.values[key] = value;
  }

  if (!kv.has("mode")) throw ConfigError("config: missing required key \"mode\"");
  ExperimentConfig cfg;
  cfg.mode = parse_mode(kv.take("mode"));

  const auto& allowed = allowed_keys(cfg.mode);
  for (const auto& [key, value] : kv.values) {
    if (!allowed.contains(key)) {
      throw ConfigError("config: unknown key \"" + key + "\" for mode " +
                        to_string(cfg.mode));
    }
  }

  // Profile defaults are applied before explicit keys so the latter win.
  if (kv.has("profile")) {
    const std::string profile = kv.take("profile");
    if (profile == "paper") {
      cfg.noise = NoiseParams::paper_profile();
    } else if (profile != "none") {
      throw ConfigError("config: unknown profile \"" + profile + "\"");
    }
  }

  if (kv.has("master_seed")) {
    cfg.master_seed = parse_u64(kv.take("master_seed"));
    cfg.has_seed = true;
  }
  kv.get("out_dir", cfg.out_dir, [](const std::string& s) { return s; });
  kv.get("workers", cfg.workers,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });

  kv.get("n_qubits", cfg.n_qubits, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });
  kv.get("n_trials", cfg.n_trials, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });
  if (kv.has("phase_word")) {
    const std::string spec = kv.take("phase_word");
    if (spec == "random") {
      cfg.word_source = WordSource::random;
    } else if (spec.rfind("file:", 0) == 0) {
      cfg.word_source = WordSource::file;
      cfg.word_file = spec.substr(5);
    } else {
      cfg.word_source = WordSource::explicit_bits;
      cfg.word_bits = spec;
    }
  }
  kv.get("repetitions", cfg.repetitions,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });
  kv.get("emit_bits", cfg.emit_bits, parse_bool);
  kv.get("hist_bin_width", cfg.hist_bin_width, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });
  kv.get("alpha", cfg.alpha, parse_double);
  if (kv.has("bounds_convention")) {
    const std::string c = kv.take("bounds_convention");
    if (c == "cumulative") {
      cfg.convention = PminConvention::cumulative;
    } else if (c == "exact_at_k") {
      cfg.convention = PminConvention::exact_at_k;
    } else {
      throw ConfigError("config: unknown bounds_convention \"" + c + "\"");
    }
  }
  kv.get("abort_fraction_limit", cfg.abort_fraction_limit, parse_double);

  kv.get("visibility", cfg.noise.visibility, parse_double);
  if (kv.has("truncation_m")) {
    const std::string m = kv.take("truncation_m");
    if (m == "none") {
      cfg.noise.truncation_m.reset();
    } else {
      cfg.noise.truncation_m = static_cast<int>(parse_i64(m));
    }
  }
  kv.get("dac_digits", cfg.noise.dac_digits,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });
  kv.get("v_pi", cfg.noise.v_pi, parse_double);
  kv.get("mu", cfg.noise.mean_photons, parse_double);
  kv.get("loss_db", cfg.noise.loss_db, parse_double);
  kv.get("eta_det", cfg.noise.eta_det, parse_double);
  kv.get("dark_rate", cfg.noise.dark_rate, parse_double);
  kv.get("retry_cap", cfg.noise.retry_cap,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });
  if (kv.has("p_override")) {
    const std::string p = kv.take("p_override");
    if (p == "none") {
      cfg.noise.p_override.reset();
    } else {
      cfg.noise.p_override = parse_double(p);
    }
  }
  kv.get("extra_delta", cfg.noise.extra_delta, parse_double);

  kv.get("fringe_v_start", cfg.fringe_v_start, parse_double);
  kv.get("fringe_v_stop", cfg.fringe_v_stop, parse_double);
  kv.get("fringe_points", cfg.fringe_points,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });
  kv.get("pulses_per_point", cfg.pulses_per_point,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });
  kv.get("phase_offset", cfg.phase_offset, parse_double);

  kv.get("census_words", cfg.census_words, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });

  kv.get("kmax", cfg.kmax, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });
  kv.get("nmax", cfg.nmax, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });
  kv.get("kmin", cfg.kmin, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });
  kv.get("nmin", cfg.nmin, [](const std::string& s) {
    return static_cast<std::size_t>(parse_u64(s));
  });

  kv.get("oracle_n", cfg.oracle_n,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });
  kv.get("oracle_random_phases", cfg.oracle_random_phases,
         [](const std::string& s) { return static_cast<int>(parse_i64(s)); });

  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void ExperimentConfig::validate() const {
  const auto require = [](bool ok, const std::string& message) {
    if (!ok) throw ConfigError("config: " + message);
  };
  require(workers >= 1, "workers must be >= 1");

  const bool is_run_mode =
      mode == Mode::ideal || mode == Mode::noisy || mode == Mode::majority;
  const bool needs_seed = mode == Mode::noisy || mode == Mode::majority ||
                          mode == Mode::fringe || mode == Mode::census ||
                          (mode == Mode::ideal &&
                           word_source == WordSource::random) ||
                          (mode == Mode::oracle_check &&
                           oracle_random_phases > 0);
  require(!needs_seed || has_seed,
          "master_seed is required for stochastic modes");

  if (is_run_mode) {
    require(n_qubits >= 1 && n_qubits <= kMaxPhaseBits,
            "n_qubits must lie in [1, " + std::to_string(kMaxPhaseBits) + "]");
    require(n_trials >= 1, "n_trials must be >= 1");
    require(repetitions >= 1, "repetitions must be >= 1");
    require(mode != Mode::majority || repetitions >= 2,
            "majority mode needs repetitions >= 2");
    require(hist_bin_width >= 1, "hist_bin_width must be >= 1");
    require(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 0.5)");
    require(abort_fraction_limit >= 0.0 && abort_fraction_limit <= 1.0,
            "abort_fraction_limit must lie in [0,1]");
    if (word_source == WordSource::explicit_bits) {
      require(word_bits.size() == n_qubits,
              "phase_word length must equal n_qubits");
      require(word_bits.find_first_not_of("01") == std::string::npos,
              "phase_word must be a bit string, \"random\" or \"file:...\"");
    }
    if (mode != Mode::ideal) {
      try {
        noise.validate();
      } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
      }
    }
  }
  if (mode == Mode::fringe) {
    require(fringe_points >= 8, "fringe_points must be >= 8");
    require(fringe_v_stop > fringe_v_start,
            "fringe_v_stop must exceed fringe_v_start");
    require(pulses_per_point >= 1, "pulses_per_point must be >= 1");
    require(noise.visibility >= 0.0 && noise.visibility <= 1.0,
            "visibility must lie in [0,1]");
    require(noise.v_pi > 0.0, "v_pi must be positive");
  }
  if (mode == Mode::census) {
    require(census_words >= 1, "census_words must be >= 1");
    require(n_qubits >= 1 && n_qubits <= kMaxPhaseBits,
            "n_qubits must lie in [1, " + std::to_string(kMaxPhaseBits) + "]");
  }
  if (mode == Mode::bounds) {
    require(n_trials >= 1, "n_trials must be >= 1");
    require(n_qubits >= 1, "n_qubits must be >= 1");
    require(kmax >= 1 && kmin >= 1, "kmax and kmin must be >= 1");
    require(nmax <= n_trials && nmin <= n_trials,
            "nmax and nmin must not exceed n_trials");
    require(alpha > 0.0 && alpha < 0.5, "alpha must lie in (0, 0.5)");
  }
  if (mode == Mode::oracle_check) {
    require(oracle_n >= 1 && oracle_n <= 14, "oracle_n must lie in [1, 14]");
    require(oracle_random_phases >= 0, "oracle_random_phases must be >= 0");
  }
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  const auto emit = [&out](const std::string& key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  emit("mode", to_string(mode));
  if (has_seed) emit("master_seed", std::to_string(master_seed));
  emit("out_dir", out_dir);
  emit("workers", std::to_string(workers));

  const bool is_run_mode =
      mode == Mode::ideal || mode == Mode::noisy || mode == Mode::majority;
  const auto emit_noise = [&](bool physics) {
    emit("visibility", format_double(noise.visibility));
    emit("truncation_m", noise.truncation_m
                             ? std::to_string(*noise.truncation_m)
                             : std::string("none"));
    emit("dac_digits", std::to_string(noise.dac_digits));
    emit("v_pi", format_double(noise.v_pi));
    if (physics) {
      emit("mu", format_double(noise.mean_photons));
      emit("loss_db", format_double(noise.loss_db));
      emit("eta_det", format_double(noise.eta_det));
      emit("dark_rate", format_double(noise.dark_rate));
      emit("retry_cap", std::to_string(noise.retry_cap));
      emit("p_override", noise.p_override ? format_double(*noise.p_override)
                                          : std::string("none"));
      emit("extra_delta", format_double(noise.extra_delta));
    }
  };

  if (is_run_mode) {
    emit("n_qubits", std::to_string(n_qubits));
    emit("n_trials", std::to_string(n_trials));
    switch (word_source) {
      case WordSource::random:
        emit("phase_word", "random");
        break;
      case WordSource::explicit_bits:
        emit("phase_word", word_bits);
        break;
      case WordSource::file:
        emit("phase_word", "file:" + word_file);
        break;
    }
    emit("repetitions", std::to_string(repetitions));
    emit("emit_bits", emit_bits ? "true" : "false");
    emit("hist_bin_width", std::to_string(hist_bin_width));
    emit("alpha", format_double(alpha));
    emit("bounds_convention", convention == PminConvention::cumulative
                                  ? "cumulative"
                                  : "exact_at_k");
    emit("abort_fraction_limit", format_double(abort_fraction_limit));
    if (mode != Mode::ideal) emit_noise(/*physics=*/true);
  }
  if (mode == Mode::fringe) {
    emit("fringe_v_start", format_double(fringe_v_start));
    emit("fringe_v_stop", format_double(fringe_v_stop));
    emit("fringe_points", std::to_string(fringe_points));
    emit("pulses_per_point", std::to_string(pulses_per_point));
    emit("phase_offset", format_double(phase_offset));
    emit("visibility", format_double(noise.visibility));
    emit("v_pi", format_double(noise.v_pi));
  }
  if (mode == Mode::census) {
    emit("census_words", std::to_string(census_words));
    emit("n_qubits", std::to_string(n_qubits));
    emit_noise(/*physics=*/false);
  }
  if (mode == Mode::bounds) {
    emit("kmax", std::to_string(kmax));
    emit("nmax", std::to_string(nmax));
    emit("kmin", std::to_string(kmin));
    emit("nmin", std::to_string(nmin));
    emit("n_trials", std::to_string(n_trials));
    emit("n_qubits", std::to_string(n_qubits));
    emit("alpha", format_double(alpha));
    emit("bounds_convention", convention == PminConvention::cumulative
                                  ? "cumulative"
                                  : "exact_at_k");
  }
  if (mode == Mode::oracle_check) {
    emit("oracle_n", std::to_string(oracle_n));
    emit("oracle_random_phases", std::to_string(oracle_random_phases));
  }
  return out.str();
}

}  // namespace mqft
