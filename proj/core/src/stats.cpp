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

#include "mqft/stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace mqft {

void TrialStats::validate() const {
  if (run_lengths.empty()) {
    throw std::invalid_argument("TrialStats: need at least one trial");
  }
  if (censored.size() != run_lengths.size()) {
    throw std::invalid_argument("TrialStats: flag/length size mismatch");
  }
  for (std::size_t i = 0; i < run_lengths.size(); ++i) {
    if (run_lengths[i] < 1 || run_lengths[i] > n_qubits) {
      throw std::invalid_argument("TrialStats: run length out of [1, n]");
    }
    if (censored[i] && run_lengths[i] != n_qubits) {
      throw std::invalid_argument("TrialStats: censored trial shorter than n");
    }
  }
}

double geometric_pmf(std::size_t n, double p) {
  if (n < 1) throw std::invalid_argument("geometric_pmf: n must be >= 1");
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("geometric_pmf: p must lie in (0,1]");
  }
  return std::pow(1.0 - p, static_cast<double>(n - 1)) * p;
}

ErrorRateEstimates estimate_error_rate(const TrialStats& stats) {
  stats.validate();
  double total = 0.0;
  std::size_t uncensored = 0;
  for (std::size_t i = 0; i < stats.run_lengths.size(); ++i) {
    total += static_cast<double>(stats.run_lengths[i]);
    if (!stats.censored[i]) ++uncensored;
  }
  ErrorRateEstimates est;
  est.inverse_mean = static_cast<double>(stats.run_lengths.size()) / total;
  est.censoring_aware = static_cast<double>(uncensored) / total;
  est.all_censored = uncensored == 0;
  return est;
}

double majority_vote_error(const MajoritySpec& spec) {
  if (spec.repetitions < 1) {
    throw std::invalid_argument("majority_vote_error: M must be >= 1");
  }
  if (spec.p < 0.0 || spec.p > 1.0) {
    throw std::invalid_argument("majority_vote_error: p must lie in [0,1]");
  }
  const int m = spec.repetitions;
  const double p = spec.p;
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  double sum = 0.0;
  double binom = 1.0;  // C(m, j), advanced iteratively
  for (int j = 0; j <= m / 2; ++j) {
    if (j > 0) binom *= static_cast<double>(m - j + 1) / j;
    sum += binom * std::pow(p, m - j) * std::pow(1.0 - p, j);
  }
  return sum;
}

double binomial_tail_geq(std::size_t trials, std::size_t successes, double q) {
  if (successes == 0) return 1.0;
  if (successes > trials) return 0.0;
  if (q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  // P(X >= j) equals the regularized incomplete beta I_q(j, N-j+1).
  return boost::math::ibeta(static_cast<double>(successes),
                            static_cast<double>(trials - successes + 1), q);
}

namespace {

// Root of f(p) = alpha on [lo, hi], f monotone on the bracket.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double alpha, bool increasing) {
  double f_lo = f(lo) - alpha;
  double f_hi = f(hi) - alpha;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw std::runtime_error(
        "confidence_bounds: no sign change in bisection bracket");
  }
  for (int i = 0; i < 200 && (hi - lo) > lo * 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid) - alpha;
    const bool mid_below = increasing ? f_mid < 0.0 : f_mid > 0.0;
    if (mid_below) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ConfidenceBounds confidence_bounds(std::size_t k_max, std::size_t n_max,
                                   std::size_t k_min, std::size_t n_min,
                                   std::size_t n_trials, std::size_t n_qubits,
                                   double alpha, PminConvention convention) {
  if (n_trials == 0) {
    throw std::invalid_argument("confidence_bounds: n_trials must be >= 1");
  }
  if (n_max > n_trials || n_min > n_trials) {
    throw std::invalid_argument("confidence_bounds: counts exceed n_trials");
  }
  if (k_max < 1 || k_min < 1 || k_max > n_qubits || k_min > n_qubits) {
    throw std::invalid_argument("confidence_bounds: k out of [1, n_qubits]");
  }
  if (!(alpha > 0.0) || alpha >= 0.5) {
    throw std::invalid_argument("confidence_bounds: alpha must lie in (0,0.5)");
  }

  ConfidenceBounds bounds;

  // Upper bound: at p_max, >= n_max full successes of k_max qubits become
  // an alpha-unlikely fluke. Decreasing in p.
  const auto success_tail = [&](double p) {
    const double q = std::pow(1.0 - p, static_cast<double>(k_max));
    return binomial_tail_geq(n_trials, n_max, q);
  };
  bounds.p_max = bisect(success_tail, 0.0, 1.0, alpha, /*increasing=*/false);

  // Lower bound: at p_min, >= n_min failures by qubit k_min become an
  // alpha-unlikely fluke. Increasing in p up to the convention's peak.
  const auto failure_prob = [&](double p) -> double {
    switch (convention) {
      case PminConvention::cumulative:
        return -std::expm1(static_cast<double>(k_min) * std::log1p(-p));
      case PminConvention::exact_at_k:
        return std::pow(1.0 - p, static_cast<double>(k_min - 1)) * p;
    }
    return 0.0;
  };
  const auto failure_tail = [&](double p) {
    return binomial_tail_geq(n_trials, n_min, failure_prob(p));
  };
  double hi = 1.0;
  if (convention == PminConvention::exact_at_k) {
    // The pmf reading is unimodal in p; search the rising flank only.
    hi = 1.0 / static_cast<double>(k_min);
  }
  bounds.p_min = bisect(failure_tail, 0.0, hi, alpha, /*increasing=*/true);

  return bounds;
}

GofResult geometric_goodness_of_fit(const TrialStats& stats, double p,
                                    double min_expected) {
  stats.validate();
  if (!(p > 0.0) || p >= 1.0) {
    throw std::invalid_argument("geometric_goodness_of_fit: p out of (0,1)");
  }
  const std::size_t n = stats.n_qubits;
  const double trials = static_cast<double>(stats.run_lengths.size());

  // Observed uncensored counts per length, censored counted separately.
  std::vector<double> observed(n + 1, 0.0);
  double observed_censored = 0.0;
  for (std::size_t i = 0; i < stats.run_lengths.size(); ++i) {
    if (stats.censored[i]) {
      observed_censored += 1.0;
    } else {
      observed[stats.run_lengths[i]] += 1.0;
    }
  }

  // Greedy cell merging over lengths 1..n until each expected count is
  // large enough for the Pearson statistic to be trustworthy.
  std::vector<double> cell_obs;
  std::vector<double> cell_exp;
  double acc_obs = 0.0;
  double acc_exp = 0.0;
  for (std::size_t len = 1; len <= n; ++len) {
    acc_obs += observed[len];
    acc_exp += trials * geometric_pmf(len, p);
    if (acc_exp >= min_expected) {
      cell_obs.push_back(acc_obs);
      cell_exp.push_back(acc_exp);
      acc_obs = 0.0;
      acc_exp = 0.0;
    }
  }
  // Censored cell; fold any trailing partial cell into it.
  acc_obs += observed_censored;
  acc_exp += trials * std::pow(1.0 - p, static_cast<double>(n));
  if (!cell_obs.empty() && acc_exp < min_expected) {
    cell_obs.back() += acc_obs;
    cell_exp.back() += acc_exp;
  } else {
    cell_obs.push_back(acc_obs);
    cell_exp.push_back(acc_exp);
  }
  if (cell_obs.size() < 2) {
    throw std::invalid_argument(
        "geometric_goodness_of_fit: too few cells, lower min_expected");
  }

  GofResult result;
  result.bins = static_cast<int>(cell_obs.size());
  result.dof = result.bins - 1;
  for (std::size_t i = 0; i < cell_obs.size(); ++i) {
    const double d = cell_obs[i] - cell_exp[i];
    result.statistic += d * d / cell_exp[i];
  }
  result.p_value = boost::math::gamma_q(0.5 * result.dof,
                                        0.5 * result.statistic);
  return result;
}

}  // namespace mqft
