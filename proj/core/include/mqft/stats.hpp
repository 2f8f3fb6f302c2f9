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

#ifndef MQFT_STATS_HPP_
#define MQFT_STATS_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace mqft {

/// Run lengths of an ensemble of trials. run_lengths[i] is the step index
/// of trial i's first wrong bit, or n_qubits with the censored flag set
/// when the whole trial succeeded.
struct TrialStats {
  std::vector<std::size_t> run_lengths;
  std::vector<std::uint8_t> censored;
  std::size_t n_qubits = 0;

  void validate() const;
};

/// P(first error at step n) = (1-p)^{n-1} p. The mean of the distribution
/// is 1/p, which is how a mean run length converts into an error rate.
double geometric_pmf(std::size_t n, double p);

struct ErrorRateEstimates {
  double inverse_mean = 0.0;     // 1 / mean(run lengths), ignores censoring
  double censoring_aware = 0.0;  // uncensored trials / total run length
  bool all_censored = false;
};

/// Both error-rate readings of the same data. The inverse-mean form treats
/// full-success runs as if they had failed right after the last qubit and
/// biases high on heavily censored data; the censoring-aware form is the
/// geometric maximum-likelihood estimate under right censoring.
ErrorRateEstimates estimate_error_rate(const TrialStats& stats);

struct MajoritySpec {
  int repetitions = 1;  // M
  double p = 0.0;       // per-measurement error probability
};

/// Error probability after majority-voting M repetitions:
/// sum_{j=0}^{floor(M/2)} C(M,j) p^{M-j} (1-p)^j. The floor(M/2) limit
/// makes ties at even M count as errors.
double majority_vote_error(const MajoritySpec& spec);

enum class PminConvention {
  cumulative,  // a trial "fails by k" with probability 1-(1-p)^k
  exact_at_k,  // a trial "fails by k" with the pmf (1-p)^{k-1} p
};

struct ConfidenceBounds {
  double p_min = 0.0;
  double p_max = 0.0;
};

/// Tail bounds on the per-qubit error probability from extreme trial
/// outcomes. p_max is the error rate at which seeing >= n_max full
/// successes of k_max qubits among n_trials becomes less likely than
/// alpha; p_min is the rate at which seeing >= n_min early failures at
/// k_min becomes less likely than alpha, under the chosen convention for
/// "fails by k_min". Both are located by bisection to relative tolerance
/// well below 1e-6.
///
/// Throws std::invalid_argument on inconsistent inputs and
/// std::runtime_error when a bracket has no sign change (e.g. n_max = 0).
ConfidenceBounds confidence_bounds(std::size_t k_max, std::size_t n_max,
                                   std::size_t k_min, std::size_t n_min,
                                   std::size_t n_trials, std::size_t n_qubits,
                                   double alpha,
                                   PminConvention convention =
                                       PminConvention::cumulative);

/// P(X >= successes) for X ~ Binomial(trials, q).
double binomial_tail_geq(std::size_t trials, std::size_t successes, double q);

struct GofResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins = 0;

  bool passes(double significance) const { return p_value > significance; }
};

/// Pearson chi-square of observed run lengths against the geometric model
/// at a known p, with censored mass as its own cell. Cells are merged until
/// every expected count reaches min_expected.
GofResult geometric_goodness_of_fit(const TrialStats& stats, double p,
                                    double min_expected = 5.0);

}  // namespace mqft

#endif  // MQFT_STATS_HPP_
