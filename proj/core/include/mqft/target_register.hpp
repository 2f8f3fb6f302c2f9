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

#ifndef MQFT_TARGET_REGISTER_HPP_
#define MQFT_TARGET_REGISTER_HPP_

#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mqft/phase_word.hpp"

namespace mqft {

/// Exact small-scale model of the target register: a superposition of r
/// eigenstates with known eigenphase words, carrying a density matrix over
/// the eigenstate basis. Each measured-rotation step partitions the
/// eigenstates by the phase bit it interrogates; imperfect measurements
/// leave the complementary branch with residual weight instead of zeroing
/// it, which is exactly what makes repeated measurements of one step
/// statistically consistent.
class TargetRegister {
 public:
  /// Pure initial state sum_s c_s |u_s>. Eigenphase words must share one
  /// length and the coefficients must be normalized to 1e-12.
  TargetRegister(std::vector<PhaseWord> eigenphases,
                 std::vector<std::complex<double>> coeffs);

  std::size_t eigenstate_count() const { return eigenphases_.size(); }
  std::size_t n_qubits() const { return eigenphases_.front().size(); }
  const std::vector<PhaseWord>& eigenphases() const { return eigenphases_; }
  const Eigen::MatrixXcd& rho() const { return rho_; }

  /// Phase bit of eigenstate s interrogated at step k (bit n-k+1).
  std::uint8_t bit_at_step(std::size_t s, std::size_t k) const;

  /// Diagonal mass currently sitting on eigenstates whose step-k bit is 0.
  double branch_zero_mass(std::size_t k) const;

  double purity() const;  // Tr(rho^2)

  /// Throws std::runtime_error unless rho is Hermitian, trace-1 and
  /// positive semidefinite within tol.
  void check_density_matrix(double tol = 1e-12) const;

  // Collapse plumbing shared by the free functions below; returns the
  // Born probability of the requested outcome and renormalizes rho.
  double apply_selective(std::size_t k, double visibility, double delta,
                         std::uint8_t outcome);
  void apply_nonselective(std::size_t k, double delta);

 private:
  std::vector<PhaseWord> eigenphases_;
  Eigen::MatrixXcd rho_;
};

/// Weights and membership of the two current-bit branches.
struct BranchSplit {
  double w0 = 0.0;
  double w1 = 0.0;
  std::vector<std::size_t> members0;
  std::vector<std::size_t> members1;
};

/// Partitions the weight-carrying eigenstates by their step-k bit.
/// `accepted_bits` are the k-1 bits measured so far in measurement order
/// (the lowest word bit first); if no surviving eigenstate is consistent
/// with them the history is contradictory and a std::runtime_error is
/// thrown. Weights are diagonal rho masses normalized to w0 + w1 = 1 and
/// deliberately keep whatever weight an "inconsistent" eigenstate retained
/// through earlier imperfect measurements.
BranchSplit branch_split(const TargetRegister& reg, std::size_t k,
                         std::span<const std::uint8_t> accepted_bits);

struct MeasurementResult {
  std::uint8_t outcome = 0;
  double p0 = 0.0;  // probability the measurement had of reading 0
};

/// Probability of reading 0 at step k on the current state:
/// [1 + (2 w0 - 1) v cos(delta)]/2 with w0 the branch-0 mass.
double outcome_zero_probability(const TargetRegister& reg, std::size_t k,
                                double visibility, double delta);

/// One imperfect measurement of step k: the control qubit picks up phase
/// error delta, is Hadamard-transformed and read through the visibility
/// POVM; rho collapses to the corresponding outcome mixture.
MeasurementResult measure_control_collapse(TargetRegister& reg, std::size_t k,
                                           double visibility, double delta,
                                           std::mt19937_64& rng);

/// Same collapse with a forced outcome; returns the probability that
/// outcome had. Used for exact trajectory enumeration.
double collapse_with_outcome(TargetRegister& reg, std::size_t k,
                             double visibility, double delta,
                             std::uint8_t outcome);

/// The measurement happened but the photon was lost: rho becomes the
/// unread-outcome mixture. The visibility drops out of this channel
/// (the two POVM effects sum to the identity), so it is trace preserving
/// for any v.
void nonselective_collapse(TargetRegister& reg, std::size_t k,
                           double visibility, double delta);

}  // namespace mqft

#endif  // MQFT_TARGET_REGISTER_HPP_
