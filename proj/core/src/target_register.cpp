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

#include "mqft/target_register.hpp"

#include <cmath>
#include <stdexcept>

#include "mqft/rng.hpp"

namespace mqft {

namespace {

constexpr double kWeightEps = 1e-12;

// Per-eigenstate amplitudes the control qubit ends up with after the
// rotation, phase error delta and Hadamard: a branch-b eigenstate
// contributes (1 + e^{i(pi b + delta)})/2 to outcome 0 and
// (1 - e^{i(pi b + delta)})/2 to outcome 1.
struct StepAmplitudes {
  std::complex<double> a0;  // outcome-0 amplitude, branch bit 0
  std::complex<double> a1;  // outcome-0 amplitude, branch bit 1
  std::complex<double> b0;  // outcome-1 amplitude, branch bit 0
  std::complex<double> b1;  // outcome-1 amplitude, branch bit 1
};

StepAmplitudes step_amplitudes(double delta) {
  const std::complex<double> e{std::cos(delta), std::sin(delta)};
  StepAmplitudes s;
  s.a0 = 0.5 * (1.0 + e);
  s.b0 = 0.5 * (1.0 - e);
  s.a1 = s.b0;  // bit 1 swaps the roles: 1 + e^{i(pi+delta)} = 1 - e^{i delta}
  s.b1 = s.a0;
  return s;
}

}  // namespace

TargetRegister::TargetRegister(std::vector<PhaseWord> eigenphases,
                               std::vector<std::complex<double>> coeffs)
    : eigenphases_(std::move(eigenphases)) {
  if (eigenphases_.empty()) {
    throw std::invalid_argument("TargetRegister: need >= 1 eigenstate");
  }
  if (coeffs.size() != eigenphases_.size()) {
    throw std::invalid_argument(
        "TargetRegister: coefficient/eigenphase count mismatch");
  }
  const std::size_t n = eigenphases_.front().size();
  for (const auto& w : eigenphases_) {
    if (w.size() != n) {
      throw std::invalid_argument(
          "TargetRegister: eigenphase words must share one length");
    }
  }
  double norm = 0.0;
  for (const auto& c : coeffs) norm += std::norm(c);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw std::invalid_argument(
        "TargetRegister: coefficients must be normalized");
  }
  const auto r = static_cast<Eigen::Index>(coeffs.size());
  Eigen::VectorXcd c(r);
  for (Eigen::Index s = 0; s < r; ++s) c(s) = coeffs[s];
  rho_ = c * c.adjoint();
}

std::uint8_t TargetRegister::bit_at_step(std::size_t s, std::size_t k) const {
  const std::size_t n = n_qubits();
  if (k < 1 || k > n) {
    throw std::invalid_argument("TargetRegister: step out of range");
  }
  return eigenphases_[s].bit(n - k + 1);
}

double TargetRegister::branch_zero_mass(std::size_t k) const {
  double w0 = 0.0;
  for (std::size_t s = 0; s < eigenstate_count(); ++s) {
    if (bit_at_step(s, k) == 0) w0 += rho_(s, s).real();
  }
  return w0;
}

double TargetRegister::purity() const {
  return (rho_ * rho_).trace().real();
}

void TargetRegister::check_density_matrix(double tol) const {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) {
    throw std::runtime_error("TargetRegister: rho is not Hermitian");
  }
  if (std::abs(rho_.trace().real() - 1.0) > tol ||
      std::abs(rho_.trace().imag()) > tol) {
    throw std::runtime_error("TargetRegister: rho trace deviates from 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw std::runtime_error("TargetRegister: rho has a negative eigenvalue");
  }
}

double TargetRegister::apply_selective(std::size_t k, double visibility,
                                       double delta, std::uint8_t outcome) {
  const auto amp = step_amplitudes(delta);
  const auto r = static_cast<Eigen::Index>(eigenstate_count());
  Eigen::VectorXcd a(r), b(r);
  for (Eigen::Index s = 0; s < r; ++s) {
    const bool bit = bit_at_step(static_cast<std::size_t>(s), k) == 1;
    a(s) = bit ? amp.a1 : amp.a0;
    b(s) = bit ? amp.b1 : amp.b0;
  }
  const double w_match = 0.5 * (1.0 + visibility);
  const double w_other = 0.5 * (1.0 - visibility);
  const double wa = outcome == 0 ? w_match : w_other;
  const double wb = outcome == 0 ? w_other : w_match;
  const Eigen::MatrixXcd unnormalized =
      wa * (a * a.adjoint()).cwiseProduct(rho_) +
      wb * (b * b.adjoint()).cwiseProduct(rho_);
  const double p = unnormalized.trace().real();
  if (p <= 0.0) {
    throw std::runtime_error(
        "TargetRegister: measurement outcome has zero probability");
  }
  rho_ = unnormalized / p;
  rho_ = 0.5 * (rho_ + rho_.adjoint().eval());
  return p;
}

void TargetRegister::apply_nonselective(std::size_t k, double delta) {
  const auto amp = step_amplitudes(delta);
  const auto r = static_cast<Eigen::Index>(eigenstate_count());
  Eigen::VectorXcd a(r), b(r);
  for (Eigen::Index s = 0; s < r; ++s) {
    const bool bit = bit_at_step(static_cast<std::size_t>(s), k) == 1;
    a(s) = bit ? amp.a1 : amp.a0;
    b(s) = bit ? amp.b1 : amp.b0;
  }
  rho_ = (a * a.adjoint()).cwiseProduct(rho_) +
         (b * b.adjoint()).cwiseProduct(rho_);
  rho_ = 0.5 * (rho_ + rho_.adjoint().eval());
}

BranchSplit branch_split(const TargetRegister& reg, std::size_t k,
                         std::span<const std::uint8_t> accepted_bits) {
  if (accepted_bits.size() != k - 1) {
    throw std::invalid_argument("branch_split: expected k-1 accepted bits");
  }
  const std::size_t n = reg.n_qubits();

  BranchSplit split;
  double mass0 = 0.0;
  double mass1 = 0.0;
  bool any_consistent = false;
  for (std::size_t s = 0; s < reg.eigenstate_count(); ++s) {
    const double mass = reg.rho()(static_cast<Eigen::Index>(s),
                                  static_cast<Eigen::Index>(s))
                            .real();
    if (mass <= kWeightEps) continue;

    bool consistent = true;
    for (std::size_t j = 0; j < accepted_bits.size(); ++j) {
      // accepted_bits[j] was measured at step j+1, probing word bit n-j.
      if (reg.eigenphases()[s].bit(n - j) != accepted_bits[j]) {
        consistent = false;
        break;
      }
    }
    any_consistent = any_consistent || consistent;

    if (reg.bit_at_step(s, k) == 0) {
      split.members0.push_back(s);
      mass0 += mass;
    } else {
      split.members1.push_back(s);
      mass1 += mass;
    }
  }
  const double total = mass0 + mass1;
  if (total <= 0.0 || (split.members0.empty() && split.members1.empty())) {
    throw std::runtime_error("branch_split: no surviving eigenstates");
  }
  if (!any_consistent) {
    throw std::runtime_error(
        "branch_split: measurement history is inconsistent with every "
        "surviving eigenstate");
  }
  split.w0 = mass0 / total;
  split.w1 = mass1 / total;
  return split;
}

double outcome_zero_probability(const TargetRegister& reg, std::size_t k,
                                double visibility, double delta) {
  const double w0 = reg.branch_zero_mass(k);
  return 0.5 * (1.0 + (2.0 * w0 - 1.0) * visibility * std::cos(delta));
}

MeasurementResult measure_control_collapse(TargetRegister& reg, std::size_t k,
                                           double visibility, double delta,
                                           std::mt19937_64& rng) {
  MeasurementResult result;
  result.p0 = outcome_zero_probability(reg, k, visibility, delta);
  result.outcome = random_unit(rng) < result.p0 ? 0 : 1;
  reg.apply_selective(k, visibility, delta, result.outcome);
  return result;
}

double collapse_with_outcome(TargetRegister& reg, std::size_t k,
                             double visibility, double delta,
                             std::uint8_t outcome) {
  return reg.apply_selective(k, visibility, delta, outcome);
}

void nonselective_collapse(TargetRegister& reg, std::size_t k,
                           double visibility, double delta) {
  if (visibility < 0.0 || visibility > 1.0) {
    throw std::invalid_argument("nonselective_collapse: visibility in [0,1]");
  }
  reg.apply_nonselective(k, delta);
}

}  // namespace mqft
