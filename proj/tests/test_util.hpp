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

#ifndef MQFT_TESTS_TEST_UTIL_HPP_
#define MQFT_TESTS_TEST_UTIL_HPP_

#include <complex>
#include <random>

#include "gtest/gtest.h"
#include "mqft/control_qubit.hpp"
#include "mqft/rng.hpp"

namespace mqft::testing {

inline std::mt19937_64 test_rng(std::uint64_t salt = 0) {
  return make_stream(0x6d71667470726f6aull, salt);
}

inline void expect_complex_near(std::complex<double> actual,
                                std::complex<double> expected,
                                double tol = 1e-12) {
  EXPECT_NEAR(actual.real(), expected.real(), tol);
  EXPECT_NEAR(actual.imag(), expected.imag(), tol);
}

inline void expect_state_near(const ControlQubitState& actual,
                              const ControlQubitState& expected,
                              double tol = 1e-12) {
  expect_complex_near(actual.amp0, expected.amp0, tol);
  expect_complex_near(actual.amp1, expected.amp1, tol);
}

/// Random normalized single-qubit state.
inline ControlQubitState random_state(std::mt19937_64& rng) {
  const double theta = random_unit(rng) * std::numbers::pi;
  const double phi = random_unit(rng) * kTwoPi;
  const double chi = random_unit(rng) * kTwoPi;
  const std::complex<double> global{std::cos(chi), std::sin(chi)};
  return {global * std::cos(theta / 2),
          global * std::complex<double>(std::cos(phi), std::sin(phi)) *
              std::sin(theta / 2)};
}

}  // namespace mqft::testing

#endif  // MQFT_TESTS_TEST_UTIL_HPP_
