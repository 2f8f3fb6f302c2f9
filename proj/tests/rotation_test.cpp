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

#include "mqft/rotation.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "mqft/phase_word.hpp"
#include "mqft/pipeline.hpp"
#include "test_util.hpp"

namespace mqft {
namespace {

using testing::expect_state_near;

std::vector<std::uint8_t> bits(std::initializer_list<int> list) {
  std::vector<std::uint8_t> out;
  for (int b : list) out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

TEST(RotationAngle, FirstStepHasNoFeedback) {
  const auto cmd = rotation_angle({}, 1);
  EXPECT_EQ(cmd.phi_turns, 0.0);
  EXPECT_EQ(cmd.delta, 0.0);
  EXPECT_EQ(cmd.phi_numerator, 0u);
}

TEST(RotationAngle, SingleMeasuredOneGivesQuarterTurn) {
  const auto feedback = bits({1});
  const auto cmd = rotation_angle(feedback, 2);
  EXPECT_DOUBLE_EQ(cmd.phi_turns, 0.25);
  EXPECT_EQ(cmd.phi_numerator, 1u);
  EXPECT_EQ(cmd.phi_log2_denom, 2);
  EXPECT_EQ(cmd.delta, 0.0);
}

TEST(RotationAngle, TruncationDropsLowBits) {
  // Step 8 with every feedback bit 1, kept to 5 fraction bits: the applied
  // angle is 0.01111 and the dropped tail is 2^-6 + 2^-7 + 2^-8.
  const auto feedback = bits({1, 1, 1, 1, 1, 1, 1});
  const auto cmd = rotation_angle(feedback, 8, 5);
  EXPECT_DOUBLE_EQ(cmd.phi_turns, 15.0 / 32.0);
  EXPECT_EQ(cmd.phi_numerator, 15u);
  EXPECT_EQ(cmd.phi_log2_denom, 5);
  const double expected_delta =
      kTwoPi * (std::ldexp(1.0, -6) + std::ldexp(1.0, -7) + std::ldexp(1.0, -8));
  EXPECT_NEAR(cmd.delta, expected_delta, 1e-15);
  EXPECT_LT(std::abs(cmd.delta), std::numbers::pi / std::ldexp(1.0, 4));
}

TEST(RotationAngle, ExactIntegerFormMatchesValue) {
  auto rng = testing::test_rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 40);
    std::vector<std::uint8_t> feedback(static_cast<std::size_t>(k - 1));
    for (auto& b : feedback) b = static_cast<std::uint8_t>(rng() & 1u);
    const std::optional<int> m =
        (rng() & 1u) ? std::optional<int>(2 + static_cast<int>(rng() % 10))
                     : std::nullopt;
    const auto cmd = rotation_angle(feedback, k, m);
    EXPECT_EQ(std::ldexp(static_cast<double>(cmd.phi_numerator),
                         -cmd.phi_log2_denom),
              cmd.phi_turns);
    EXPECT_GE(cmd.phi_turns, 0.0);
    EXPECT_LT(cmd.phi_turns, 0.5);
    if (m) {
      // At most m nonzero fraction bits survive truncation.
      const double scaled = std::ldexp(cmd.phi_turns, *m);
      EXPECT_EQ(scaled, std::floor(scaled));
    }
  }
}

TEST(RotationAngle, TruncationBoundHoldsExhaustively) {
  // Every feedback pattern for n <= 12 at every truncation depth 2..8.
  for (int n = 1; n <= 12; ++n) {
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << n);
         ++pattern) {
      const PhaseWord word = PhaseWord::from_integer(pattern, n);
      for (int m = 2; m <= 8; ++m) {
        std::vector<std::uint8_t> feedback;
        for (int k = 1; k <= n; ++k) {
          const auto cmd = rotation_angle(feedback, k, m);
          EXPECT_LT(std::abs(cmd.delta),
                    std::numbers::pi / std::ldexp(1.0, m - 1));
          feedback.insert(feedback.begin(),
                          word.bit(static_cast<std::size_t>(n - k + 1)));
        }
      }
    }
  }
}

TEST(RotationAngle, RejectsBadArguments) {
  const auto feedback = bits({1, 0});
  EXPECT_THROW(rotation_angle(feedback, 2), std::invalid_argument);
  EXPECT_THROW(rotation_angle(feedback, 0), std::invalid_argument);
  EXPECT_THROW(rotation_angle(feedback, 3, 0), std::invalid_argument);
  EXPECT_THROW(rotation_angle(feedback, 3, kMaxTruncationDepth + 1),
               std::invalid_argument);
}

TEST(ApplyRotation, ZeroAngleIsIdentity) {
  auto rng = testing::test_rng(4);
  const auto state = testing::random_state(rng);
  const auto cmd = rotation_angle({}, 1);
  expect_state_near(apply_rotation(state, cmd), state);
}

TEST(ApplyRotation, QuarterTurnOnPlusState) {
  const auto plus = ControlQubitState::from_relative_phase_turns(0.0);
  auto cmd = rotation_angle(bits({1}), 2);  // phi = 1/4
  const auto rotated = apply_rotation(plus, cmd);
  const double s = std::numbers::sqrt2 / 2.0;
  expect_state_near(rotated, {{s, 0.0}, {0.0, -s}});
}

TEST(ApplyRotation, CancelsKnownLowBits) {
  // Phase 0.11 minus a quarter turn leaves exactly half a turn.
  const auto state = ControlQubitState::from_relative_phase_turns(0.75);
  const auto cmd = rotation_angle(bits({1}), 2);
  const auto rotated = apply_rotation(state, cmd);
  const double s = std::numbers::sqrt2 / 2.0;
  expect_state_near(rotated, {{s, 0.0}, {-s, 0.0}});
}

TEST(ApplyRotation, FeedbackAngleLeavesCurrentBitPhase) {
  // The recursion is correct iff applying the feedback rotation to the
  // encoded input leaves relative phase pi * (current bit).
  auto rng = testing::test_rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 200;
    const PhaseWord word = PhaseWord::random(n, rng);
    const auto inputs = encode_input_states(word);
    std::vector<std::uint8_t> feedback;
    for (std::size_t k = 1; k <= n; ++k) {
      const auto cmd = rotation_angle(feedback, static_cast<int>(k));
      const auto rotated = apply_rotation(inputs[k - 1], cmd);
      const auto ratio = rotated.amp1 / rotated.amp0;
      const std::uint8_t bit = word.bit(n - k + 1);
      const double expected = bit ? -1.0 : 1.0;
      EXPECT_NEAR(ratio.real(), expected, 1e-12);
      EXPECT_NEAR(ratio.imag(), 0.0, 1e-12);
      feedback.insert(feedback.begin(), bit);
    }
  }
}

TEST(ApplyHadamard, BasisAndSuperpositions) {
  const double s = std::numbers::sqrt2 / 2.0;
  expect_state_near(apply_hadamard(ControlQubitState::ket0()),
                    {{s, 0.0}, {s, 0.0}});
  expect_state_near(apply_hadamard({{s, 0.0}, {s, 0.0}}),
                    ControlQubitState::ket0());
  // The half-wave plate convention: (|0> - |1>)/sqrt(2) -> |1>.
  expect_state_near(apply_hadamard({{s, 0.0}, {-s, 0.0}}),
                    ControlQubitState::ket1());
}

TEST(Gates, PreserveNorm) {
  auto rng = testing::test_rng(6);
  for (int trial = 0; trial < 500; ++trial) {
    auto state = testing::random_state(rng);
    ASSERT_TRUE(state.is_normalized());
    state = apply_phase(state, random_unit(rng) * 0.5,
                        (random_unit(rng) - 0.5) * 0.3);
    EXPECT_TRUE(state.is_normalized());
    state = apply_hadamard(state);
    EXPECT_TRUE(state.is_normalized());
  }
}

}  // namespace
}  // namespace mqft
