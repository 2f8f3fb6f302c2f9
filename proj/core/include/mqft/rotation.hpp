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

#ifndef MQFT_ROTATION_HPP_
#define MQFT_ROTATION_HPP_

#include <cstdint>
#include <optional>
#include <span>

#include "mqft/control_qubit.hpp"

namespace mqft {

/// Truncation depths are limited so that a truncated feedback angle is an
/// exactly representable double (at most 52 fraction bits survive).
inline constexpr int kMaxTruncationDepth = 52;

/// The classically controlled feedback rotation for one step: the angle is
/// assembled from the bits measured so far, optionally truncated to a fixed
/// number of fraction bits.
///
/// The applied angle is an exact dyadic rational,
/// phi_turns == phi_numerator / 2^phi_log2_denom.
struct RotationCommand {
  int step = 1;                        // k, 1-based
  double phi_turns = 0.0;              // applied angle in turns, in [0, 1/2)
  std::uint64_t phi_numerator = 0;
  int phi_log2_denom = 1;
  std::optional<int> truncation_depth; // m; empty = exact feedback
  double delta = 0.0;                  // 2 pi (phi_exact - phi_turns), radians
};

/// Feedback angle for step k from the k-1 previously measured bits.
///
/// `measured_bits` is ordered most recent measurement first, so element j
/// (0-based) carries weight 2^{-(j+2)} turns; the bit measured first (the
/// lowest fraction bit of the estimated word) comes last. With a truncation
/// depth m, fraction bits of the angle below position m are dropped and the
/// dropped value is reported as `delta` in radians.
///
/// Throws std::invalid_argument if measured_bits.size() != k-1 or m is out
/// of [1, kMaxTruncationDepth].
RotationCommand rotation_angle(std::span<const std::uint8_t> measured_bits,
                               int k, std::optional<int> m = std::nullopt);

/// Applies the rotation: amp1 *= exp(-2 pi i phi + i extra_delta).
/// `extra_delta` carries drive-voltage quantization error and any
/// user-injected phase error; the truncation error is already realized by
/// phi being the truncated angle.
inline ControlQubitState apply_rotation(const ControlQubitState& state,
                                        const RotationCommand& cmd,
                                        double extra_delta = 0.0) {
  return apply_phase(state, cmd.phi_turns, extra_delta);
}

}  // namespace mqft

#endif  // MQFT_ROTATION_HPP_
