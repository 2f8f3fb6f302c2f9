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
#include <stdexcept>
#include <string>

namespace mqft {

namespace {

// Value of 0.b[0] b[1] ... b[len-1] folded from the least significant bit,
// so the result is the correctly rounded double of the exact fraction.
double fold_fraction(std::span<const std::uint8_t> bits) {
  double v = 0.0;
  for (std::size_t i = bits.size(); i > 0; --i) {
    v = (v + static_cast<double>(bits[i - 1])) * 0.5;
  }
  return v;
}

}  // namespace

RotationCommand rotation_angle(std::span<const std::uint8_t> measured_bits,
                               int k, std::optional<int> m) {
  if (k < 1) throw std::invalid_argument("rotation_angle: k must be >= 1");
  if (measured_bits.size() != static_cast<std::size_t>(k - 1)) {
    throw std::invalid_argument(
        "rotation_angle: expected " + std::to_string(k - 1) +
        " measured bits, got " + std::to_string(measured_bits.size()));
  }
  if (m && (*m < 1 || *m > kMaxTruncationDepth)) {
    throw std::invalid_argument("rotation_angle: truncation depth out of [1," +
                                std::to_string(kMaxTruncationDepth) + "]");
  }

  RotationCommand cmd;
  cmd.step = k;
  cmd.truncation_depth = m;

  // measured_bits[j] sits at fraction position j+2 of the angle; positions
  // up to m are kept, everything below is the truncation remainder.
  std::size_t kept = measured_bits.size();
  if (m && static_cast<std::size_t>(*m) - 1 < kept) {
    kept = static_cast<std::size_t>(*m) - 1;
  }

  cmd.phi_turns = 0.5 * fold_fraction(measured_bits.first(kept));
  if (kept <= 52) {
    // Short enough for the exact integer form directly from the bits.
    std::uint64_t numerator = 0;
    for (std::size_t j = 0; j < kept; ++j) {
      numerator = (numerator << 1) | measured_bits[j];
    }
    cmd.phi_numerator = numerator;
    cmd.phi_log2_denom = static_cast<int>(kept) + 1;
  } else if (cmd.phi_turns == 0.0) {
    cmd.phi_numerator = 0;
    cmd.phi_log2_denom = 1;
  } else {
    // Untruncated long angle: the applied value is the rounded double, and
    // every double is itself a dyadic rational.
    int exp2 = 0;
    const double mant = std::frexp(cmd.phi_turns, &exp2);
    cmd.phi_numerator = static_cast<std::uint64_t>(std::ldexp(mant, 53));
    cmd.phi_log2_denom = 53 - exp2;
  }

  if (kept < measured_bits.size()) {
    // Dropped tail starts at fraction position kept+2; its value is
    // 2^{-(kept+1)} * 0.(remaining bits).
    const double tail = fold_fraction(measured_bits.subspan(kept));
    cmd.delta = kTwoPi * std::ldexp(tail, -(static_cast<int>(kept) + 1));
  } else {
    cmd.delta = 0.0;
  }
  return cmd;
}

}  // namespace mqft
