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

#ifndef MQFT_PHASE_WORD_HPP_
#define MQFT_PHASE_WORD_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mqft {

/// Hard cap on the number of fraction bits a phase word may carry.
inline constexpr std::size_t kMaxPhaseBits = 4096;

/// An n-bit binary fraction 0.b1 b2 ... bn, most significant fraction bit
/// first. Used both as the ground-truth phase fed into a trial and as the
/// word recovered from its measurements.
class PhaseWord {
 public:
  PhaseWord() = default;

  explicit PhaseWord(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    check(bits_);
  }

  /// Parses "101", "0.101" or ".101".
  static PhaseWord from_string(const std::string& text) {
    std::string digits = text;
    if (digits.rfind("0.", 0) == 0) {
      digits = digits.substr(2);
    } else if (!digits.empty() && digits.front() == '.') {
      digits = digits.substr(1);
    }
    std::vector<std::uint8_t> bits;
    bits.reserve(digits.size());
    for (char c : digits) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("PhaseWord: invalid character in \"" +
                                    text + "\"");
      }
      bits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return PhaseWord(std::move(bits));
  }

  /// n uniformly random bits.
  template <typename Rng>
  static PhaseWord random(std::size_t n, Rng& rng) {
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng() & 1u);
    return PhaseWord(std::move(bits));
  }

  /// The `n` low-order fraction bits of `value` (value interpreted as a
  /// dyadic integer numerator over 2^n).
  static PhaseWord from_integer(std::uint64_t value, std::size_t n) {
    if (n > 63) throw std::invalid_argument("PhaseWord::from_integer: n > 63");
    std::vector<std::uint8_t> bits(n);
    for (std::size_t i = 0; i < n; ++i) {
      bits[i] = static_cast<std::uint8_t>((value >> (n - 1 - i)) & 1u);
    }
    return PhaseWord(std::move(bits));
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  /// Fraction bit b_k, 1-indexed: bit(1) carries weight 1/2.
  std::uint8_t bit(std::size_t k) const { return bits_.at(k - 1); }

  std::span<const std::uint8_t> bits() const { return bits_; }

  /// Numeric value sum_k b_k 2^{-k} in [0, 1), correctly rounded folding
  /// from the least significant bit up.
  double value() const {
    double v = 0.0;
    for (auto it = bits_.rbegin(); it != bits_.rend(); ++it) {
      v = (v + static_cast<double>(*it)) * 0.5;
    }
    return v;
  }

  std::string to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
  }

  /// Word as an integer with b1 in the most significant position.
  /// Requires size() <= 63.
  std::uint64_t to_integer() const {
    if (bits_.size() > 63) {
      throw std::invalid_argument("PhaseWord::to_integer: word too long");
    }
    std::uint64_t v = 0;
    for (auto b : bits_) v = (v << 1) | b;
    return v;
  }

  friend bool operator==(const PhaseWord&, const PhaseWord&) = default;

 private:
  static void check(const std::vector<std::uint8_t>& bits) {
    if (bits.empty()) throw std::invalid_argument("PhaseWord: need n >= 1");
    if (bits.size() > kMaxPhaseBits) {
      throw std::invalid_argument("PhaseWord: n exceeds " +
                                  std::to_string(kMaxPhaseBits));
    }
    for (auto b : bits) {
      if (b > 1) throw std::invalid_argument("PhaseWord: bits must be 0/1");
    }
  }

  std::vector<std::uint8_t> bits_;
};

}  // namespace mqft

#endif  // MQFT_PHASE_WORD_HPP_
