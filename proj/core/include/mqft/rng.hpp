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

#ifndef MQFT_RNG_HPP_
#define MQFT_RNG_HPP_

#include <cstdint>
#include <random>

namespace mqft {

/// SplitMix64 finalizer, used as the counter-based stream splitting rule.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent, reproducible random stream for (master_seed, stream_id).
/// Stream derivation is a pure function of its arguments, so trials run in
/// parallel draw exactly the bits they would draw serially.
inline std::mt19937_64 make_stream(std::uint64_t master_seed,
                                   std::uint64_t stream_id) {
  const std::uint64_t s0 = splitmix64(master_seed ^ splitmix64(stream_id));
  const std::uint64_t s1 = splitmix64(s0);
  std::seed_seq seq{static_cast<std::uint32_t>(s0),
                    static_cast<std::uint32_t>(s0 >> 32),
                    static_cast<std::uint32_t>(s1),
                    static_cast<std::uint32_t>(s1 >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1) with 53 random bits; fully determined by the
/// engine output, unlike std::uniform_real_distribution.
template <typename Rng>
double random_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

template <typename Rng>
bool random_bernoulli(Rng& rng, double p) {
  return random_unit(rng) < p;
}

}  // namespace mqft

#endif  // MQFT_RNG_HPP_
