/*
 * Copyright 2026 The egb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>

namespace egb {

/// splitmix64 finalizer; full-avalanche mix of a 64-bit word.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Small, fast splitmix64 generator. Every sampling site derives its own
/// stream from a key path, so values depend only on (seed, keys) and never on
/// the order in which streams are consumed.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix64(state_);
  }

  /// Uniform in [0, 1), 53 random bits.
  double next_unit() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * next_unit();
  }

 private:
  std::uint64_t state_;
};

/// Child stream seed for a (parent, key) pair.
inline constexpr std::uint64_t derive_seed(std::uint64_t parent,
                                           std::uint64_t key) noexcept {
  return mix64(parent ^ (0x9e3779b97f4a7c15ULL + key * 0xd1342543de82ef95ULL));
}

/// Folds a key path into a stream seed: derive_path(root, k1, k2, ...).
template <typename... Keys>
inline constexpr std::uint64_t derive_path(std::uint64_t root,
                                           Keys... keys) noexcept {
  std::uint64_t s = root;
  ((s = derive_seed(s, static_cast<std::uint64_t>(keys))), ...);
  return s;
}

namespace stream {
// Top-level purpose tags; keep independent sampling uses on disjoint streams.
inline constexpr std::uint64_t traffic_model = 1;
inline constexpr std::uint64_t mc_loads = 2;
inline constexpr std::uint64_t upsilon = 3;
inline constexpr std::uint64_t realization = 4;
}  // namespace stream

}  // namespace egb
