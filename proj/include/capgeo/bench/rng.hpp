#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The capgeo Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <cstddef>
#include <cstdint>
#include <limits>

namespace capgeo::bench {

/// Identifies one trial of one cell of an experiment.
struct TrialKey
{
  std::uint64_t base_seed = 0;
  std::size_t   m         = 0;
  std::size_t   n         = 0;
  std::size_t   trial     = 0;
};

/// SplitMix64 as a counter-based generator: output i of a stream is the
/// SplitMix64 finaliser applied to key + (i + 1) * golden gamma. Streams
/// for different TrialKeys are independent, so trials can run in any order.
class SplitMix64
{
public:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept
  {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  explicit constexpr SplitMix64(std::uint64_t key) noexcept
    : key_(key)
  {}

  explicit constexpr SplitMix64(TrialKey const &k) noexcept
    : key_(mix(mix(mix(mix(k.base_seed) ^ (k.m * kGamma)) ^ (k.n * 0xd1b54a32d192ed03ULL)) ^
               (k.trial * 0xaef17502108ef2d9ULL)))
  {}

  constexpr std::uint64_t next() noexcept
  {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  /// Uniform integer in [lo, hi] by rejection (no modulo bias).
  constexpr std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept
  {
    auto const          span  = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t v = next();
    while (v >= limit)
    {
      v = next();
    }
    return lo + static_cast<std::int64_t>(v % span);
  }

  /// Uniform double in the open interval (0, 1).
  constexpr double uniform_open01() noexcept
  {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  constexpr std::uint64_t counter() const noexcept
  {
    return counter_;
  }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace capgeo::bench
