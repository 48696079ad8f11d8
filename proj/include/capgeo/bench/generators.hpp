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

#include "capgeo/bench/rng.hpp"
#include "capgeo/capacity/channel.hpp"
#include "capgeo/core/types.hpp"
#include "capgeo/sec/geometry.hpp"

#include <cstddef>

namespace capgeo::bench {

inline constexpr std::int64_t kCoordinateBound = 1000;

/// m points with integer coordinates uniform on [-1000, 1000]; a point equal
/// to an earlier one is redrawn.
inline sec::SecInstance gen_sec_instance(std::size_t m, std::size_t n, TrialKey const &key)
{
  if (m < 2 || n < 1)
  {
    throw Error(ErrorCode::InvalidArgument, "bench-harness", "SEC instances need m >= 2, n >= 1");
  }
  SplitMix64 rng(key);
  auto const rows = static_cast<Eigen::Index>(m);
  auto const cols = static_cast<Eigen::Index>(n);
  Matrix     p(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
  {
    bool fresh = false;
    while (!fresh)
    {
      for (Eigen::Index j = 0; j < cols; ++j)
      {
        p(i, j) = static_cast<double>(rng.uniform_int(-kCoordinateBound, kCoordinateBound));
      }
      fresh = true;
      for (Eigen::Index k = 0; k < i && fresh; ++k)
      {
        fresh = p.row(k) != p.row(i);
      }
    }
  }
  return sec::SecInstance(std::move(p));
}

/// m rows (U_1, ..., U_n) / sum U with U_j uniform on (0, 1).
inline capacity::Channel gen_channel_instance(std::size_t m, std::size_t n, TrialKey const &key)
{
  if (m < 2 || n < 2)
  {
    throw Error(ErrorCode::InvalidArgument, "bench-harness", "channels need m >= 2, n >= 2");
  }
  SplitMix64 rng(key);
  auto const rows = static_cast<Eigen::Index>(m);
  auto const cols = static_cast<Eigen::Index>(n);
  Matrix     a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
  {
    bool fresh = false;
    while (!fresh)
    {
      for (Eigen::Index j = 0; j < cols; ++j)
      {
        a(i, j) = rng.uniform_open01();
      }
      a.row(i) /= a.row(i).sum();
      fresh = true;
      for (Eigen::Index k = 0; k < i && fresh; ++k)
      {
        fresh = a.row(k) != a.row(i);
      }
    }
  }
  return capacity::Channel(std::move(a));
}

}  // namespace capgeo::bench
