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

#include "capgeo/core/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>

namespace capgeo::oracles {

struct ComplexityCounts
{
  /// Subsets examined by the brute-force method.
  std::uint64_t n1 = 0;
  /// Projections performed by the heuristic in the worst case.
  std::uint64_t n2 = 0;

  double ratio() const noexcept
  {
    return static_cast<double>(n2) / static_cast<double>(n1);
  }
};

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
  if (k > n)
  {
    return 0;
  }
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
  {
    r = r * (n - k + i) / i;
  }
  return r;
}

/// N1 = sum_{l=2}^{min(m, n+1)} C(m, l), N2 = m - 2.
inline ComplexityCounts complexity_counts(std::size_t m, std::size_t n)
{
  if (m < 3 || n < 1)
  {
    throw Error(ErrorCode::InvalidArgument, "oracles", "complexity counts need m >= 3, n >= 1");
  }
  ComplexityCounts c;
  for (std::size_t l = 2; l <= std::min(m, n + 1); ++l)
  {
    c.n1 += binomial(m, l);
  }
  c.n2 = m - 2;
  return c;
}

}  // namespace capgeo::oracles
