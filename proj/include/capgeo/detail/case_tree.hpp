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

#include "capgeo/core/types.hpp"

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <string>
#include <utility>

// Exact decision tree for m = 2, 3, 4 generators in general position, shared
// by the Euclidean and the information-geometric solvers. A geometry supplies
// the barycentric coordinate of the equidistant point Q0 and of projections of
// Q0 onto sub-hulls; the tree only inspects signs.

namespace capgeo::detail {

template <class G>
concept ProjectionGeometry = requires(G const &g, IndexSet const &subset) {
  { g.size() } -> std::convertible_to<std::size_t>;
  /// Full-length barycentric coordinate of Q0.
  { g.equidistant_weights() } -> std::convertible_to<Vector>;
  /// Full-length barycentric coordinate of pi(Q0 | L(subset)).
  { g.projected_weights(subset) } -> std::convertible_to<Vector>;
};

struct CaseTreeResult
{
  Vector      weights;
  std::string label;
};

inline IndexSet negatives_among(Vector const &w, IndexSet const &idx, double threshold)
{
  IndexSet out;
  for (std::size_t i : idx)
  {
    if (w(static_cast<Eigen::Index>(i)) < threshold)
    {
      out.push_back(i);
    }
  }
  return out;
}

inline IndexSet without(IndexSet s, std::size_t i)
{
  s.erase(std::remove(s.begin(), s.end(), i), s.end());
  return s;
}

[[noreturn]] inline void inconsistent_signs(std::string const &where)
{
  throw Error(ErrorCode::DegeneratePlacement, "case-tree",
              "sign pattern impossible for a placement in general position (" + where + ")");
}

template <ProjectionGeometry G>
CaseTreeResult solve_case_tree(G const &g, double threshold)
{
  std::size_t const m = g.size();
  if (m < 2 || m > 4)
  {
    throw Error(ErrorCode::InvalidArgument, "case-tree", "exact tree covers 2 <= m <= 4 only");
  }
  IndexSet const all = all_indices(m);
  Vector const   l0  = g.equidistant_weights();
  IndexSet const neg = negatives_among(l0, all, threshold);

  if (m == 2)
  {
    if (!neg.empty())
    {
      inconsistent_signs("m=2");
    }
    return {l0, "2"};
  }

  if (m == 3)
  {
    if (neg.empty())
    {
      return {l0, "3-1"};
    }
    if (neg.size() == 1)
    {
      return {g.projected_weights(without(all, neg[0])), "3-2"};
    }
    inconsistent_signs("m=3");
  }

  // m == 4
  if (neg.empty())
  {
    return {l0, "4-1"};
  }
  if (neg.size() == 1)
  {
    IndexSet const rest = without(all, neg[0]);
    Vector const   l1   = g.projected_weights(rest);
    IndexSet const neg1 = negatives_among(l1, rest, threshold);
    if (neg1.empty())
    {
      return {l1, "4-2-1"};
    }
    if (neg1.size() == 1)
    {
      return {g.projected_weights(without(rest, neg1[0])), "4-2-2"};
    }
    inconsistent_signs("case 4-2");
  }
  if (neg.size() == 2)
  {
    std::size_t    a      = neg[0];
    std::size_t    b      = neg[1];
    IndexSet const others = without(without(all, a), b);
    Vector         l11    = g.projected_weights(without(all, a));
    Vector         l12    = g.projected_weights(without(all, b));
    auto const     at     = [](Vector const &w, std::size_t i) { return w(static_cast<Eigen::Index>(i)); };

    // At least one of lambda^{1(2)}_a, lambda^{1(1)}_b is negative; relabel so
    // that the first one is.
    if (!(at(l12, a) < threshold))
    {
      if (!(at(l11, b) < threshold))
      {
        inconsistent_signs("case 4-3");
      }
      std::swap(a, b);
      std::swap(l11, l12);
    }
    IndexSet const bcd  = without(all, a);
    IndexSet const neg1 = negatives_among(l11, bcd, threshold);
    if (neg1.empty())
    {
      return {l11, "4-3-1"};
    }
    if (neg1.size() == 1 && neg1[0] == b)
    {
      return {g.projected_weights(others), "4-3-2"};
    }
    if (neg1.size() == 1)
    {
      // neg1[0] is one of the two points with nonnegative lambda^0.
      return {g.projected_weights(without(bcd, neg1[0])), "4-3-3"};
    }
    inconsistent_signs("case 4-3 second step");
  }
  inconsistent_signs("m=4");
}

}  // namespace capgeo::detail
