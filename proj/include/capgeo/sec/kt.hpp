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
#include "capgeo/sec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace capgeo::sec {

/// Kuhn-Tucker check for the smallest enclosing circle: every point in the
/// support of `weights` lies at the same distance d0 from weights * Phi, and no
/// other point lies farther.
inline KtVerdict verify_kt_sec(SecInstance const &instance, Barycentric const &weights,
                               TolerancePolicy const &policy = {})
{
  if (weights.size() != instance.m())
  {
    throw Error(ErrorCode::LengthMismatch, "sec-solver", "weights length differs from point count");
  }
  for (std::size_t i = 0; i < weights.size(); ++i)
  {
    if (weights[i] < policy.negativity_threshold)
    {
      throw Error(ErrorCode::NegativeWeight, "sec-solver",
                  "weight " + std::to_string(i) + " is negative (" + std::to_string(weights[i]) + ")");
    }
  }
  Barycentric const w      = weights.clamped(policy.negativity_threshold);
  Vector const      center = barycentric_to_point(w, instance.points());

  Vector dist(static_cast<Eigen::Index>(instance.m()));
  for (Eigen::Index i = 0; i < dist.size(); ++i)
  {
    dist(i) = distance(instance.points().row(i).transpose(), center);
  }

  double d0 = 0.0;
  for (std::size_t i : w.support())
  {
    d0 = std::max(d0, dist(static_cast<Eigen::Index>(i)));
  }
  bool ok = true;
  for (Eigen::Index i = 0; i < dist.size(); ++i)
  {
    if (w.weights()(i) > 0.0)
    {
      ok = ok && std::abs(dist(i) - d0) <= policy.kt_rel_tol * d0;
    }
    else
    {
      ok = ok && dist(i) <= d0 * (1.0 + policy.kt_rel_tol);
    }
  }
  return {ok, d0};
}

}  // namespace capgeo::sec
