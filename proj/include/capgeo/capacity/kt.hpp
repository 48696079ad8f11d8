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

#include "capgeo/capacity/channel.hpp"
#include "capgeo/capacity/divergence.hpp"
#include "capgeo/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace capgeo::capacity {

/// D(P^i || lambda Phi) for every row.
inline Vector row_divergences(Eigen::Ref<const Matrix> const &rows, Eigen::Ref<const Vector> const &q)
{
  Vector d(rows.rows());
  for (Eigen::Index i = 0; i < d.size(); ++i)
  {
    d(i) = kl_divergence(rows.row(i).transpose(), q);
  }
  return d;
}

/// Kuhn-Tucker check for capacity: D(P^i || lambda Phi) equals C0 on the
/// support and is at most C0 elsewhere. `level` is C0 in nats.
inline KtVerdict verify_kt_capacity(Eigen::Ref<const Matrix> const &rows, Barycentric const &weights,
                                    TolerancePolicy const &policy = {})
{
  if (weights.size() != static_cast<std::size_t>(rows.rows()))
  {
    throw Error(ErrorCode::LengthMismatch, "capacity-solver", "weights length differs from row count");
  }
  for (std::size_t i = 0; i < weights.size(); ++i)
  {
    if (weights[i] < policy.negativity_threshold)
    {
      throw Error(ErrorCode::NegativeWeight, "capacity-solver",
                  "weight " + std::to_string(i) + " is negative (" + std::to_string(weights[i]) + ")");
    }
  }
  Barycentric const w = weights.clamped(policy.negativity_threshold);
  Vector const      d = row_divergences(rows, rows.transpose() * w.weights());

  double c0 = 0.0;
  for (std::size_t i : w.support())
  {
    c0 = std::max(c0, d(static_cast<Eigen::Index>(i)));
  }
  bool ok = true;
  for (Eigen::Index i = 0; i < d.size(); ++i)
  {
    if (w.weights()(i) > 0.0)
    {
      ok = ok && std::abs(d(i) - c0) <= policy.kt_rel_tol * c0;
    }
    else
    {
      ok = ok && d(i) <= c0 * (1.0 + policy.kt_rel_tol);
    }
  }
  return {ok, c0};
}

inline KtVerdict verify_kt_capacity(Channel const &channel, Barycentric const &weights,
                                    TolerancePolicy const &policy = {})
{
  return verify_kt_capacity(channel.matrix(), weights, policy);
}

namespace detail {

/// Fills output, capacity (max over all rows), support and the KT verdict.
inline CapacitySolution finish_capacity(Eigen::Ref<const Matrix> const &rows, Vector weights,
                                        TolerancePolicy const &policy)
{
  CapacitySolution sol;
  sol.weights     = Barycentric(std::move(weights)).clamped(policy.negativity_threshold);
  sol.output_dist = Distribution::normalized(rows.transpose() * sol.weights.weights());
  sol.support     = sol.weights.support();

  sol.capacity_nats = std::max(0.0, row_divergences(rows, sol.output_dist.probs()).maxCoeff());
  sol.capacity_bits = nats_to_bits(sol.capacity_nats);
  sol.kt_certified  = verify_kt_capacity(rows, sol.weights, policy).certified;
  return sol;
}

}  // namespace detail

}  // namespace capgeo::capacity
