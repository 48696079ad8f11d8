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
#include "capgeo/core/types.hpp"

#include <algorithm>
#include <cmath>

namespace capgeo::capacity {

/// Shannon entropy in nats.
inline double entropy(Eigen::Ref<const Vector> const &p)
{
  double h = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j)
  {
    if (p(j) > 0.0)
    {
      h -= p(j) * std::log(p(j));
    }
  }
  return h;
}

/// D(p || q) in nats for vectors of equal length with q > 0.
inline double kl_divergence(Eigen::Ref<const Vector> const &p, Eigen::Ref<const Vector> const &q)
{
  if (p.size() != q.size())
  {
    throw Error(ErrorCode::LengthMismatch, "capacity-solver", "divergence: length mismatch");
  }
  double d = 0.0;
  for (Eigen::Index j = 0; j < p.size(); ++j)
  {
    if (p(j) > 0.0)
    {
      d += p(j) * std::log(p(j) / q(j));
    }
  }
  return d;
}

inline double kl_divergence(Distribution const &p, Distribution const &q)
{
  return kl_divergence(p.probs(), q.probs());
}

/// Output distribution lambda * Phi.
inline Vector output_of(Barycentric const &weights, Channel const &channel)
{
  if (weights.size() != channel.m())
  {
    throw Error(ErrorCode::LengthMismatch, "capacity-solver", "weights length differs from row count");
  }
  return channel.matrix().transpose() * weights.weights();
}

/// I(lambda, Phi) = sum_i lambda_i D(P^i || lambda Phi), in nats.
/// Also accepts a plain row-stochastic matrix, whose rows need not be
/// distinct.
inline double mutual_information(Barycentric const &weights, Eigen::Ref<const Matrix> const &rows)
{
  if (weights.size() != static_cast<std::size_t>(rows.rows()))
  {
    throw Error(ErrorCode::LengthMismatch, "capacity-solver", "weights length differs from row count");
  }
  if (weights.weights().minCoeff() < 0.0)
  {
    throw Error(ErrorCode::NegativeWeight, "capacity-solver", "input distribution has a negative entry");
  }
  Vector const q = rows.transpose() * weights.weights();
  double       i = 0.0;
  for (Eigen::Index k = 0; k < rows.rows(); ++k)
  {
    if (weights.weights()(k) > 0.0)
    {
      i += weights.weights()(k) * kl_divergence(rows.row(k).transpose(), q);
    }
  }
  return i;
}

inline double mutual_information(Barycentric const &weights, Channel const &channel)
{
  return mutual_information(weights, channel.matrix());
}

/// theta_j = ln(Q_j / Q_1), j = 2..n.
inline Vector theta_coords(Distribution const &q)
{
  Vector const &p = q.probs();
  return (p.tail(p.size() - 1).array() / p(0)).log().matrix();
}

/// eta_j = Q_j, j = 2..n.
inline Vector eta_coords(Distribution const &q)
{
  return q.probs().tail(q.probs().size() - 1);
}

/// Inverse of theta_coords.
inline Distribution distribution_from_theta(Eigen::Ref<const Vector> const &theta)
{
  if (!theta.allFinite())
  {
    throw Error(ErrorCode::DomainEscape, "capacity-solver", "theta coordinates are not finite");
  }
  // Shift by the largest exponent so that no term overflows.
  double const shift = std::max(0.0, theta.maxCoeff());
  Vector       p(theta.size() + 1);
  p(0)                 = std::exp(-shift);
  p.tail(theta.size()) = (theta.array() - shift).exp().matrix();
  return Distribution::normalized(std::move(p));
}

/// (Q1 - Q2, Q3 (-) Q2) = sum_{j>=2} (eta1_j - eta2_j)(theta3_j - theta2_j).
inline double info_inner_product(Distribution const &q1, Distribution const &q2, Distribution const &q3)
{
  if (q1.size() != q2.size() || q2.size() != q3.size())
  {
    throw Error(ErrorCode::LengthMismatch, "capacity-solver", "inner product: length mismatch");
  }
  return (eta_coords(q1) - eta_coords(q2)).dot(theta_coords(q3) - theta_coords(q2));
}

}  // namespace capgeo::capacity
