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
#include "capgeo/capacity/kt.hpp"
#include "capgeo/core/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

namespace capgeo::oracles {

struct BlahutArimotoOptions
{
  /// Stop once max_i D(P^i || Q) - I(lambda) < tol (nats) and the pruned
  /// input distribution passes KT at relative tolerance 10 * tol.
  double      tol      = 1e-10;
  std::size_t max_iter = 1'000'000;
};

namespace detail {

/// Drops inputs whose divergence sits clearly below the upper bound.
inline Vector prune_inputs(Vector const &lambda, Vector const &div, double upper, double gap)
{
  Vector       w      = lambda;
  double const cutoff = upper - std::max(1e3 * gap, 1e-9 * upper);
  for (Eigen::Index i = 0; i < w.size(); ++i)
  {
    if (div(i) < cutoff)
    {
      w(i) = 0.0;
    }
  }
  return w / w.sum();
}

}  // namespace detail

/// Blahut-Arimoto iteration lambda_i <- lambda_i exp(D(P^i || lambda Phi)),
/// bracketing capacity between I(lambda) and max_i D(P^i || lambda Phi).
/// Accepts any strictly positive row-stochastic matrix, repeated rows
/// included. Returns C as the midpoint of the final bracket.
inline capacity::CapacitySolution blahut_arimoto(Eigen::Ref<const Matrix> const &rows,
                                                 BlahutArimotoOptions const &options = {},
                                                 TolerancePolicy const       &policy  = {})
{
  if (rows.rows() < 1 || rows.cols() < 1 || !rows.allFinite() || rows.minCoeff() <= 0.0)
  {
    throw Error(ErrorCode::InvalidArgument, "oracles", "strict positivity required of every row");
  }
  for (Eigen::Index i = 0; i < rows.rows(); ++i)
  {
    if (std::abs(rows.row(i).sum() - 1.0) > capacity::kRowSumTolerance)
    {
      throw Error(ErrorCode::InvalidArgument, "oracles", "row " + std::to_string(i) + " does not sum to 1");
    }
  }
  if (!(options.tol > 0.0))
  {
    throw Error(ErrorCode::InvalidArgument, "oracles", "tolerance must be positive");
  }
  TolerancePolicy kt_policy = policy;
  kt_policy.kt_rel_tol      = 10.0 * options.tol;

  Eigen::Index const m      = rows.rows();
  Vector             lambda = Vector::Constant(m, 1.0 / static_cast<double>(m));
  for (std::size_t it = 0; it < options.max_iter; ++it)
  {
    Vector const q     = rows.transpose() * lambda;
    Vector const div   = capacity::row_divergences(rows, q);
    double const upper = div.maxCoeff();
    double const lower = lambda.dot(div);
    double const gap   = upper - lower;
    if (gap < options.tol)
    {
      Vector const pruned = detail::prune_inputs(lambda, div, upper, gap);
      if (capacity::verify_kt_capacity(rows, Barycentric(pruned), kt_policy).certified)
      {
        capacity::CapacitySolution sol;
        sol.weights       = Barycentric(pruned);
        sol.output_dist   = Distribution::normalized(rows.transpose() * pruned);
        sol.support       = sol.weights.support();
        sol.capacity_nats = std::max(0.0, 0.5 * (upper + lower));
        sol.capacity_bits = capacity::nats_to_bits(sol.capacity_nats);
        sol.kt_certified  = true;
        sol.iterations    = it;
        return sol;
      }
    }
    lambda = (lambda.array() * (div.array() - upper).exp()).matrix();
    lambda /= lambda.sum();
  }
  throw Error(ErrorCode::NoConvergence, "oracles",
              "Blahut-Arimoto did not converge in " + std::to_string(options.max_iter) + " iterations");
}

inline capacity::CapacitySolution blahut_arimoto(capacity::Channel const &channel,
                                                 BlahutArimotoOptions const &options = {},
                                                 TolerancePolicy const       &policy  = {})
{
  return blahut_arimoto(channel.matrix(), options, policy);
}

}  // namespace capgeo::oracles
