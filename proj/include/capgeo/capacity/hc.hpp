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
#include "capgeo/capacity/kt.hpp"
#include "capgeo/capacity/lifted_system.hpp"
#include "capgeo/core/linalg.hpp"
#include "capgeo/core/types.hpp"
#include "capgeo/detail/cascade.hpp"

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

namespace capgeo::capacity {

struct HcOptions
{
  double epsilon = 0.05;
  /// Re-solve the unlifted equidistance system on the final support.
  bool polish = true;
  /// Times eps is halved after a result that fails the KT check.
  int max_halvings = 6;
};

namespace detail {

/// Largest lifting parameter on a continuation path.
inline constexpr double kContinuationStart = 0.2;

inline bool retryable(Error const &e)
{
  return e.code() == ErrorCode::NoConvergence || e.code() == ErrorCode::NonFiniteIterate;
}

/// Previous weights restricted to `subset` and rescaled to unit sum.
inline Vector restricted_start(Vector const &previous, IndexSet const &subset)
{
  Vector start(static_cast<Eigen::Index>(subset.size()));
  for (std::size_t k = 0; k < subset.size(); ++k)
  {
    start(static_cast<Eigen::Index>(k)) = previous(static_cast<Eigen::Index>(subset[k]));
  }
  return start / start.sum();
}

inline capgeo::detail::CascadeRun hc_cascade(Channel const &channel, double epsilon, TolerancePolicy const &policy)
{
  std::size_t const m = channel.m();
  Vector            previous;
  auto              solve = [&](IndexSet const &subset) {
    Matrix const rows = select_rows(channel.matrix(), subset);
    auto const   k    = static_cast<Eigen::Index>(subset.size());
    Vector       w;
    try
    {
      w = solve_lifted_system(rows, epsilon, Vector::Constant(k, 1.0 / static_cast<double>(k)), policy);
    }
    catch (Error const &e)
    {
      if (!retryable(e))
      {
        throw;
      }
      bool solved = false;
      if (previous.size() != 0)
      {
        try
        {
          w      = solve_lifted_system(rows, epsilon, restricted_start(previous, subset), policy);
          solved = true;
        }
        catch (Error const &again)
        {
          if (!retryable(again))
          {
            throw;
          }
        }
      }
      if (!solved)
      {
        w = solve_lifted_continuation(rows, epsilon, kContinuationStart, policy);
      }
    }
    previous = scatter(w, subset, m);
    return w;
  };
  return capgeo::detail::run_cascade(m, solve, policy.negativity_threshold);
}

/// One pass of the heuristic at a fixed lifting parameter.
inline CapacitySolution solve_hc_at(Channel const &channel, double eps, TolerancePolicy const &policy, bool polish)
{
  capgeo::detail::CascadeRun run  = detail::hc_cascade(channel, eps, policy);
  Matrix const               rows = select_rows(channel.matrix(), run.survivors);

  Vector best = run.final_weights;
  if (run.survivors.size() > 1)
  {
    try
    {
      Vector const half = solve_lifted_system(rows, 0.5 * eps, best, policy);
      Vector const ext  = capgeo::detail::richardson_even(run.final_weights, half);
      if (ext.minCoeff() >= policy.negativity_threshold)
      {
        best = ext;
      }
    }
    catch (Error const &)
    {
      // Keep the eps solution; KT certification judges the result.
    }
    if (polish && in_general_position(rows))
    {
      try
      {
        Vector const exact = solve_lifted_system(rows, 0.0, best, policy);
        if (exact.minCoeff() >= policy.negativity_threshold)
        {
          best = exact;
        }
      }
      catch (Error const &)
      {
      }
    }
  }
  best /= best.sum();

  CapacitySolution sol = detail::finish_capacity(channel.matrix(), scatter(best, run.survivors, channel.m()), policy);
  sol.history          = std::move(run.history);
  sol.steps            = std::move(run.steps);
  sol.epsilon          = eps;
  return sol;
}

}  // namespace detail

/// Heuristic capacity solver on the channel lifted with a dummy output
/// alphabet. The cascade drops the row with the most negative lifted weight
/// until all weights are nonnegative; the equidistant point of the surviving
/// lifted rows coincides with the successive projections of the full
/// equidistant point.
///
/// The surviving weights are extrapolated to eps = 0 from eps and eps/2 and,
/// when the surviving rows are in general position, refined by Newton on the
/// unlifted equidistance system. Capacity is max_i D(P^i || Q*) over all rows.
///
/// The lifted signs only settle once eps is small against the spread of the
/// row divergences, so a result that fails the KT check is recomputed with eps
/// halved, up to `max_halvings` times.
inline CapacitySolution solve_hc(Channel const &channel, TolerancePolicy const &policy = {},
                                 HcOptions const &options = {})
{
  policy.validate();
  double eps = options.epsilon;
  if (!(std::abs(eps) > 0.0) || !(std::abs(eps) < 1.0) || options.max_halvings < 0)
  {
    throw Error(ErrorCode::InvalidArgument, "capacity-solver", "lifting parameter must satisfy 0 < |eps| < 1");
  }
  std::optional<CapacitySolution> last;
  std::optional<Error>            first_error;
  for (int level = 0; level <= options.max_halvings; ++level, eps *= 0.5)
  {
    try
    {
      last = detail::solve_hc_at(channel, eps, policy, options.polish);
    }
    catch (Error const &e)
    {
      if (!first_error)
      {
        first_error = e;
      }
      continue;
    }
    if (last->kt_certified)
    {
      break;
    }
  }
  if (!last)
  {
    throw *first_error;
  }
  return *std::move(last);
}

inline CapacitySolution solve_hc(Channel const &channel, double epsilon, TolerancePolicy const &policy = {})
{
  return solve_hc(channel, policy, HcOptions{epsilon});
}

}  // namespace capgeo::capacity
