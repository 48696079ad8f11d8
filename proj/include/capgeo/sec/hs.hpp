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
#include "capgeo/detail/cascade.hpp"
#include "capgeo/sec/geometry.hpp"
#include "capgeo/sec/kt.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

namespace capgeo::sec {

struct HsOptions
{
  /// Lifting parameter relative to SecInstance::scale().
  double epsilon0 = 1e-3;
  /// Times eps is halved when the removal order at eps and eps/2 differ.
  int max_halvings = 6;
};

namespace detail {

inline capgeo::detail::CascadeRun hs_cascade(SecInstance const &instance, double eps, double threshold)
{
  Matrix const lifted = lift_sec(instance, eps).lifted;
  return capgeo::detail::run_cascade(
      instance.m(),
      [&lifted](IndexSet const &s) { return equidistant_barycentric(select_rows(lifted, s)).weights(); },
      threshold);
}

inline SecSolution finish_sec(SecInstance const &instance, Vector weights, TolerancePolicy const &policy)
{
  SecSolution sol;
  sol.weights = Barycentric(std::move(weights)).clamped(policy.negativity_threshold);
  sol.center  = barycentric_to_point(sol.weights, instance.points());
  sol.support = sol.weights.support();
  for (Eigen::Index i = 0; i < instance.points().rows(); ++i)
  {
    sol.radius = std::max(sol.radius, distance(instance.points().row(i).transpose(), sol.center));
  }
  KtVerdict const kt = verify_kt_sec(instance, sol.weights, policy);
  sol.kt_certified   = kt.certified;
  sol.kt_d0          = kt.level;
  return sol;
}

}  // namespace detail

/// Heuristic smallest-enclosing-circle solver: lift the points to
/// (P^i, eps e_i), then repeatedly take the equidistant point of the surviving
/// lifted points and drop the most negative barycentric weight.
///
/// The cascade is run at eps and eps/2; eps is halved until both runs remove
/// the same points in the same order. The final weights are extrapolated to
/// eps = 0 from the two runs.
inline SecSolution solve_hs(SecInstance const &instance, TolerancePolicy const &policy = {},
                            HsOptions const &options = {})
{
  policy.validate();
  if (!(options.epsilon0 > 0.0) || options.max_halvings < 0)
  {
    throw Error(ErrorCode::InvalidArgument, "sec-solver", "invalid HS options");
  }
  std::size_t const m   = instance.m();
  double            eps = options.epsilon0 * instance.scale();

  capgeo::detail::CascadeRun coarse;
  capgeo::detail::CascadeRun fine;
  bool                       agree = false;
  for (int attempt = 0; attempt <= options.max_halvings && !agree; ++attempt)
  {
    if (attempt > 0)
    {
      eps *= 0.5;
    }
    coarse = detail::hs_cascade(instance, eps, policy.negativity_threshold);
    fine   = detail::hs_cascade(instance, 0.5 * eps, policy.negativity_threshold);
    agree = coarse.history == fine.history;
  }
  if (!agree)
  {
    throw Error(ErrorCode::DegeneratePlacement, "sec-solver",
                "removal order does not settle as the lifting parameter shrinks")
        .with_history(fine.history);
  }

  Vector w = capgeo::detail::richardson_even(coarse.final_weights, fine.final_weights);
  if (w.minCoeff() < policy.negativity_threshold)
  {
    w = fine.final_weights;
  }
  w = sec::detail::fix_affine_sum(std::move(w));

  SecSolution sol = detail::finish_sec(instance, scatter(w, fine.survivors, m), policy);
  sol.history     = std::move(coarse.history);
  sol.steps       = std::move(coarse.steps);
  sol.epsilon     = eps;
  return sol;
}

}  // namespace capgeo::sec
