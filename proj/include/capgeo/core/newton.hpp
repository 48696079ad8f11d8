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

#include "capgeo/core/linalg.hpp"
#include "capgeo/core/types.hpp"

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>

namespace capgeo {

struct NewtonStats
{
  std::size_t iterations    = 0;
  std::size_t halvings      = 0;
  double      residual_norm = 0.0;
  /// Last accepted iterate, also on failure.
  Vector      x;
};

/// Damped Newton iteration for residual(x) = 0.
///
/// A residual that returns a non-finite entry marks x as outside the domain
/// of the system. Each step is halved (at most 30 times) until the residual
/// is finite and its max-norm decreases; if no halving achieves a decrease but
/// some halved point is finite, the smallest finite step is taken. Converged
/// when ||residual||_inf <= policy.newton_tol * (1 + ||x||_inf); the scale
/// term keeps the test above round-off when the unknowns are large.
template <class Residual, class Jacobian>
  requires std::is_invocable_r_v<Vector, Residual, Vector const &> &&
           std::is_invocable_r_v<Matrix, Jacobian, Vector const &>
Vector newton_solve(Residual &&residual, Jacobian &&jacobian, Vector x0,
                    TolerancePolicy const &policy, NewtonStats *stats = nullptr)
{
  constexpr int kMaxHalvings = 30;

  Vector x = std::move(x0);
  Vector r = residual(x);
  if (!r.allFinite())
  {
    throw Error(ErrorCode::NonFiniteIterate, "numeric-core", "initial point outside the domain");
  }
  double      norm     = r.lpNorm<Eigen::Infinity>();
  std::size_t halvings = 0;

  for (std::size_t it = 0; it <= policy.newton_max_iter; ++it)
  {
    if (stats != nullptr)
    {
      stats->iterations    = it;
      stats->halvings      = halvings;
      stats->residual_norm = norm;
      stats->x             = x;
    }
    if (norm <= policy.newton_tol * (1.0 + x.lpNorm<Eigen::Infinity>()))
    {
      return x;
    }
    if (it == policy.newton_max_iter)
    {
      break;
    }

    Matrix const j = jacobian(x);
    Vector       step;
    try
    {
      step = solve_linear(j, -r);
    }
    catch (Error const &)
    {
      throw Error(ErrorCode::NoConvergence, "numeric-core",
                  "singular Jacobian at iteration " + std::to_string(it));
    }

    double t = 1.0;
    Vector best_x;
    Vector best_r;
    bool   accepted = false;
    for (int h = 0; h <= kMaxHalvings; ++h, t *= 0.5)
    {
      Vector trial   = x + t * step;
      Vector trial_r = residual(trial);
      if (!trial.allFinite() || !trial_r.allFinite())
      {
        ++halvings;
        continue;
      }
      best_x = std::move(trial);
      best_r = std::move(trial_r);
      if (best_r.lpNorm<Eigen::Infinity>() < norm)
      {
        accepted = true;
        break;
      }
      ++halvings;
    }
    if (best_x.size() == 0)
    {
      throw Error(ErrorCode::NonFiniteIterate, "numeric-core",
                  "every damped step left the domain at iteration " + std::to_string(it));
    }
    if (!accepted && (best_x - x).lpNorm<Eigen::Infinity>() == 0.0)
    {
      break;
    }
    x    = std::move(best_x);
    r    = std::move(best_r);
    norm = r.lpNorm<Eigen::Infinity>();
  }
  throw Error(ErrorCode::NoConvergence, "numeric-core",
              "residual " + std::to_string(norm) + " after " +
                  std::to_string(policy.newton_max_iter) + " iterations");
}

}  // namespace capgeo
