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
#include "capgeo/core/types.hpp"

#include <cstddef>
#include <vector>

namespace capgeo::detail {

/// Output of the remove-most-negative cascade over lifted generators.
struct CascadeRun
{
  IndexSet            survivors;
  IndexSet            history;
  std::vector<Vector> steps;
  /// Weights over `survivors` at the last step.
  Vector              final_weights;
};

/// Runs the cascade. `solve(subset)` returns the weights over `subset` (in
/// subset order) of the lifted equidistant point of that subset. At each step
/// the most negative weight below `threshold` is removed; ties go to the
/// lowest original index.
template <class Solve>
CascadeRun run_cascade(std::size_t m, Solve &&solve, double threshold)
{
  CascadeRun run;
  run.survivors = all_indices(m);
  for (;;)
  {
    Vector w;
    try
    {
      w = solve(run.survivors);
    }
    catch (Error &e)
    {
      e.with_history(run.history);
      throw;
    }
    run.steps.push_back(scatter(w, run.survivors, m));
    Eigen::Index worst = -1;
    for (Eigen::Index k = 0; k < w.size(); ++k)
    {
      if (w(k) < threshold && (worst < 0 || w(k) < w(worst)))
      {
        worst = k;
      }
    }
    if (worst < 0)
    {
      run.final_weights = w;
      return run;
    }
    run.history.push_back(run.survivors[static_cast<std::size_t>(worst)]);
    run.survivors.erase(run.survivors.begin() + worst);
  }
}

/// Removes the leading error term of a quantity that is even in eps:
/// f(0) ~ (4 f(eps/2) - f(eps)) / 3.
inline Vector richardson_even(Vector const &at_eps, Vector const &at_half_eps)
{
  return (4.0 * at_half_eps - at_eps) / 3.0;
}

}  // namespace capgeo::detail
