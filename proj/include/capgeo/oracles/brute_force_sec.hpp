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
#include "capgeo/sec/geometry.hpp"
#include "capgeo/sec/kt.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>

namespace capgeo::oracles {

inline constexpr std::size_t kBruteForceMaxPoints = 20;

namespace detail {

struct Candidate
{
  Vector   center;
  Vector   weights;
  double   radius = 0.0;
  IndexSet subset;
};

/// Point of the affine hull of `sub` equidistant from its rows, written as
/// P^1 + Psi^t alpha with (Psi Psi^t) alpha = |Psi_i|^2 / 2. Empty when the
/// equidistance system is inconsistent.
inline std::optional<std::pair<Vector, Vector>> subset_circumcenter(Matrix const &sub)
{
  Matrix const psi = difference_rows(sub);
  Vector const rhs = 0.5 * psi.rowwise().squaredNorm();
  Vector       alpha;
  try
  {
    alpha = solve_min_norm(psi * psi.transpose(), rhs);
  }
  catch (Error const &e)
  {
    if (e.code() == ErrorCode::SingularInconsistent)
    {
      return std::nullopt;
    }
    throw;
  }
  Vector const center = sub.row(0).transpose() + psi.transpose() * alpha;
  Vector       w(sub.rows());
  w(0)                 = 1.0 - alpha.sum();
  w.tail(alpha.size()) = alpha;
  return std::make_pair(center, w);
}

/// Advances `c` to the next k-combination of {0..m-1} in lexicographic order.
inline bool next_combination(IndexSet &c, std::size_t m)
{
  std::size_t const k = c.size();
  for (std::size_t i = k; i-- > 0;)
  {
    if (c[i] < m - k + i)
    {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j)
      {
        c[j] = c[j - 1] + 1;
      }
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Exhaustive smallest enclosing circle: examines every subset of 2 to
/// min(m, n + 1) points, takes the equidistant point of each within its
/// affine hull, and keeps the smallest circle that encloses all points.
/// Radius ties (relative 1e-9) go to the lexicographically smallest subset.
inline sec::SecSolution brute_force_sec(sec::SecInstance const &instance, TolerancePolicy const &policy = {})
{
  std::size_t const m = instance.m();
  if (m > kBruteForceMaxPoints)
  {
    throw Error(ErrorCode::TooLarge, "oracles",
                "brute force limited to " + std::to_string(kBruteForceMaxPoints) + " points");
  }
  Matrix const &points   = instance.points();
  std::size_t   max_size = std::min(m, instance.n() + 1);
  constexpr double kRel  = 1e-9;

  std::optional<detail::Candidate> best;
  for (std::size_t k = 2; k <= max_size; ++k)
  {
    IndexSet subset = all_indices(k);
    do
    {
      auto cc = detail::subset_circumcenter(select_rows(points, subset));
      if (!cc)
      {
        continue;
      }
      Vector const &center = cc->first;
      double const  r      = sec::distance(points.row(static_cast<Eigen::Index>(subset[0])).transpose(), center);
      bool          encloses = true;
      for (Eigen::Index i = 0; i < points.rows() && encloses; ++i)
      {
        encloses = sec::distance(points.row(i).transpose(), center) <= r * (1.0 + kRel);
      }
      if (!encloses)
      {
        continue;
      }
      bool better = !best || r < best->radius * (1.0 - kRel);
      if (!better && best && r <= best->radius * (1.0 + kRel))
      {
        better = std::lexicographical_compare(subset.begin(), subset.end(), best->subset.begin(),
                                              best->subset.end());
      }
      if (better)
      {
        best = detail::Candidate{center, scatter(cc->second, subset, m), r, subset};
      }
    } while (detail::next_combination(subset, m));
  }
  if (!best)
  {
    // The optimal circle is the circumcircle of an affinely independent
    // subset of at most n + 1 points, so this only fires on round-off.
    throw Error(ErrorCode::DegeneratePlacement, "oracles", "no enclosing candidate found");
  }

  Vector w = best->weights;
  for (Eigen::Index i = 0; i < w.size(); ++i)
  {
    w(i) = std::max(w(i), 0.0);
  }
  w /= w.sum();

  sec::SecSolution sol;
  sol.weights = Barycentric(std::move(w));
  sol.center  = best->center;
  sol.radius  = 0.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i)
  {
    sol.radius = std::max(sol.radius, sec::distance(points.row(i).transpose(), sol.center));
  }
  sol.support       = sol.weights.support();
  KtVerdict const kt = sec::verify_kt_sec(instance, sol.weights, policy);
  sol.kt_certified   = kt.certified;
  sol.kt_d0          = kt.level;
  return sol;
}

}  // namespace capgeo::oracles
