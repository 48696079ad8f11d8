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
#include "capgeo/detail/case_tree.hpp"
#include "capgeo/sec/geometry.hpp"
#include "capgeo/sec/hs.hpp"

#include <cstddef>
#include <utility>

namespace capgeo::sec {

/// Euclidean projections of the equidistant point of all m points.
class EuclideanCaseGeometry
{
public:
  explicit EuclideanCaseGeometry(Matrix points)
    : points_(std::move(points))
    , lambda0_(equidistant_barycentric(points_).weights())
    , q0_(points_.transpose() * lambda0_)
  {}

  std::size_t size() const noexcept
  {
    return static_cast<std::size_t>(points_.rows());
  }

  Vector equidistant_weights() const
  {
    return lambda0_;
  }

  Vector projected_weights(IndexSet const &subset) const
  {
    Matrix const sub = select_rows(points_, subset);
    return scatter(project_onto_affine_weights(q0_, sub).weights(), subset, size());
  }

private:
  Matrix points_;
  Vector lambda0_;
  Vector q0_;
};

/// Exact solver for m <= 4 points in general position (m <= n + 1).
inline SecSolution solve_small_m_sec(SecInstance const &instance, TolerancePolicy const &policy = {})
{
  policy.validate();
  if (instance.m() > 4)
  {
    throw Error(ErrorCode::InvalidArgument, "sec-solver", "small-m solver needs m <= 4");
  }
  if (!in_general_position(instance.points()))
  {
    throw Error(ErrorCode::DegeneratePlacement, "sec-solver", "points are not in general position");
  }
  EuclideanCaseGeometry const        geometry(instance.points());
  capgeo::detail::CaseTreeResult res = capgeo::detail::solve_case_tree(geometry, policy.negativity_threshold);

  SecSolution sol = detail::finish_sec(instance, std::move(res.weights), policy);
  sol.case_label  = std::move(res.label);
  return sol;
}

}  // namespace capgeo::sec
