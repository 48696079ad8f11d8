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
#include "capgeo/capacity/projection.hpp"
#include "capgeo/core/linalg.hpp"
#include "capgeo/core/types.hpp"
#include "capgeo/detail/case_tree.hpp"

#include <cstddef>
#include <utility>

namespace capgeo::capacity {

/// Divergence projections of the equidistant output distribution of all rows.
class InformationCaseGeometry
{
public:
  InformationCaseGeometry(Matrix rows, TolerancePolicy policy)
    : rows_(std::move(rows))
    , policy_(policy)
    , q0_(equidistant_output(rows_, policy_))
  {}

  std::size_t size() const noexcept
  {
    return static_cast<std::size_t>(rows_.rows());
  }

  Vector equidistant_weights() const
  {
    return q0_.weights.weights();
  }

  Vector projected_weights(IndexSet const &subset) const
  {
    MixturePoint const p = project_onto_mixture(q0_.point, select_rows(rows_, subset), policy_);
    return scatter(p.weights.weights(), subset, size());
  }

private:
  Matrix          rows_;
  TolerancePolicy policy_;
  MixturePoint    q0_;
};

/// Exact solver for m <= 4 rows in general position.
inline CapacitySolution solve_small_m_capacity(Channel const &channel, TolerancePolicy const &policy = {})
{
  policy.validate();
  if (channel.m() > 4)
  {
    throw Error(ErrorCode::InvalidArgument, "capacity-solver", "small-m solver needs m <= 4");
  }
  if (!in_general_position(channel.matrix()))
  {
    throw Error(ErrorCode::DegeneratePlacement, "capacity-solver", "rows are not in general position");
  }
  InformationCaseGeometry const  geometry(channel.matrix(), policy);
  capgeo::detail::CaseTreeResult res = capgeo::detail::solve_case_tree(geometry, policy.negativity_threshold);

  CapacitySolution sol = detail::finish_capacity(channel.matrix(), std::move(res.weights), policy);
  sol.case_label       = std::move(res.label);
  return sol;
}

}  // namespace capgeo::capacity
