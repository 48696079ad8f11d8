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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace capgeo::capacity {

inline constexpr double kRowSumTolerance = 1e-12;

/// Row-stochastic m x n matrix with strictly positive entries; row i is the
/// output distribution given input symbol i.
class Channel
{
public:
  Channel() = default;

  explicit Channel(Matrix matrix)
    : matrix_(std::move(matrix))
  {
    if (matrix_.rows() < 2 || matrix_.cols() < 2)
    {
      throw Error(ErrorCode::InvalidArgument, "capacity-solver", "channel needs m >= 2 rows and n >= 2 columns");
    }
    if (!matrix_.allFinite())
    {
      throw Error(ErrorCode::InvalidArgument, "capacity-solver", "channel entries must be finite");
    }
    for (Eigen::Index i = 0; i < matrix_.rows(); ++i)
    {
      if (matrix_.row(i).minCoeff() <= 0.0)
      {
        throw Error(ErrorCode::InvalidArgument, "capacity-solver",
                    "strict positivity required: row " + std::to_string(i) + " has a non-positive entry");
      }
      if (std::abs(matrix_.row(i).sum() - 1.0) > kRowSumTolerance)
      {
        throw Error(ErrorCode::InvalidArgument, "capacity-solver",
                    "row " + std::to_string(i) + " does not sum to 1");
      }
      for (Eigen::Index k = 0; k < i; ++k)
      {
        if (matrix_.row(i) == matrix_.row(k))
        {
          throw Error(ErrorCode::InvalidArgument, "capacity-solver",
                      "rows " + std::to_string(k) + " and " + std::to_string(i) + " are identical");
        }
      }
    }
  }

  Matrix const &matrix() const noexcept
  {
    return matrix_;
  }

  std::size_t m() const noexcept
  {
    return static_cast<std::size_t>(matrix_.rows());
  }

  std::size_t n() const noexcept
  {
    return static_cast<std::size_t>(matrix_.cols());
  }

  Distribution row(std::size_t i) const
  {
    return Distribution(matrix_.row(static_cast<Eigen::Index>(i)).transpose());
  }

private:
  Matrix matrix_;
};

inline double nats_to_bits(double nats) noexcept
{
  return nats / std::numbers::ln2;
}

struct CapacitySolution
{
  Distribution output_dist;
  double       capacity_nats = 0.0;
  double       capacity_bits = 0.0;
  Barycentric  weights;
  IndexSet     support;
  bool         kt_certified = false;
  /// Removed row indices, in removal order.
  IndexSet            history;
  /// Full-length lifted barycentric coordinates at each cascade step.
  std::vector<Vector> steps;
  double              epsilon = 0.0;
  std::string         case_label;
  /// Outer iterations (Blahut-Arimoto only).
  std::size_t iterations = 0;
};

/// Rows (P^i / (2m+1), (1 +- eps e_{2i-1,2i} ...) / (2m+1)) over n + 2m
/// output symbols.
struct LiftedChannel
{
  Channel base;
  double  epsilon = 0.0;
  Matrix  lifted;
};

inline LiftedChannel lift_channel(Channel const &channel, double epsilon)
{
  if (!(std::abs(epsilon) > 0.0) || !(std::abs(epsilon) < 1.0))
  {
    throw Error(ErrorCode::InvalidArgument, "capacity-solver", "lifting parameter must satisfy 0 < |eps| < 1");
  }
  auto const   m     = static_cast<Eigen::Index>(channel.m());
  auto const   n     = static_cast<Eigen::Index>(channel.n());
  double const scale = 1.0 / static_cast<double>(2 * m + 1);

  Matrix lifted(m, n + 2 * m);
  lifted.leftCols(n)      = channel.matrix() * scale;
  lifted.rightCols(2 * m) = Matrix::Constant(m, 2 * m, scale);
  for (Eigen::Index i = 0; i < m; ++i)
  {
    lifted(i, n + 2 * i)     = (1.0 + epsilon) * scale;
    lifted(i, n + 2 * i + 1) = (1.0 - epsilon) * scale;
  }
  return LiftedChannel{channel, epsilon, std::move(lifted)};
}

}  // namespace capgeo::capacity
