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

#include <Eigen/SVD>

#include <algorithm>
#include <cstddef>

namespace capgeo {

/// Minimum-norm solution of A x = b for any shape of A (complete orthogonal
/// decomposition). Throws SingularInconsistent when no x satisfies the system
/// to within 1e-9 relative to the scale of b and A x.
inline Vector solve_min_norm(Eigen::Ref<const Matrix> const &a, Eigen::Ref<const Vector> const &b)
{
  if (a.rows() != b.size())
  {
    throw Error(ErrorCode::LengthMismatch, "numeric-core", "solve: row count differs from rhs length");
  }
  if (!a.allFinite() || !b.allFinite())
  {
    throw Error(ErrorCode::InvalidArgument, "numeric-core", "solve: non-finite input");
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  Vector x = cod.solve(b);
  double const scale = 1.0 + b.lpNorm<Eigen::Infinity>() +
                       a.lpNorm<Eigen::Infinity>() * x.lpNorm<Eigen::Infinity>();
  double const residual = (a * x - b).lpNorm<Eigen::Infinity>();
  if (!x.allFinite() || residual > 1e-9 * scale)
  {
    throw Error(ErrorCode::SingularInconsistent, "numeric-core", "linear system has no solution");
  }
  return x;
}

/// Solves a square system; rank-deficient consistent systems get the
/// minimum-norm solution.
inline Vector solve_linear(Eigen::Ref<const Matrix> const &a, Eigen::Ref<const Vector> const &b)
{
  if (a.rows() != a.cols())
  {
    throw Error(ErrorCode::InvalidArgument, "numeric-core", "solve_linear: matrix must be square");
  }
  return solve_min_norm(a, b);
}

/// Number of singular values above rel_tol times the largest one.
inline std::size_t rank_estimate(Eigen::Ref<const Matrix> const &a, double rel_tol = 1e-10)
{
  if (a.size() == 0)
  {
    return 0;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  auto const &sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0)
  {
    return 0;
  }
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
  {
    if (sv(i) > rel_tol * sv(0))
    {
      ++r;
    }
  }
  return r;
}

/// Rows P^2 - P^1, ..., P^m - P^1.
inline Matrix difference_rows(Eigen::Ref<const Matrix> const &points)
{
  Eigen::Index const m = points.rows();
  Matrix             d(std::max<Eigen::Index>(m - 1, 0), points.cols());
  for (Eigen::Index i = 1; i < m; ++i)
  {
    d.row(i - 1) = points.row(i) - points.row(0);
  }
  return d;
}

/// True iff the difference vectors of the rows are linearly independent.
inline bool in_general_position(Eigen::Ref<const Matrix> const &points, double rel_tol = 1e-10)
{
  if (points.rows() < 2)
  {
    return points.rows() == 1;
  }
  return rank_estimate(difference_rows(points), rel_tol) ==
         static_cast<std::size_t>(points.rows() - 1);
}

}  // namespace capgeo
