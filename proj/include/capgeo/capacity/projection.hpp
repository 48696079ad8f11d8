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

#include "capgeo/capacity/divergence.hpp"
#include "capgeo/core/linalg.hpp"
#include "capgeo/core/types.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>

namespace capgeo::capacity {

struct MixturePoint
{
  Distribution point;
  Barycentric  weights;
};

namespace detail {

inline void require_positive_rows(Eigen::Ref<const Matrix> const &rows)
{
  if (rows.rows() < 1 || !rows.allFinite() || rows.minCoeff() <= 0.0)
  {
    throw Error(ErrorCode::InvalidArgument, "capacity-solver", "strict positivity required of every row");
  }
}

inline std::string sci(double v)
{
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

}  // namespace detail

/// pi(q' | L): the point Q = mu * rows of the mixture family through `rows`
/// minimising D(Q || q'). Stationarity reads
///
///   sum_j (R^l - R^1)_j ln(Q_j / q'_j) = 0,  l = 2..k,   sum mu = 1.
///
/// The objective is strictly convex in mu for linearly independent rows, so
/// it is minimised by equality-constrained Newton with backtracking on the
/// objective itself; convergence is judged on the stationarity residual,
/// relative to the size of ln(Q / q').
inline MixturePoint project_onto_mixture(Distribution const &q_prime, Eigen::Ref<const Matrix> const &rows,
                                         TolerancePolicy const &policy = {})
{
  detail::require_positive_rows(rows);
  Eigen::Index const k = rows.rows();
  if (static_cast<std::size_t>(rows.cols()) != q_prime.size())
  {
    throw Error(ErrorCode::LengthMismatch, "capacity-solver", "projection: dimension mismatch");
  }
  if (k == 1)
  {
    return {Distribution::normalized(rows.row(0).transpose()), Barycentric::vertex(1, 0)};
  }
  if (!in_general_position(rows))
  {
    throw Error(ErrorCode::DegeneratePlacement, "capacity-solver", "projection target is not in general position");
  }

  Matrix const psi     = difference_rows(rows);
  Vector const log_ref = q_prime.probs().array().log().matrix();
  auto const   objective = [&](Vector const &q) { return q.dot(q.array().log().matrix() - log_ref); };

  // Accepted when the iteration stalls: the stationarity residual
  // then sits at its round-off floor, which grows with ln(Q / q') and with the
  // conditioning of the rows.
  constexpr double kStallTol = 1e-9;

  Vector mu    = Vector::Constant(k, 1.0 / static_cast<double>(k));
  Vector q     = rows.transpose() * mu;
  double norm  = 0.0;
  double scale = 1.0;
  auto   done  = [&] {
    Barycentric w(mu / mu.sum());
    return MixturePoint{Distribution::normalized(rows.transpose() * w.weights()), std::move(w)};
  };
  for (std::size_t it = 0; it <= policy.newton_max_iter; ++it)
  {
    Vector const log_ratio = q.array().log().matrix() - log_ref;
    Vector const g         = rows * log_ratio;
    norm                   = (psi * log_ratio).lpNorm<Eigen::Infinity>();
    scale                  = 1.0 + log_ratio.lpNorm<Eigen::Infinity>();
    if (norm <= policy.newton_tol * scale)
    {
      return done();
    }
    if (it == policy.newton_max_iter)
    {
      break;
    }

    Matrix kkt = Matrix::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = rows * q.cwiseInverse().asDiagonal() * rows.transpose();
    kkt.block(0, k, k, 1).setOnes();
    kkt.block(k, 0, 1, k).setOnes();
    Vector rhs = Vector::Zero(k + 1);
    rhs.head(k) = -g;
    Vector const step = kkt.fullPivLu().solve(rhs).head(k);
    if (!step.allFinite())
    {
      break;
    }

    double const f0    = objective(q);
    double const slope = g.dot(step);
    double       t     = 1.0;
    bool         moved = false;
    for (int h = 0; h < 60; ++h, t *= 0.5)
    {
      Vector const trial   = mu + t * step;
      Vector const trial_q = rows.transpose() * trial;
      if (trial_q.minCoeff() <= 0.0)
      {
        continue;
      }
      double const trial_norm =
          (psi * (trial_q.array().log().matrix() - log_ref)).lpNorm<Eigen::Infinity>();
      if (objective(trial_q) <= f0 + 1e-4 * t * slope || trial_norm < norm)
      {
        mu    = trial;
        q     = trial_q;
        moved = true;
        break;
      }
    }
    if (!moved)
    {
      break;
    }
  }
  if (norm <= kStallTol * scale && q.minCoeff() > 0.0)
  {
    return done();
  }
  // A stall against the boundary of the simplex means the minimiser over L
  // has a zero component and no stationary point exists inside.
  if (q.minCoeff() < 1e-6)
  {
    throw Error(ErrorCode::DomainEscape, "capacity-solver", "projection requires non-positive mixture components");
  }
  throw Error(ErrorCode::NoConvergence, "capacity-solver",
              "projection: stationarity residual " + detail::sci(norm) + " after " +
                  std::to_string(policy.newton_max_iter) + " iterations");
}

/// Equidistant output distribution of rows in general position: solve
/// Psi' theta = b with b_i = H(P^1) - H(P^i) (minimum norm), map theta to a
/// distribution and project it onto the mixture family of the rows.
inline MixturePoint equidistant_output(Eigen::Ref<const Matrix> const &rows, TolerancePolicy const &policy = {})
{
  detail::require_positive_rows(rows);
  Eigen::Index const m = rows.rows();
  if (m == 1)
  {
    return {Distribution::normalized(rows.row(0).transpose()), Barycentric::vertex(1, 0)};
  }
  if (!in_general_position(rows))
  {
    throw Error(ErrorCode::DegeneratePlacement, "capacity-solver", "rows are not in general position");
  }
  Matrix const psi = difference_rows(rows).rightCols(rows.cols() - 1);
  Vector       b(m - 1);
  double const h1 = entropy(rows.row(0).transpose());
  for (Eigen::Index i = 1; i < m; ++i)
  {
    b(i - 1) = h1 - entropy(rows.row(i).transpose());
  }
  Vector const       theta = solve_min_norm(psi, b);
  Distribution const q     = distribution_from_theta(theta);
  return project_onto_mixture(q, rows, policy);
}

inline MixturePoint equidistant_output(Channel const &channel, TolerancePolicy const &policy = {})
{
  return equidistant_output(channel.matrix(), policy);
}

}  // namespace capgeo::capacity
