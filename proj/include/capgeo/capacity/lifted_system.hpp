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
#include "capgeo/capacity/divergence.hpp"
#include "capgeo/core/newton.hpp"
#include "capgeo/core/types.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace capgeo::capacity {

/// Barycentric coordinate over `rows` of the equidistant point of the lifted
/// rows, without forming the lifted matrix. For i = 2..k
///
///   sum_j (P^i - P^1)_j ln (lambda P)_j + g(lambda_i) - g(lambda_1) = H(P^1) - H(P^i),
///   g(x) = eps ln((1 + eps x) / (1 - eps x)),
///
/// together with sum lambda = 1. With eps = 0 this is the unlifted
/// equidistance system, which needs `rows` in general position.
inline Vector solve_lifted_system(Eigen::Ref<const Matrix> const &rows, double epsilon, Vector start,
                                  TolerancePolicy const &policy = {}, NewtonStats *stats = nullptr)
{
  Eigen::Index const k = rows.rows();
  if (start.size() != k)
  {
    throw Error(ErrorCode::LengthMismatch, "capacity-solver", "lifted system: start has wrong length");
  }
  if (k == 1)
  {
    return Vector::Ones(1);
  }
  Matrix const psi = [&rows, k] {
    Matrix d(k - 1, rows.cols());
    for (Eigen::Index i = 1; i < k; ++i)
    {
      d.row(i - 1) = rows.row(i) - rows.row(0);
    }
    return d;
  }();
  Vector       rhs(k - 1);
  double const h1 = entropy(rows.row(0).transpose());
  for (Eigen::Index i = 1; i < k; ++i)
  {
    rhs(i - 1) = h1 - entropy(rows.row(i).transpose());
  }
  double const eps  = epsilon;
  auto const   g    = [eps](double x) { return eps * std::log((1.0 + eps * x) / (1.0 - eps * x)); };
  auto const   dg   = [eps](double x) { return 2.0 * eps * eps / (1.0 - eps * eps * x * x); };
  auto const inside = [eps](Vector const &lam) { return (eps * lam).cwiseAbs().maxCoeff() < 1.0; };

  auto residual = [&](Vector const &lam) {
    Vector       r(k);
    Vector const q = rows.transpose() * lam;
    if (!inside(lam) || q.minCoeff() <= 0.0)
    {
      r.setConstant(std::numeric_limits<double>::quiet_NaN());
      return r;
    }
    r.head(k - 1) = psi * q.array().log().matrix() - rhs;
    for (Eigen::Index i = 1; i < k; ++i)
    {
      r(i - 1) += g(lam(i)) - g(lam(0));
    }
    r(k - 1) = lam.sum() - 1.0;
    return r;
  };
  auto jacobian = [&](Vector const &lam) {
    Vector const q = rows.transpose() * lam;
    Matrix       j(k, k);
    j.topRows(k - 1) = psi * q.cwiseInverse().asDiagonal() * rows.transpose();
    for (Eigen::Index i = 1; i < k; ++i)
    {
      j(i - 1, i) += dg(lam(i));
      j(i - 1, 0) -= dg(lam(0));
    }
    j.row(k - 1).setOnes();
    return j;
  };
  try
  {
    return newton_solve(residual, jacobian, std::move(start), policy, stats);
  }
  catch (Error const &e)
  {
    throw Error(e.code(), "capacity-solver", std::string("lifted system: ") + e.what());
  }
}

/// Solves the lifted system at a small eps by continuation from a larger one.
/// For rows that are not in general position eps * lambda approaches +-1 as
/// eps shrinks, so each halving is predicted by u + 2 (lambda - u), u uniform,
/// pulled back towards lambda until the prediction is feasible.
inline Vector solve_lifted_continuation(Eigen::Ref<const Matrix> const &rows, double epsilon, double from_epsilon,
                                        TolerancePolicy const &policy = {})
{
  Eigen::Index const  k = rows.rows();
  Vector const        u = Vector::Constant(k, 1.0 / static_cast<double>(k));
  std::vector<double> path{epsilon};
  while (std::abs(path.back()) < std::abs(from_epsilon) && path.size() < 16)
  {
    path.push_back(2.0 * path.back());
  }
  auto const feasible = [&rows](Vector const &lam, double eps) {
    return (eps * lam).cwiseAbs().maxCoeff() < 1.0 && (rows.transpose() * lam).minCoeff() > 0.0;
  };
  Vector lam = solve_lifted_system(rows, path.back(), u, policy);
  for (std::size_t i = path.size() - 1; i-- > 0;)
  {
    Vector const step  = (u + 2.0 * (lam - u)) - lam;
    Vector       guess = lam + step;
    for (int b = 0; b < 30 && !feasible(guess, path[i]); ++b)
    {
      guess = lam + std::ldexp(1.0, -(b + 1)) * step;
    }
    lam = solve_lifted_system(rows, path[i], std::move(guess), policy);
  }
  return lam;
}

/// lambda~ of the lifted channel, Newton from the uniform start.
inline Barycentric lifted_equidistant_barycentric(Channel const &channel, double epsilon,
                                                  TolerancePolicy const &policy = {})
{
  if (!(std::abs(epsilon) > 0.0) || !(std::abs(epsilon) < 1.0))
  {
    throw Error(ErrorCode::InvalidArgument, "capacity-solver", "lifting parameter must satisfy 0 < |eps| < 1");
  }
  auto const m = static_cast<Eigen::Index>(channel.m());
  return Barycentric(
      solve_lifted_system(channel.matrix(), epsilon, Vector::Constant(m, 1.0 / static_cast<double>(m)), policy));
}

}  // namespace capgeo::capacity
