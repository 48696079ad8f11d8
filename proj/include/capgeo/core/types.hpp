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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace capgeo {

using Matrix   = Eigen::MatrixXd;
using Vector   = Eigen::VectorXd;
using IndexSet = std::vector<std::size_t>;

inline bool all_finite(Eigen::Ref<const Matrix> const &a)
{
  return a.allFinite();
}

/// Tolerances shared by both solvers.
struct TolerancePolicy
{
  /// Weights in [negativity_threshold, 0) are treated as zero.
  double      negativity_threshold = -1e-9;
  double      kt_rel_tol           = 1e-6;
  double      newton_tol           = 1e-12;
  std::size_t newton_max_iter      = 200;

  void validate() const
  {
    if (!(negativity_threshold <= 0.0) || !(kt_rel_tol > 0.0) || !(newton_tol > 0.0) ||
        newton_max_iter == 0)
    {
      throw Error(ErrorCode::InvalidArgument, "numeric-core", "invalid tolerance policy");
    }
  }
};

/// Outcome of a Kuhn-Tucker check.
struct KtVerdict
{
  bool   certified = false;
  /// Common distance (or divergence) over the support.
  double level = 0.0;
};

/// Affine weights over a fixed list of generators. Entries may be negative;
/// the sum is 1 up to 1e-10 scaled by the l1 mass of the weights.
class Barycentric
{
public:
  static constexpr double kSumTolerance = 1e-10;

  Barycentric() = default;

  explicit Barycentric(Vector weights)
    : weights_(std::move(weights))
  {
    if (weights_.size() == 0 || !weights_.allFinite())
    {
      throw Error(ErrorCode::InvalidArgument, "numeric-core", "barycentric weights must be finite");
    }
    double const mass = std::max(1.0, weights_.lpNorm<1>());
    if (std::abs(weights_.sum() - 1.0) > kSumTolerance * mass)
    {
      throw Error(ErrorCode::InvalidArgument, "numeric-core",
                  "barycentric weights must sum to 1 (got " + std::to_string(weights_.sum()) + ")");
    }
  }

  static Barycentric uniform(std::size_t m)
  {
    return Barycentric(Vector::Constant(static_cast<Eigen::Index>(m), 1.0 / static_cast<double>(m)));
  }

  static Barycentric vertex(std::size_t m, std::size_t i)
  {
    Vector w = Vector::Zero(static_cast<Eigen::Index>(m));
    w(static_cast<Eigen::Index>(i)) = 1.0;
    return Barycentric(std::move(w));
  }

  Vector const &weights() const noexcept
  {
    return weights_;
  }

  std::size_t size() const noexcept
  {
    return static_cast<std::size_t>(weights_.size());
  }

  double operator[](std::size_t i) const
  {
    return weights_(static_cast<Eigen::Index>(i));
  }

  /// Indices with weight strictly greater than zero.
  IndexSet support() const
  {
    IndexSet s;
    for (Eigen::Index i = 0; i < weights_.size(); ++i)
    {
      if (weights_(i) > 0.0)
      {
        s.push_back(static_cast<std::size_t>(i));
      }
    }
    return s;
  }

  /// Copy with entries in [threshold, 0) set to exactly zero and the result
  /// rescaled to unit sum.
  Barycentric clamped(double threshold) const
  {
    Vector w = weights_;
    for (Eigen::Index i = 0; i < w.size(); ++i)
    {
      if (w(i) < 0.0 && w(i) >= threshold)
      {
        w(i) = 0.0;
      }
    }
    return Barycentric(w / w.sum());
  }

private:
  Vector weights_;
};

/// A probability vector with strictly positive entries.
class Distribution
{
public:
  static constexpr double kSumTolerance = 1e-12;

  Distribution() = default;

  explicit Distribution(Vector probs)
    : probs_(std::move(probs))
  {
    if (probs_.size() == 0 || !probs_.allFinite())
    {
      throw Error(ErrorCode::InvalidArgument, "numeric-core", "distribution must be finite");
    }
    if (probs_.minCoeff() <= 0.0)
    {
      throw Error(ErrorCode::DomainEscape, "numeric-core",
                  "distribution entries must be strictly positive");
    }
    if (std::abs(probs_.sum() - 1.0) > kSumTolerance)
    {
      throw Error(ErrorCode::InvalidArgument, "numeric-core", "distribution must sum to 1");
    }
  }

  /// Rescales a positive vector to unit mass.
  static Distribution normalized(Vector v)
  {
    double const s = v.sum();
    if (!(s > 0.0))
    {
      throw Error(ErrorCode::DomainEscape, "numeric-core", "cannot normalize a non-positive vector");
    }
    return Distribution(v / s);
  }

  static Distribution uniform(std::size_t n)
  {
    return Distribution(Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)));
  }

  Vector const &probs() const noexcept
  {
    return probs_;
  }

  std::size_t size() const noexcept
  {
    return static_cast<std::size_t>(probs_.size());
  }

  double operator[](std::size_t j) const
  {
    return probs_(static_cast<Eigen::Index>(j));
  }

private:
  Vector probs_;
};

/// Rows of `a` selected by `rows`, in order.
inline Matrix select_rows(Eigen::Ref<const Matrix> const &a, IndexSet const &rows)
{
  Matrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t k = 0; k < rows.size(); ++k)
  {
    out.row(static_cast<Eigen::Index>(k)) = a.row(static_cast<Eigen::Index>(rows[k]));
  }
  return out;
}

/// Scatters subset weights back into a length-m vector with zeros elsewhere.
inline Vector scatter(Vector const &subset_weights, IndexSet const &rows, std::size_t m)
{
  Vector full = Vector::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < rows.size(); ++k)
  {
    full(static_cast<Eigen::Index>(rows[k])) = subset_weights(static_cast<Eigen::Index>(k));
  }
  return full;
}

inline IndexSet all_indices(std::size_t m)
{
  IndexSet s(m);
  for (std::size_t i = 0; i < m; ++i)
  {
    s[i] = i;
  }
  return s;
}

}  // namespace capgeo
