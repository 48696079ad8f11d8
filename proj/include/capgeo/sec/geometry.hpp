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

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace capgeo::sec {

/// A finite point set P^1..P^m in R^n stored as the rows of a matrix.
class SecInstance
{
public:
  SecInstance() = default;

  explicit SecInstance(Matrix points)
    : points_(std::move(points))
  {
    if (points_.rows() < 2 || points_.cols() < 1)
    {
      throw Error(ErrorCode::InvalidArgument, "sec-solver", "need at least two points in R^n, n >= 1");
    }
    if (!points_.allFinite())
    {
      throw Error(ErrorCode::InvalidArgument, "sec-solver", "point coordinates must be finite");
    }
    for (Eigen::Index i = 0; i < points_.rows(); ++i)
    {
      for (Eigen::Index k = i + 1; k < points_.rows(); ++k)
      {
        if ((points_.row(i) - points_.row(k)).squaredNorm() == 0.0)
        {
          throw Error(ErrorCode::InvalidArgument, "sec-solver",
                      "points " + std::to_string(i) + " and " + std::to_string(k) + " coincide");
        }
      }
    }
  }

  Matrix const &points() const noexcept
  {
    return points_;
  }

  std::size_t m() const noexcept
  {
    return static_cast<std::size_t>(points_.rows());
  }

  std::size_t n() const noexcept
  {
    return static_cast<std::size_t>(points_.cols());
  }

  /// Largest distance of a point from the centroid; the natural length unit
  /// of the instance.
  double scale() const
  {
    Vector const c = points_.colwise().mean().transpose();
    double       s = 0.0;
    for (Eigen::Index i = 0; i < points_.rows(); ++i)
    {
      s = std::max(s, (points_.row(i).transpose() - c).norm());
    }
    return s > 0.0 ? s : 1.0;
  }

private:
  Matrix points_;
};

struct SecSolution
{
  Vector      center;
  double      radius = 0.0;
  Barycentric weights;
  IndexSet    support;
  bool        kt_certified = false;
  double      kt_d0        = 0.0;
  /// Removed point indices, in removal order.
  IndexSet            history;
  /// Full-length lifted barycentric coordinates at each cascade step.
  std::vector<Vector> steps;
  /// Absolute lifting parameter used for `steps` (0 when no lifting).
  double      epsilon = 0.0;
  /// Case label for the small-m decision tree ("4-3-2", ...), empty otherwise.
  std::string case_label;
};

/// Rows (P^i, eps e_i) in R^{n+m}.
struct LiftedSecInstance
{
  SecInstance base;
  double      epsilon = 0.0;
  Matrix      lifted;
};

inline LiftedSecInstance lift_sec(SecInstance const &instance, double epsilon)
{
  if (epsilon == 0.0 || !std::isfinite(epsilon))
  {
    throw Error(ErrorCode::InvalidArgument, "sec-solver", "lifting parameter must be finite and non-zero");
  }
  auto const m = static_cast<Eigen::Index>(instance.m());
  auto const n = static_cast<Eigen::Index>(instance.n());
  Matrix     lifted = Matrix::Zero(m, n + m);
  lifted.leftCols(n) = instance.points();
  lifted.rightCols(m).diagonal().setConstant(epsilon);
  return LiftedSecInstance{instance, epsilon, std::move(lifted)};
}

inline double distance(Eigen::Ref<const Vector> const &p, Eigen::Ref<const Vector> const &q)
{
  return (p - q).norm();
}

/// (P - Q, R - Q).
inline double inner_product(Eigen::Ref<const Vector> const &p, Eigen::Ref<const Vector> const &q,
                            Eigen::Ref<const Vector> const &r)
{
  return (p - q).dot(r - q);
}

inline Vector barycentric_to_point(Barycentric const &weights, Eigen::Ref<const Matrix> const &points)
{
  if (weights.size() != static_cast<std::size_t>(points.rows()))
  {
    throw Error(ErrorCode::LengthMismatch, "sec-solver", "weights length differs from point count");
  }
  return points.transpose() * weights.weights();
}

namespace detail {

/// Translates to the centroid and rescales to unit size. Barycentric
/// coordinates of equidistant points and projections are invariant under this.
inline Matrix normalized_frame(Eigen::Ref<const Matrix> const &points)
{
  Eigen::RowVectorXd const c = points.colwise().mean();
  Matrix                   x = points.rowwise() - c;
  double const             s = x.rowwise().norm().maxCoeff();
  if (s > 0.0)
  {
    x /= s;
  }
  return x;
}

inline Vector fix_affine_sum(Vector w)
{
  w.array() += (1.0 - w.sum()) / static_cast<double>(w.size());
  return w;
}

}  // namespace detail

/// Barycentric coordinate of the point of the affine hull equidistant from
/// all rows:
///
///   lambda = 1/2 (a + tau 1) M^{-1},  tau = (2 - a M^{-1} 1^t) / (1 M^{-1} 1^t)
///
/// with Phi_hat = [1 | P], M = Phi_hat Phi_hat^t and a_i = ||(1, P^i)||^2.
/// M^{-1} is applied through a QR factorisation of Phi_hat^t (M = R^t R) in a
/// centred, unit-scaled frame.
inline Barycentric equidistant_barycentric(Eigen::Ref<const Matrix> const &points)
{
  Eigen::Index const m = points.rows();
  if (m < 1)
  {
    throw Error(ErrorCode::InvalidArgument, "sec-solver", "no points");
  }
  if (m == 1)
  {
    return Barycentric::vertex(1, 0);
  }
  if (!in_general_position(points))
  {
    throw Error(ErrorCode::DegeneratePlacement, "sec-solver",
                "points are not in general position (M is singular)");
  }
  Matrix const x = detail::normalized_frame(points);
  Matrix       hat(m, x.cols() + 1);
  hat.col(0).setOnes();
  hat.rightCols(x.cols()) = x;

  Vector const a    = hat.rowwise().squaredNorm();
  Vector const ones = Vector::Ones(m);

  Eigen::HouseholderQR<Matrix> qr(hat.transpose());
  Matrix const r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
  auto const   apply_m_inverse = [&r](Vector const &rhs) {
    Vector y = r.transpose().triangularView<Eigen::Lower>().solve(rhs);
    return Vector(r.triangularView<Eigen::Upper>().solve(y));
  };
  Vector const u   = apply_m_inverse(a);
  Vector const v   = apply_m_inverse(ones);
  double const tau = (2.0 - u.sum()) / v.sum();
  Vector       lam = 0.5 * (u + tau * v);
  if (!lam.allFinite())
  {
    throw Error(ErrorCode::DegeneratePlacement, "sec-solver", "equidistant point is not finite");
  }
  return Barycentric(detail::fix_affine_sum(std::move(lam)));
}

/// Weights mu over `points` of the orthogonal projection of q onto their
/// affine hull.
inline Barycentric project_onto_affine_weights(Eigen::Ref<const Vector> const &q,
                                               Eigen::Ref<const Matrix> const &points)
{
  Eigen::Index const m = points.rows();
  if (q.size() != points.cols())
  {
    throw Error(ErrorCode::LengthMismatch, "sec-solver", "projection: dimension mismatch");
  }
  if (m == 1)
  {
    return Barycentric::vertex(1, 0);
  }
  if (!in_general_position(points))
  {
    throw Error(ErrorCode::DegeneratePlacement, "sec-solver",
                "projection target is not in general position");
  }
  Matrix const psi   = difference_rows(points);
  Vector const rhs   = q - points.row(0).transpose();
  Vector const alpha = psi.transpose().householderQr().solve(rhs);
  Vector       mu(m);
  mu(0) = 1.0 - alpha.sum();
  mu.tail(m - 1) = alpha;
  return Barycentric(std::move(mu));
}

/// Nearest point to q on the affine hull of `points`.
inline Vector project_onto_affine(Eigen::Ref<const Vector> const &q, Eigen::Ref<const Matrix> const &points)
{
  return barycentric_to_point(project_onto_affine_weights(q, points), points);
}

}  // namespace capgeo::sec
