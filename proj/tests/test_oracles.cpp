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
#include "capgeo/capacity/kt.hpp"
#include "capgeo/oracles/blahut_arimoto.hpp"
#include "capgeo/oracles/brute_force_sec.hpp"
#include "capgeo/oracles/complexity.hpp"
#include "capgeo/sec/kt.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

using namespace capgeo;
using namespace capgeo::oracles;

namespace {

struct Circle
{
  Eigen::Vector2d c{0.0, 0.0};
  double          r = -1.0;

  bool contains(Eigen::Vector2d const &p) const
  {
    return (p - c).norm() <= r * (1.0 + 1e-12) + 1e-12;
  }
};

Circle from2(Eigen::Vector2d const &a, Eigen::Vector2d const &b)
{
  return {0.5 * (a + b), 0.5 * (a - b).norm()};
}

Circle from3(Eigen::Vector2d const &a, Eigen::Vector2d const &b, Eigen::Vector2d const &c)
{
  double const bx = b.x() - a.x(), by = b.y() - a.y();
  double const cx = c.x() - a.x(), cy = c.y() - a.y();
  double const d  = 2.0 * (bx * cy - by * cx);
  double const ux = (cy * (bx * bx + by * by) - by * (cx * cx + cy * cy)) / d;
  double const uy = (bx * (cx * cx + cy * cy) - cx * (bx * bx + by * by)) / d;
  Eigen::Vector2d const center(a.x() + ux, a.y() + uy);
  return {center, (center - a).norm()};
}

// Iterative Welzl with the boundary-point loops unrolled (2-D only).
Circle welzl(std::vector<Eigen::Vector2d> pts)
{
  std::mt19937_64 rng(5);
  std::shuffle(pts.begin(), pts.end(), rng);
  Circle c;
  for (std::size_t i = 0; i < pts.size(); ++i)
  {
    if (c.r >= 0.0 && c.contains(pts[i]))
    {
      continue;
    }
    c = {pts[i], 0.0};
    for (std::size_t j = 0; j < i; ++j)
    {
      if (c.contains(pts[j]))
      {
        continue;
      }
      c = from2(pts[i], pts[j]);
      for (std::size_t k = 0; k < j; ++k)
      {
        if (!c.contains(pts[k]))
        {
          c = from3(pts[i], pts[j], pts[k]);
        }
      }
    }
  }
  return c;
}

Matrix random_integer_points(std::mt19937_64 &rng, Eigen::Index m, Eigen::Index n)
{
  std::uniform_int_distribution<int> u(-1000, 1000);
  Matrix                             p(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
  {
    for (Eigen::Index j = 0; j < n; ++j)
    {
      p(i, j) = u(rng);
    }
  }
  return p;
}

Matrix random_channel(std::mt19937_64 &rng, Eigen::Index m, Eigen::Index n)
{
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Matrix                                 a(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
  {
    for (Eigen::Index j = 0; j < n; ++j)
    {
      a(i, j) = u(rng);
    }
    a.row(i) /= a.row(i).sum();
  }
  return a;
}

}  // namespace

TEST(Complexity, TableRatios)
{
  std::array<std::size_t, 5> const ms = {3, 4, 5, 8, 10};
  std::array<std::size_t, 4> const ns = {2, 3, 10, 20};
  double const                     printed[5][4] = {{0.250, 0.250, 0.250, 0.250},
                                                    {0.200, 0.182, 0.182, 0.182},
                                                    {0.150, 0.120, 0.115, 0.115},
                                                    {0.071, 0.039, 0.024, 0.024},
                                                    {0.048, 0.021, 0.008, 0.008}};
  for (std::size_t a = 0; a < ms.size(); ++a)
  {
    for (std::size_t b = 0; b < ns.size(); ++b)
    {
      EXPECT_NEAR(complexity_counts(ms[a], ns[b]).ratio(), printed[a][b], 5e-4) << ms[a] << "x" << ns[b];
    }
  }
  EXPECT_EQ(complexity_counts(4, 2).n1, 10u);
}

TEST(Complexity, N1CountsSubsetsByEnumeration)
{
  for (std::size_t m = 3; m <= 12; ++m)
  {
    for (std::size_t n = 1; n <= 12; ++n)
    {
      std::uint64_t count = 0;
      for (std::uint32_t mask = 0; mask < (1u << m); ++mask)
      {
        auto const k = static_cast<std::size_t>(std::popcount(mask));
        count += (k >= 2 && k <= n + 1) ? 1 : 0;
      }
      ComplexityCounts const c = complexity_counts(m, n);
      EXPECT_EQ(c.n1, count);
      EXPECT_EQ(c.n2, m - 2);
    }
  }
}

TEST(Complexity, BinomialAndErrors)
{
  for (std::uint64_t n = 1; n < 40; ++n)
  {
    for (std::uint64_t k = 1; k < n; ++k)
    {
      EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
    }
  }
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_THROW(complexity_counts(2, 3), Error);
  EXPECT_THROW(complexity_counts(5, 0), Error);
}

TEST(BruteForce, HsFailurePlacement)
{
  Matrix p(4, 2);
  p << -10, -9, 6, 5, 6, -7, -9, -10;
  sec::SecSolution const s = brute_force_sec(sec::SecInstance(p));
  EXPECT_LT((s.center - Eigen::Vector2d(-2, -2)).norm(), 1e-9);
  EXPECT_NEAR(s.radius, std::sqrt(113.0), 1e-9);
  EXPECT_TRUE(s.kt_certified);
}

TEST(BruteForce, MatchesWelzlInThePlane)
{
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 300; ++trial)
  {
    auto const             m = static_cast<Eigen::Index>(3 + trial % 10);
    Matrix const           p = random_integer_points(rng, m, 2);
    sec::SecSolution const s = brute_force_sec(sec::SecInstance(p));
    std::vector<Eigen::Vector2d> pts;
    for (Eigen::Index i = 0; i < m; ++i)
    {
      pts.emplace_back(p(i, 0), p(i, 1));
    }
    Circle const w = welzl(pts);
    EXPECT_NEAR(s.radius, w.r, 1e-9 * std::max(1.0, w.r)) << trial;
    EXPECT_LT((s.center - Eigen::Vector2d(w.c)).norm(), 1e-7) << trial;
  }
}

TEST(BruteForce, Certificates)
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial)
  {
    auto const             m = static_cast<Eigen::Index>(3 + trial % 6);
    auto const             n = static_cast<Eigen::Index>(2 + trial % 4);
    sec::SecInstance const inst(random_integer_points(rng, m, n));
    sec::SecSolution const s = brute_force_sec(inst);
    for (Eigen::Index i = 0; i < m; ++i)
    {
      EXPECT_LE((inst.points().row(i).transpose() - s.center).norm(), s.radius * (1.0 + 1e-12));
    }
    EXPECT_TRUE(sec::verify_kt_sec(inst, s.weights).certified) << trial;
  }
}

TEST(BruteForce, TooLarge)
{
  std::mt19937_64 rng(3);
  Matrix const    p = random_integer_points(rng, 21, 2);
  try
  {
    (void)brute_force_sec(sec::SecInstance(p));
    FAIL() << "expected TooLarge";
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(BlahutArimoto, SymmetricChannel)
{
  // Rows are permutations of one distribution and the columns too, so the
  // uniform input is optimal and C = ln n - H(row).
  Vector row(4);
  row << 0.5, 0.25, 0.15, 0.1;
  Matrix a(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
  {
    for (Eigen::Index j = 0; j < 4; ++j)
    {
      a(i, j) = row((j - i + 4) % 4);
    }
  }
  double const expected = std::log(4.0) - capacity::entropy(row);
  auto const   s        = blahut_arimoto(a);
  EXPECT_NEAR(s.capacity_nats, expected, 1e-9);
  EXPECT_NEAR(s.capacity_bits, expected / std::log(2.0), 1e-9);
}

TEST(BlahutArimoto, RepeatedRowsAllowed)
{
  Matrix a(3, 2);
  a << 0.9, 0.1, 0.9, 0.1, 0.2, 0.8;
  Matrix b(2, 2);
  b << 0.9, 0.1, 0.2, 0.8;
  EXPECT_NEAR(blahut_arimoto(a).capacity_nats, blahut_arimoto(b).capacity_nats, 1e-9);
}

TEST(BlahutArimoto, DominatesMutualInformation)
{
  std::mt19937_64                        rng(19);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial)
  {
    auto const   m = static_cast<Eigen::Index>(2 + trial % 5);
    Matrix const a = random_channel(rng, m, 3);
    double const c = blahut_arimoto(a).capacity_nats;
    for (int k = 0; k < 20; ++k)
    {
      Vector lam(m);
      for (Eigen::Index i = 0; i < m; ++i)
      {
        lam(i) = u(rng);
      }
      lam /= lam.sum();
      EXPECT_LE(capacity::mutual_information(Barycentric(lam), a), c + 1e-9);
    }
  }
}

TEST(BlahutArimoto, ResultIsKtCertified)
{
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial)
  {
    Matrix const a = random_channel(rng, static_cast<Eigen::Index>(3 + trial % 4), 4);
    auto const   s = blahut_arimoto(a);
    EXPECT_TRUE(s.kt_certified);
    EXPECT_TRUE(capacity::verify_kt_capacity(a, s.weights).certified) << trial;
  }
}

TEST(BlahutArimoto, Rejections)
{
  Matrix zero(2, 2);
  zero << 1.0, 0.0, 0.5, 0.5;
  EXPECT_THROW(blahut_arimoto(zero), Error);
  Matrix bad(2, 2);
  bad << 0.6, 0.6, 0.5, 0.5;
  EXPECT_THROW(blahut_arimoto(bad), Error);
  Matrix ok(2, 2);
  ok << 0.6, 0.4, 0.5, 0.5;
  EXPECT_THROW(blahut_arimoto(ok, BlahutArimotoOptions{0.0}), Error);
  try
  {
    (void)blahut_arimoto(ok, BlahutArimotoOptions{1e-14, 2});
    FAIL() << "expected NoConvergence";
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}
