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

#include "capgeo/oracles/brute_force_sec.hpp"
#include "capgeo/sec/hs.hpp"
#include "capgeo/sec/kt.hpp"
#include "capgeo/sec/small_m.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <map>
#include <random>
#include <string>

using namespace capgeo;
using namespace capgeo::sec;

namespace {

Matrix rows(std::initializer_list<std::initializer_list<double>> r)
{
  Matrix out(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  Eigen::Index i = 0;
  for (auto const &row : r)
  {
    Eigen::Index j = 0;
    for (double v : row)
    {
      out(i, j++) = v;
    }
    ++i;
  }
  return out;
}

Vector vec(std::initializer_list<double> v)
{
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v)
  {
    out(i++) = x;
  }
  return out;
}

Matrix sec_four_points()
{
  return rows({{-10, 1, -3}, {-9, -2, 8}, {-8, 10, -5}, {4, -8, 8}});
}

Matrix sec_planar()
{
  return rows({{1, 2}, {0, 0}, {2, 0}, {1, 3}});
}

Matrix hs_failure()
{
  return rows({{-10, -9}, {6, 5}, {6, -7}, {-9, -10}});
}

Matrix random_points(std::mt19937_64 &rng, Eigen::Index m, Eigen::Index n)
{
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  Matrix                                 p(m, n);
  for (Eigen::Index i = 0; i < p.size(); ++i)
  {
    p.data()[i] = u(rng);
  }
  return p;
}

// Circumcenter of a planar triangle from the determinant formula.
Vector triangle_circumcenter(Matrix const &p)
{
  double const ax = p(0, 0), ay = p(0, 1), bx = p(1, 0), by = p(1, 1), cx = p(2, 0), cy = p(2, 1);
  double const d  = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  double const a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
  return vec({(a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
              (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d});
}

}  // namespace

TEST(SecInstance, Validation)
{
  EXPECT_THROW(SecInstance(rows({{1, 2}})), Error);
  EXPECT_THROW(SecInstance(rows({{1, 2}, {1, 2}})), Error);
  EXPECT_THROW(SecInstance(rows({{1, std::nan("")}, {1, 2}})), Error);
}

TEST(Equidistant, SecFourPoints)
{
  Barycentric const l0 = equidistant_barycentric(sec_four_points());
  Vector const      expected = vec({-0.84, 0.04, 1.11, 0.69});
  for (Eigen::Index i = 0; i < 4; ++i)
  {
    EXPECT_NEAR(l0[static_cast<std::size_t>(i)], expected(i), 0.01);
  }
}

TEST(Equidistant, TrivialCases)
{
  Barycentric const two = equidistant_barycentric(rows({{0, 0}, {4, 2}}));
  EXPECT_NEAR(two[0], 0.5, 1e-15);
  EXPECT_NEAR(two[1], 0.5, 1e-15);

  double const pi = std::acos(-1.0);
  Matrix       tri(3, 2);
  for (int k = 0; k < 3; ++k)
  {
    tri(k, 0) = std::cos(2 * pi * k / 3);
    tri(k, 1) = std::sin(2 * pi * k / 3);
  }
  Barycentric const eq = equidistant_barycentric(tri);
  for (std::size_t k = 0; k < 3; ++k)
  {
    EXPECT_NEAR(eq[k], 1.0 / 3.0, 1e-14);
  }
  EXPECT_THROW(equidistant_barycentric(sec_planar()), Error);
}

TEST(Equidistant, RandomInstancesAreEquidistant)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial)
  {
    Eigen::Index const n = 2 + trial % 4;
    Eigen::Index const m = 2 + trial % n;
    Matrix const       p = random_points(rng, m, n);
    Vector const       q = barycentric_to_point(equidistant_barycentric(p), p);
    double const       d0 = distance(p.row(0).transpose(), q);
    for (Eigen::Index i = 1; i < m; ++i)
    {
      EXPECT_NEAR(distance(p.row(i).transpose(), q), d0, 1e-8 * d0);
    }
  }
}

TEST(Equidistant, TriangleMatchesDeterminantFormula)
{
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial)
  {
    Matrix const p = random_points(rng, 3, 2);
    Vector const q = barycentric_to_point(equidistant_barycentric(p), p);
    EXPECT_LT((q - triangle_circumcenter(p)).norm(), 1e-8 * (1.0 + q.norm()));
  }
}

TEST(Geometry, BarycentricToPoint)
{
  Vector const q1 = barycentric_to_point(Barycentric(vec({0, 0, 0.5, 0.5})), sec_four_points());
  EXPECT_LT((q1 - vec({-2, 1, 1.5})).norm(), 1e-15);
  Vector const q3 = barycentric_to_point(Barycentric(vec({0, 5.0 / 18, 5.0 / 18, 8.0 / 18})), sec_planar());
  EXPECT_LT((q3 - vec({1, 4.0 / 3.0})).norm(), 1e-15);
  EXPECT_THROW(barycentric_to_point(Barycentric::vertex(3, 0), sec_four_points()), Error);
}

TEST(Lifting, Construction)
{
  LiftedSecInstance const l = lift_sec(SecInstance(rows({{1}, {0}, {2}})), 0.25);
  Matrix const expected = rows({{1, 0.25, 0, 0}, {0, 0, 0.25, 0}, {2, 0, 0, 0.25}});
  EXPECT_EQ(l.lifted, expected);
  EXPECT_EQ(rank_estimate(l.lifted), 3u);
  EXPECT_THROW(lift_sec(SecInstance(rows({{1}, {0}})), 0.0), Error);
}

TEST(Lifting, EvenInEpsilon)
{
  SecInstance const inst(sec_planar());
  Vector const      plus  = equidistant_barycentric(lift_sec(inst, 0.01).lifted).weights();
  Vector const      minus = equidistant_barycentric(lift_sec(inst, -0.01).lifted).weights();
  EXPECT_LT((plus - minus).lpNorm<Eigen::Infinity>(), 1e-9);
}

TEST(Projection, Basics)
{
  Matrix const line = rows({{1, 0, 0}, {0, 1, 0}});
  Vector const q    = vec({0, 0, 1});
  Vector const pr   = project_onto_affine(q, line);
  EXPECT_LT((pr - vec({0.5, 0.5, 0})).norm(), 1e-15);
  for (Eigen::Index i = 0; i < 2; ++i)
  {
    EXPECT_NEAR(inner_product(line.row(i).transpose(), pr, q), 0.0, 1e-12);
  }

  Vector const inside = vec({0.25, 0.75, 0});
  EXPECT_LT((project_onto_affine(inside, line) - inside).norm(), 1e-15);

  Matrix const p  = sec_four_points();
  Vector const q1 = barycentric_to_point(equidistant_barycentric(p), p);
  Vector const q2 = project_onto_affine(q1, p.bottomRows(2));
  EXPECT_LT((q2 - vec({-2, 1, 1.5})).norm(), 1e-12);
}

TEST(Identities, PythagoreanAndIteratedProjection)
{
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial)
  {
    Matrix const t = random_points(rng, 3, 3);
    Vector const p = t.row(0).transpose(), q = t.row(1).transpose(), r = t.row(2).transpose();
    double const lhs = 2.0 * inner_product(p, q, r);
    double const rhs = (p - q).squaredNorm() + (q - r).squaredNorm() - (p - r).squaredNorm();
    EXPECT_NEAR(lhs, rhs, 1e-10 * (1.0 + std::abs(rhs)));

    Matrix const pts = random_points(rng, 4, 4);
    Vector const q0  = barycentric_to_point(equidistant_barycentric(pts), pts);
    Vector const l1  = project_onto_affine(q0, pts.topRows(3));
    Vector const l2a = project_onto_affine(l1, pts.topRows(2));
    Vector const l2b = project_onto_affine(q0, pts.topRows(2));
    EXPECT_LT((l2a - l2b).norm(), 1e-8 * (1.0 + l2b.norm()));
  }
}

TEST(Kt, Examples)
{
  SecInstance const e1(sec_four_points());
  KtVerdict const   v = verify_kt_sec(e1, Barycentric(vec({0, 0, 0.5, 0.5})));
  EXPECT_TRUE(v.certified);
  EXPECT_NEAR(v.level, 12.62, 0.01);

  KtVerdict const vertex = verify_kt_sec(e1, Barycentric::vertex(4, 2));
  EXPECT_FALSE(vertex.certified);
  EXPECT_EQ(vertex.level, 0.0);

  KtVerdict const f = verify_kt_sec(SecInstance(hs_failure()), Barycentric(vec({0.5, 0.5, 0, 0})));
  EXPECT_TRUE(f.certified);
  EXPECT_NEAR(f.level, std::sqrt(113.0), 1e-12);

  try
  {
    verify_kt_sec(e1, Barycentric(vec({-0.1, 0.1, 0.5, 0.5})));
    FAIL();
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::NegativeWeight);
  }
}

TEST(Hs, SecFourPoints)
{
  SecSolution const s = solve_hs(SecInstance(sec_four_points()));
  EXPECT_LT((s.center - vec({-2, 1, 1.5})).norm(), 1e-9);
  EXPECT_NEAR(s.radius, 12.62, 0.01);
  EXPECT_EQ(s.support, (IndexSet{2, 3}));
  EXPECT_TRUE(s.kt_certified);
  EXPECT_NEAR(distance(sec_four_points().row(0).transpose(), s.center), 9.18, 0.01);
  EXPECT_NEAR(distance(sec_four_points().row(1).transpose(), s.center), 10.01, 0.01);
}

TEST(Hs, SecCollinear)
{
  SecSolution const s = solve_hs(SecInstance(rows({{1}, {0}, {2}})));
  EXPECT_NEAR(s.center(0), 1.0, 1e-8);
  EXPECT_NEAR(s.weights[0], 0.0, 1e-8);
  EXPECT_NEAR(s.weights[1], 0.5, 1e-8);
  EXPECT_NEAR(s.weights[2], 0.5, 1e-8);
  EXPECT_EQ(s.support, (IndexSet{1, 2}));
  EXPECT_EQ(s.history, (IndexSet{0}));
}

TEST(Hs, SecPlanar)
{
  SecSolution const s = solve_hs(SecInstance(sec_planar()));
  EXPECT_LT((s.center - vec({1, 4.0 / 3.0})).norm(), 1e-6);
  Vector const expected = vec({0, 5.0 / 18, 5.0 / 18, 8.0 / 18});
  EXPECT_LT((s.weights.weights() - expected).lpNorm<Eigen::Infinity>(), 1e-6);
  EXPECT_TRUE(s.kt_certified);
}

TEST(Hs, HsFailureFailure)
{
  SecInstance const inst(hs_failure());
  SecSolution const s = solve_hs(inst);
  ASSERT_FALSE(s.history.empty());
  EXPECT_EQ(s.history.front(), 0u);
  EXPECT_FALSE(s.kt_certified);
  EXPECT_GT((s.center - vec({-2, -2})).norm(), 1e-3);

  SecSolution const bf = oracles::brute_force_sec(inst);
  EXPECT_LT((bf.center - vec({-2, -2})).norm(), 1e-9);
  EXPECT_NEAR(bf.radius, std::sqrt(113.0), 1e-9);
  EXPECT_TRUE(bf.kt_certified);
}

TEST(Hs, EnclosureAndOracleAgreement)
{
  std::mt19937_64 rng(21);
  int             certified = 0;
  for (int trial = 0; trial < 150; ++trial)
  {
    Eigen::Index const m = 3 + trial % 4;
    Eigen::Index const n = 2 + trial % 2;
    SecInstance const  inst(random_points(rng, m, n));
    SecSolution const  s = solve_hs(inst);
    for (Eigen::Index i = 0; i < m; ++i)
    {
      EXPECT_GE(s.radius, distance(inst.points().row(i).transpose(), s.center) - 1e-8);
    }
    if (s.kt_certified)
    {
      ++certified;
      SecSolution const bf = oracles::brute_force_sec(inst);
      EXPECT_LT((s.center - bf.center).norm(), 1e-6);
      EXPECT_NEAR(s.radius, bf.radius, 1e-6);
    }
  }
  EXPECT_GT(certified, 120);
}

TEST(Hs, LiftingConsistentWithPlainCascade)
{
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial)
  {
    Eigen::Index const m = 2 + trial % 3;
    SecInstance const  inst(random_points(rng, m, 3));
    auto const         plain = capgeo::detail::run_cascade(
        inst.m(),
        [&inst](IndexSet const &s) { return equidistant_barycentric(select_rows(inst.points(), s)).weights(); },
        -1e-9);
    Vector const center =
        select_rows(inst.points(), plain.survivors).transpose() * plain.final_weights;
    EXPECT_LT((solve_hs(inst).center - center).norm(), 1e-6);
  }
}

TEST(SmallM, TriangleCases)
{
  // Obtuse at P1: the center is the midpoint of P2 P3.
  SecSolution const obtuse = solve_small_m_sec(SecInstance(rows({{0, 1}, {-4, 0}, {4, 0}})));
  EXPECT_EQ(obtuse.case_label, "3-2");
  EXPECT_LT((obtuse.center - vec({0, 0})).norm(), 1e-12);
  EXPECT_TRUE(obtuse.kt_certified);

  Matrix const      acute = rows({{0, 3}, {-2, 0}, {2, 0}});
  SecSolution const a     = solve_small_m_sec(SecInstance(acute));
  EXPECT_EQ(a.case_label, "3-1");
  EXPECT_LT((a.center - triangle_circumcenter(acute)).norm(), 1e-12);
}

TEST(SmallM, SecFourPointsMatchesHs)
{
  SecInstance const inst(sec_four_points());
  SecSolution const s = solve_small_m_sec(inst);
  EXPECT_EQ(s.case_label, "4-2-2");
  EXPECT_LT((s.center - solve_hs(inst).center).norm(), 1e-9);
  EXPECT_TRUE(s.kt_certified);
  EXPECT_THROW(solve_small_m_sec(SecInstance(sec_planar())), Error);
}

TEST(SmallM, RandomAgreesWithBruteForce)
{
  std::mt19937_64 rng(99);
  std::map<std::string, int> labels;
  for (int trial = 0; trial < 300; ++trial)
  {
    Eigen::Index const m = 2 + trial % 3;
    SecInstance const  inst(random_points(rng, m, 3));
    SecSolution const  s  = solve_small_m_sec(inst);
    SecSolution const  bf = oracles::brute_force_sec(inst);
    EXPECT_TRUE(s.kt_certified);
    EXPECT_LT((s.center - bf.center).norm(), 1e-8);
    ++labels[s.case_label];
  }
  EXPECT_GE(labels.size(), 6u);
}

TEST(Hs, PermutationAndTranslationInvariance)
{
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial)
  {
    Matrix const      p = random_points(rng, 7, 3);
    SecSolution const a = solve_hs(SecInstance(p));

    Eigen::PermutationMatrix<Eigen::Dynamic> perm(7);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + 7, rng);
    SecSolution const b = solve_hs(SecInstance(perm * p));
    EXPECT_LT((a.center - b.center).norm(), 1e-9);
    EXPECT_NEAR(a.radius, b.radius, 1e-9);

    Vector const      shift = vec({3.5, -2.0, 0.25});
    Matrix const      moved = p.rowwise() + shift.transpose();
    SecSolution const c     = solve_hs(SecInstance(moved));
    EXPECT_LT((a.center + shift - c.center).norm(), 1e-9);
    EXPECT_NEAR(a.radius, c.radius, 1e-9);
  }
}

TEST(BruteForce, TwoPointsAndPermutation)
{
  SecSolution const two = oracles::brute_force_sec(SecInstance(rows({{0, 0}, {2, 4}})));
  EXPECT_LT((two.center - vec({1, 2})).norm(), 1e-15);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial)
  {
    Matrix const      p = random_points(rng, 6, 2);
    SecSolution const a = oracles::brute_force_sec(SecInstance(p));
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(6);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + 6, rng);
    SecSolution const b = oracles::brute_force_sec(SecInstance(perm * p));
    EXPECT_LT((a.center - b.center).norm(), 1e-10);
    EXPECT_NEAR(a.radius, b.radius, 1e-10);
    EXPECT_EQ(a.support.size(), b.support.size());
  }
  EXPECT_THROW(oracles::brute_force_sec(SecInstance(random_points(rng, 21, 2))), Error);
}
