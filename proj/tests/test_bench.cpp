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

#include "capgeo/bench/experiment.hpp"
#include "capgeo/bench/generators.hpp"
#include "capgeo/bench/report.hpp"
#include "capgeo/bench/rng.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace capgeo;
using namespace capgeo::bench;

TEST(Rng, CounterBasedStreams)
{
  SplitMix64 a(TrialKey{1, 3, 2, 0});
  SplitMix64 b(TrialKey{1, 3, 2, 0});
  SplitMix64 c(TrialKey{1, 3, 2, 1});
  bool       differs = false;
  for (int i = 0; i < 100; ++i)
  {
    std::uint64_t const x = a.next();
    EXPECT_EQ(x, b.next());
    differs = differs || x != c.next();
  }
  EXPECT_TRUE(differs);
  EXPECT_EQ(a.counter(), 100u);
}

TEST(Rng, ReferenceOutput)
{
  // Published SplitMix64 outputs for state 0: the first value is the
  // finaliser applied to one golden-ratio increment.
  SplitMix64 g(0);
  EXPECT_EQ(g.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(g.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(g.next(), 0x06c45d188009454fULL);
}

TEST(Rng, RangesAndMeans)
{
  SplitMix64 g(42);
  double     sum_int = 0.0;
  double     sum_u   = 0.0;
  int const  draws   = 100000;
  for (int i = 0; i < draws; ++i)
  {
    std::int64_t const v = g.uniform_int(-1000, 1000);
    ASSERT_GE(v, -1000);
    ASSERT_LE(v, 1000);
    sum_int += static_cast<double>(v);
    double const u = g.uniform_open01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum_u += u;
  }
  EXPECT_NEAR(sum_int / draws, 0.0, 10.0);
  EXPECT_NEAR(sum_u / draws, 0.5, 0.005);
}

TEST(Generators, SecInstances)
{
  double    sum   = 0.0;
  long long count = 0;
  for (std::size_t t = 0; t < 10000; ++t)
  {
    sec::SecInstance const a = gen_sec_instance(5, 2, TrialKey{9, 5, 2, t});
    for (Eigen::Index i = 0; i < a.points().size(); ++i)
    {
      double const v = a.points().data()[i];
      ASSERT_EQ(v, std::round(v));
      ASSERT_LE(std::abs(v), 1000.0);
      sum += v;
      ++count;
    }
  }
  EXPECT_EQ(count, 100000);
  EXPECT_NEAR(sum / static_cast<double>(count), 0.0, 10.0);

  sec::SecInstance const x = gen_sec_instance(8, 3, TrialKey{2, 8, 3, 17});
  sec::SecInstance const y = gen_sec_instance(8, 3, TrialKey{2, 8, 3, 17});
  EXPECT_EQ(x.points(), y.points());
  EXPECT_NE(x.points(), gen_sec_instance(8, 3, TrialKey{3, 8, 3, 17}).points());
}

TEST(Generators, DuplicatePointsAreRedrawn)
{
  // With n = 1 and 20 points, collisions among 2001 values are common.
  for (std::size_t t = 0; t < 500; ++t)
  {
    sec::SecInstance const a = gen_sec_instance(20, 1, TrialKey{4, 20, 1, t});
    std::set<double>       seen(a.points().data(), a.points().data() + a.points().size());
    ASSERT_EQ(seen.size(), 20u);
  }
}

TEST(Generators, ChannelInstances)
{
  Vector    mean  = Vector::Zero(4);
  int const draws = 25000;
  for (int t = 0; t < draws; ++t)
  {
    capacity::Channel const ch = gen_channel_instance(4, 4, TrialKey{5, 4, 4, static_cast<std::size_t>(t)});
    for (Eigen::Index i = 0; i < 4; ++i)
    {
      ASSERT_NEAR(ch.matrix().row(i).sum(), 1.0, 1e-12);
      ASSERT_GT(ch.matrix().row(i).minCoeff(), 0.0);
      mean += ch.matrix().row(i).transpose();
    }
  }
  mean /= 4.0 * draws;
  for (Eigen::Index j = 0; j < 4; ++j)
  {
    EXPECT_NEAR(mean(j), 0.25, 0.01);
  }
  EXPECT_EQ(gen_channel_instance(3, 5, TrialKey{1, 3, 5, 2}).matrix(),
            gen_channel_instance(3, 5, TrialKey{1, 3, 5, 2}).matrix());
  EXPECT_THROW(gen_channel_instance(3, 1, TrialKey{}), Error);
  EXPECT_THROW(gen_sec_instance(1, 2, TrialKey{}), Error);
}

TEST(Config, Validation)
{
  BenchConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.trials_per_cell = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg                 = {};
  cfg.m_list          = {};
  EXPECT_THROW(cfg.validate(), Error);
  cfg        = {};
  cfg.m_list = {2};
  EXPECT_THROW(cfg.validate(), Error);
  cfg        = {};
  cfg.kind   = Kind::Capacity;
  cfg.n_list = {1};
  EXPECT_THROW(cfg.validate(), Error);
  cfg         = {};
  cfg.kind    = Kind::Capacity;
  cfg.epsilon = 1.5;
  EXPECT_THROW(cfg.validate(), Error);
  EXPECT_THROW(parse_kind("circle"), Error);
  EXPECT_EQ(parse_kind("capacity"), Kind::Capacity);
}

TEST(Experiment, ThreePointsAlwaysSucceed)
{
  BenchConfig cfg;
  cfg.m_list          = {3};
  cfg.n_list          = {2, 3, 10};
  cfg.trials_per_cell = 200;
  BenchReport const r = run_success_experiment(cfg);
  ASSERT_EQ(r.cells.size(), 3u);
  for (CellResult const &c : r.cells)
  {
    EXPECT_EQ(c.successes, c.trials);
    EXPECT_DOUBLE_EQ(c.success_pct, 100.0);
  }
}

TEST(Experiment, CountsAddUpAndReportIsReproducible)
{
  for (Kind kind : {Kind::Sec, Kind::Capacity})
  {
    BenchConfig cfg;
    cfg.kind            = kind;
    cfg.m_list          = {4, 8};
    cfg.n_list          = {2, 3};
    cfg.trials_per_cell = 40;
    cfg.base_seed       = 77;
    cfg.threads         = 3;
    BenchReport const a = run_success_experiment(cfg);
    cfg.threads         = 1;
    BenchReport const b = run_success_experiment(cfg);
    EXPECT_EQ(to_json(a, false).dump(), to_json(b, false).dump());
    ASSERT_EQ(a.cells.size(), 4u);
    for (CellResult const &c : a.cells)
    {
      EXPECT_EQ(c.successes + c.failures + c.errors, c.trials);
      EXPECT_LE(c.successes, c.trials);
      EXPECT_DOUBLE_EQ(c.success_pct, 100.0 * static_cast<double>(c.successes) / static_cast<double>(c.trials));
    }
    EXPECT_EQ(a.complexity.size(), 4u);
  }
}

TEST(Experiment, GradingIsSymmetric)
{
  Matrix p(3, 2);
  p << 0, 0, 1000, 0, 0, 1000;
  sec::SecInstance const inst(p);
  Vector const           a = Eigen::Vector2d(1.0, 2.0);
  for (double d : {1e-4, 9e-4, 1.1e-3, 1e-2})
  {
    Vector const b = a + Eigen::Vector2d(d, 0.0);
    EXPECT_EQ(centers_agree(inst, a, b), centers_agree(inst, b, a));
  }
  EXPECT_TRUE(centers_agree(inst, a, a + Eigen::Vector2d(9e-4, 0.0)));
  EXPECT_FALSE(centers_agree(inst, a, a + Eigen::Vector2d(1.1e-3, 0.0)));
  EXPECT_TRUE(capacities_agree(0.5, 0.5 + 9e-7));
  EXPECT_EQ(capacities_agree(0.5, 0.5 + 2e-6), capacities_agree(0.5 + 2e-6, 0.5));
  EXPECT_FALSE(capacities_agree(0.5, 0.5 + 2e-6));
}

TEST(Experiment, HsFailureTrialIsGradedAFailure)
{
  Matrix p(4, 2);
  p << -10, -9, 6, 5, 6, -7, -9, -10;
  sec::SecInstance const inst(p);
  sec::SecSolution const hs = sec::solve_hs(inst);
  sec::SecSolution const bf = oracles::brute_force_sec(inst);
  EXPECT_FALSE(centers_agree(inst, hs.center, bf.center));
}

TEST(Report, Formats)
{
  BenchConfig cfg;
  cfg.m_list          = {3, 4};
  cfg.n_list          = {2, 3};
  cfg.trials_per_cell = 10;
  BenchReport const r = run_success_experiment(cfg);

  Json const j = to_json(r);
  EXPECT_EQ(j.at("schema"), std::string(kReportSchema));
  EXPECT_EQ(j.at("cells").size(), 4u);
  EXPECT_TRUE(j.contains("timing"));
  EXPECT_FALSE(to_json(r, false).contains("timing"));
  EXPECT_EQ(j.at("complexity")[1].at("N1"), 4u);

  BenchConfig const back = config_from_json(j.at("config"));
  EXPECT_EQ(back.m_list, cfg.m_list);
  EXPECT_EQ(back.n_list, cfg.n_list);
  EXPECT_EQ(back.trials_per_cell, cfg.trials_per_cell);
  EXPECT_EQ(back.base_seed, cfg.base_seed);

  std::string const table = text_tables(r);
  EXPECT_NE(table.find("Success rate of HS"), std::string::npos);
  EXPECT_NE(table.find("100.0%"), std::string::npos);
  EXPECT_NE(table.find("0.250"), std::string::npos);

  std::istringstream csv(to_csv(r));
  std::string        line;
  int                lines = 0;
  while (std::getline(csv, line))
  {
    ++lines;
  }
  EXPECT_EQ(lines, 5);
  EXPECT_THROW(config_from_json(Json::array()), Error);
  EXPECT_THROW(config_from_json(Json{{"m", "three"}}), Error);
}
