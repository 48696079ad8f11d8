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

#include "capgeo/bench/generators.hpp"
#include "capgeo/capacity/hc.hpp"
#include "capgeo/core/types.hpp"
#include "capgeo/core/version.hpp"
#include "capgeo/oracles/blahut_arimoto.hpp"
#include "capgeo/oracles/brute_force_sec.hpp"
#include "capgeo/oracles/complexity.hpp"
#include "capgeo/sec/hs.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace capgeo::bench {

enum class Kind
{
  Sec,
  Capacity,
};

inline std::string to_string(Kind k)
{
  return k == Kind::Sec ? "sec" : "capacity";
}

inline Kind parse_kind(std::string const &s)
{
  if (s == "sec")
  {
    return Kind::Sec;
  }
  if (s == "capacity" || s == "cap" || s == "channel")
  {
    return Kind::Capacity;
  }
  throw Error(ErrorCode::InvalidArgument, "bench-harness", "unknown experiment kind '" + s + "'");
}

inline std::vector<std::size_t> default_m_grid()
{
  return {3, 4, 5, 8, 10};
}

inline std::vector<std::size_t> default_n_grid()
{
  return {2, 3, 10, 20};
}

struct BenchConfig
{
  Kind                     kind            = Kind::Sec;
  std::vector<std::size_t> m_list          = default_m_grid();
  std::vector<std::size_t> n_list          = default_n_grid();
  std::size_t              trials_per_cell = 100;
  std::uint64_t            base_seed       = 1;
  /// Relative lifting parameter for SEC, absolute for capacity; empty means
  /// the solver default.
  std::optional<double> epsilon;
  TolerancePolicy       policy;
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 0;

  double effective_epsilon() const
  {
    if (epsilon)
    {
      return *epsilon;
    }
    return kind == Kind::Sec ? sec::HsOptions{}.epsilon0 : capacity::HcOptions{}.epsilon;
  }

  void validate() const
  {
    if (trials_per_cell == 0 || m_list.empty() || n_list.empty())
    {
      throw Error(ErrorCode::InvalidArgument, "bench-harness", "need trials >= 1 and nonempty m and n lists");
    }
    std::size_t const min_n = kind == Kind::Sec ? 1 : 2;
    for (std::size_t m : m_list)
    {
      if (m < 3)
      {
        throw Error(ErrorCode::InvalidArgument, "bench-harness", "every m must be at least 3");
      }
      if (kind == Kind::Sec && m > oracles::kBruteForceMaxPoints)
      {
        throw Error(ErrorCode::InvalidArgument, "bench-harness", "SEC grading is limited to m <= 20");
      }
    }
    for (std::size_t n : n_list)
    {
      if (n < min_n)
      {
        throw Error(ErrorCode::InvalidArgument, "bench-harness",
                    "every n must be at least " + std::to_string(min_n));
      }
    }
    double const eps = effective_epsilon();
    if (!(eps > 0.0) || (kind == Kind::Capacity && !(eps < 1.0)))
    {
      throw Error(ErrorCode::InvalidArgument, "bench-harness", "invalid lifting parameter");
    }
    policy.validate();
  }
};

enum class Verdict
{
  Success,
  Failure,
  Error,
};

struct TrialOutcome
{
  Verdict     verdict      = Verdict::Error;
  bool        kt_certified = false;
  double      solve_ms     = 0.0;
  std::string error;
};

struct CellResult
{
  std::size_t m             = 0;
  std::size_t n             = 0;
  std::size_t trials        = 0;
  std::size_t successes     = 0;
  std::size_t failures      = 0;
  std::size_t errors        = 0;
  std::size_t kt_passes     = 0;
  double      success_pct   = 0.0;
  double      mean_solve_ms = 0.0;
};

struct ComplexityRow
{
  std::size_t   m     = 0;
  std::size_t   n     = 0;
  std::uint64_t n1    = 0;
  std::uint64_t n2    = 0;
  double        ratio = 0.0;
};

struct BenchReport
{
  BenchConfig                config;
  std::string                version;
  std::vector<CellResult>    cells;
  std::vector<ComplexityRow> complexity;
};

/// Tolerance for center agreement, scaled by the size of the coordinates.
inline double center_tolerance(Matrix const &points)
{
  return 1e-6 * std::max(1.0, points.cwiseAbs().maxCoeff());
}

inline bool centers_agree(sec::SecInstance const &instance, Vector const &a, Vector const &b)
{
  return (a - b).norm() <= center_tolerance(instance.points());
}

inline constexpr double kCapacityAgreementNats = 1e-6;

inline bool capacities_agree(double a_nats, double b_nats)
{
  return std::abs(a_nats - b_nats) <= kCapacityAgreementNats;
}

namespace detail {

template <class F>
double time_ms(F &&f)
{
  auto const t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

inline TrialOutcome run_sec_trial(BenchConfig const &cfg, TrialKey const &key)
{
  TrialOutcome           out;
  sec::SecInstance const inst = gen_sec_instance(key.m, key.n, key);
  sec::SecSolution       hs;
  try
  {
    out.solve_ms = time_ms([&] { hs = sec::solve_hs(inst, cfg.policy, sec::HsOptions{cfg.effective_epsilon()}); });
  }
  catch (Error const &e)
  {
    out.error = e.what();
    return out;
  }
  out.kt_certified = hs.kt_certified;
  try
  {
    sec::SecSolution const bf = oracles::brute_force_sec(inst, cfg.policy);
    out.verdict               = centers_agree(inst, hs.center, bf.center) ? Verdict::Success : Verdict::Failure;
  }
  catch (Error const &e)
  {
    out.error = e.what();
  }
  return out;
}

inline TrialOutcome run_capacity_trial(BenchConfig const &cfg, TrialKey const &key)
{
  TrialOutcome               out;
  capacity::Channel const    ch = gen_channel_instance(key.m, key.n, key);
  capacity::CapacitySolution hc;
  try
  {
    out.solve_ms = time_ms([&] { hc = capacity::solve_hc(ch, cfg.effective_epsilon(), cfg.policy); });
  }
  catch (Error const &e)
  {
    out.error = e.what();
    return out;
  }
  out.kt_certified = hc.kt_certified;
  try
  {
    capacity::CapacitySolution const ba = oracles::blahut_arimoto(ch);
    out.verdict = capacities_agree(hc.capacity_nats, ba.capacity_nats) ? Verdict::Success : Verdict::Failure;
  }
  catch (Error const &e)
  {
    out.error = e.what();
  }
  return out;
}

}  // namespace detail

inline TrialOutcome run_trial(BenchConfig const &cfg, TrialKey const &key)
{
  return cfg.kind == Kind::Sec ? detail::run_sec_trial(cfg, key) : detail::run_capacity_trial(cfg, key);
}

/// Runs every (m, n) cell. Trials are spread over worker threads and reduced
/// in trial order, so the report (timings aside) depends only on the config.
inline BenchReport run_success_experiment(BenchConfig const &cfg)
{
  cfg.validate();
  BenchReport report;
  report.config  = cfg;
  report.version = std::string(kVersion);

  struct Job
  {
    std::size_t m, n, trial;
  };
  std::vector<Job> jobs;
  for (std::size_t m : cfg.m_list)
  {
    for (std::size_t n : cfg.n_list)
    {
      for (std::size_t t = 0; t < cfg.trials_per_cell; ++t)
      {
        jobs.push_back({m, n, t});
      }
    }
  }
  std::vector<TrialOutcome> outcomes(jobs.size());
  std::atomic<std::size_t>  next{0};
  auto                      worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
    {
      Job const &j = jobs[i];
      outcomes[i]  = run_trial(cfg, TrialKey{cfg.base_seed, j.m, j.n, j.trial});
    }
  };
  std::size_t threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads             = std::min(threads, jobs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < threads; ++k)
    {
      pool.emplace_back(worker);
    }
    worker();
  }

  std::size_t i = 0;
  for (std::size_t m : cfg.m_list)
  {
    for (std::size_t n : cfg.n_list)
    {
      CellResult c{m, n, cfg.trials_per_cell};
      double     total_ms = 0.0;
      for (std::size_t t = 0; t < cfg.trials_per_cell; ++t, ++i)
      {
        TrialOutcome const &o = outcomes[i];
        c.successes += o.verdict == Verdict::Success ? 1 : 0;
        c.failures += o.verdict == Verdict::Failure ? 1 : 0;
        c.errors += o.verdict == Verdict::Error ? 1 : 0;
        c.kt_passes += o.kt_certified ? 1 : 0;
        total_ms += o.solve_ms;
      }
      c.success_pct   = 100.0 * static_cast<double>(c.successes) / static_cast<double>(c.trials);
      c.mean_solve_ms = total_ms / static_cast<double>(c.trials);
      report.cells.push_back(c);

      oracles::ComplexityCounts const cc = oracles::complexity_counts(m, n);
      report.complexity.push_back({m, n, cc.n1, cc.n2, cc.ratio()});
    }
  }
  return report;
}

}  // namespace capgeo::bench
