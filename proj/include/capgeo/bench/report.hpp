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

#include "capgeo/bench/experiment.hpp"
#include "capgeo/io/json_io.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <utility>

namespace capgeo::bench {

using io::Json;

inline Json to_json(BenchConfig const &cfg)
{
  Json j{{"kind", to_string(cfg.kind)},
         {"m", cfg.m_list},
         {"n", cfg.n_list},
         {"trials_per_cell", cfg.trials_per_cell},
         {"base_seed", cfg.base_seed},
         {"epsilon", cfg.effective_epsilon()},
         {"policy",
          {{"negativity_threshold", cfg.policy.negativity_threshold},
           {"kt_rel_tol", cfg.policy.kt_rel_tol},
           {"newton_tol", cfg.policy.newton_tol},
           {"newton_max_iter", cfg.policy.newton_max_iter}}}};
  return j;
}

/// Config from a JSON document; absent fields keep their defaults. The
/// thread count is not part of the document.
inline BenchConfig config_from_json(Json const &j)
{
  if (!j.is_object())
  {
    throw Error(ErrorCode::ParseError, "bench-harness", "config must be a JSON object");
  }
  BenchConfig cfg;
  try
  {
    if (j.contains("kind"))
    {
      cfg.kind = parse_kind(j.at("kind").get<std::string>());
    }
    if (j.contains("m"))
    {
      cfg.m_list = j.at("m").get<std::vector<std::size_t>>();
    }
    if (j.contains("n"))
    {
      cfg.n_list = j.at("n").get<std::vector<std::size_t>>();
    }
    if (j.contains("trials_per_cell"))
    {
      cfg.trials_per_cell = j.at("trials_per_cell").get<std::size_t>();
    }
    if (j.contains("base_seed"))
    {
      cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
    }
    if (j.contains("epsilon") && !j.at("epsilon").is_null())
    {
      cfg.epsilon = j.at("epsilon").get<double>();
    }
    if (j.contains("policy"))
    {
      Json const &p = j.at("policy");
      cfg.policy.negativity_threshold = p.value("negativity_threshold", cfg.policy.negativity_threshold);
      cfg.policy.kt_rel_tol           = p.value("kt_rel_tol", cfg.policy.kt_rel_tol);
      cfg.policy.newton_tol           = p.value("newton_tol", cfg.policy.newton_tol);
      cfg.policy.newton_max_iter      = p.value("newton_max_iter", cfg.policy.newton_max_iter);
    }
  }
  catch (nlohmann::json::exception const &e)
  {
    throw Error(ErrorCode::ParseError, "bench-harness", std::string("bad config: ") + e.what());
  }
  return cfg;
}

/// Report document. Timing lives under a separate "timing" key; with
/// `with_timing = false` two runs of one config compare equal.
inline Json to_json(BenchReport const &r, bool with_timing = true)
{
  Json cells = Json::array();
  Json times = Json::array();
  for (CellResult const &c : r.cells)
  {
    cells.push_back(Json{{"m", c.m},
                         {"n", c.n},
                         {"trials", c.trials},
                         {"successes", c.successes},
                         {"failures", c.failures},
                         {"errors", c.errors},
                         {"kt_passes", c.kt_passes},
                         {"success_pct", c.success_pct}});
    times.push_back(Json{{"m", c.m}, {"n", c.n}, {"mean_solve_ms", c.mean_solve_ms}});
  }
  Json complexity = Json::array();
  for (ComplexityRow const &c : r.complexity)
  {
    complexity.push_back(Json{{"m", c.m}, {"n", c.n}, {"N1", c.n1}, {"N2", c.n2}, {"ratio", c.ratio}});
  }
  Json j{{"schema", kReportSchema}, {"version", r.version}, {"config", to_json(r.config)},
         {"cells", cells},          {"complexity", complexity}};
  if (with_timing)
  {
    j["timing"] = times;
  }
  return j;
}

namespace detail {

/// Grid table with m down the side and n across, one formatted value per cell.
template <class Cell, class Format>
std::string grid_table(std::string const &title, std::vector<std::size_t> const &ms,
                       std::vector<std::size_t> const &ns, std::vector<Cell> const &cells, Format &&format)
{
  std::map<std::pair<std::size_t, std::size_t>, Cell const *> at;
  for (Cell const &c : cells)
  {
    at[{c.m, c.n}] = &c;
  }
  std::ostringstream os;
  os << title << '\n';
  os << std::setw(7) << "m \\ n";
  for (std::size_t n : ns)
  {
    os << std::setw(10) << n;
  }
  os << '\n';
  for (std::size_t m : ms)
  {
    os << std::setw(7) << m;
    for (std::size_t n : ns)
    {
      auto const it = at.find({m, n});
      os << std::setw(10) << (it == at.end() ? std::string("-") : format(*it->second));
    }
    os << '\n';
  }
  return os.str();
}

inline std::string fixed(double v, int digits)
{
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace detail

inline std::string success_table(BenchReport const &r)
{
  std::string const title = std::string("Success rate of ") + (r.config.kind == Kind::Sec ? "HS" : "HC") + " (" +
                            std::to_string(r.config.trials_per_cell) + " trials per cell, seed " +
                            std::to_string(r.config.base_seed) + ")";
  return detail::grid_table(title, r.config.m_list, r.config.n_list, r.cells,
                            [](CellResult const &c) { return detail::fixed(c.success_pct, 1) + "%"; });
}

inline std::string complexity_table(BenchReport const &r)
{
  return detail::grid_table("Complexity ratio N2/N1", r.config.m_list, r.config.n_list, r.complexity,
                            [](ComplexityRow const &c) { return detail::fixed(c.ratio, 3); });
}

inline std::string text_tables(BenchReport const &r)
{
  return success_table(r) + '\n' + complexity_table(r);
}

/// One line per cell; the last column is timing.
inline std::string to_csv(BenchReport const &r)
{
  std::ostringstream os;
  os << "kind,m,n,trials,successes,failures,errors,kt_passes,success_pct,N1,N2,ratio,mean_solve_ms\n";
  for (std::size_t i = 0; i < r.cells.size(); ++i)
  {
    CellResult const    &c = r.cells[i];
    ComplexityRow const &x = r.complexity[i];
    os << to_string(r.config.kind) << ',' << c.m << ',' << c.n << ',' << c.trials << ',' << c.successes << ','
       << c.failures << ',' << c.errors << ',' << c.kt_passes << ',' << detail::fixed(c.success_pct, 2) << ','
       << x.n1 << ',' << x.n2 << ',' << detail::fixed(x.ratio, 6) << ',' << detail::fixed(c.mean_solve_ms, 4)
       << '\n';
  }
  return os.str();
}

}  // namespace capgeo::bench
