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

#include "capgeo/cli/commands.hpp"
#include "capgeo/core/version.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <string>

namespace {

using namespace capgeo;

void add_solve_flags(CLI::App &cmd, cli::SolveFlags &flags, std::string &input)
{
  cmd.add_option("input", input, "Instance file (JSON)")->required();
  cmd.add_option("--epsilon", flags.epsilon, "Lifting parameter");
  cmd.add_flag("--oracle", flags.oracle, "Also run the exact oracle and compare");
  cmd.add_flag("--json", flags.json, "Print the report as JSON");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Smallest enclosing circle and channel capacity by projection heuristics"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  cli::SolveFlags sec_flags;
  std::string     sec_input;
  CLI::App       *sec_cmd = app.add_subcommand("sec-solve", "Smallest enclosing circle of a point set (HS)");
  add_solve_flags(*sec_cmd, sec_flags, sec_input);

  cli::SolveFlags cap_flags;
  std::string     cap_input;
  bool            nats    = false;
  CLI::App       *cap_cmd = app.add_subcommand("cap-solve", "Capacity of a discrete memoryless channel (HC)");
  add_solve_flags(*cap_cmd, cap_flags, cap_input);
  auto *bits_opt = cap_cmd->add_flag("--bits", "Report capacity in bits (default)");
  cap_cmd->add_flag("--nats", nats, "Report capacity in nats")->excludes(bits_opt);
  cap_cmd->add_flag("--normalize", cap_flags.normalize, "Rescale rows that do not sum to 1");

  cli::BenchFlags bench_flags;
  std::string     m_list;
  std::string     n_list;
  CLI::App       *bench_cmd = app.add_subcommand("bench", "Monte Carlo success-rate experiment");
  bench_cmd->add_option("--config", bench_flags.config_path, "Bench config file (JSON)");
  bench_cmd->add_option("--kind", bench_flags.kind, "sec or capacity");
  bench_cmd->add_option("--m", m_list, "Comma-separated point/row counts");
  bench_cmd->add_option("--n", n_list, "Comma-separated dimensions/output sizes");
  bench_cmd->add_option("--trials", bench_flags.trials, "Trials per cell");
  bench_cmd->add_option("--seed", bench_flags.seed, "Base seed (overrides CAPGEO_SEED)");
  bench_cmd->add_option("--epsilon", bench_flags.epsilon, "Lifting parameter");
  bench_cmd->add_option("--threads", bench_flags.threads, "Worker threads (0 = all cores)");
  bench_cmd->add_option("--out", bench_flags.out, "Write <out>.json, <out>.txt and <out>.csv");
  bench_cmd->add_flag("--full", bench_flags.full, "10000 trials per cell");
  bench_cmd->add_flag("--json", bench_flags.json, "Print the JSON report instead of tables");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? 0 : cli::kExitError;
  }

  if (sec_cmd->parsed())
  {
    return cli::cmd_sec_solve(sec_input, sec_flags, std::cout, std::cerr);
  }
  if (cap_cmd->parsed())
  {
    cap_flags.unit = nats ? io::InfoUnit::Nats : io::InfoUnit::Bits;
    return cli::cmd_cap_solve(cap_input, cap_flags, std::cout, std::cerr);
  }
  try
  {
    if (!m_list.empty())
    {
      bench_flags.m_list = cli::parse_count_list(m_list);
    }
    if (!n_list.empty())
    {
      bench_flags.n_list = cli::parse_count_list(n_list);
    }
  }
  catch (Error const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitError;
  }
  return cli::cmd_bench(bench_flags, std::cout, std::cerr, std::getenv("CAPGEO_SEED"));
}
