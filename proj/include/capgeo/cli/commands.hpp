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
#include "capgeo/bench/report.hpp"
#include "capgeo/capacity/hc.hpp"
#include "capgeo/io/json_io.hpp"
#include "capgeo/oracles/blahut_arimoto.hpp"
#include "capgeo/oracles/brute_force_sec.hpp"
#include "capgeo/sec/hs.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace capgeo::cli {

/// Process exit codes.
inline constexpr int kExitCertified   = 0;
inline constexpr int kExitError       = 1;
inline constexpr int kExitUncertified = 2;

struct SolveFlags
{
  std::optional<double> epsilon;
  bool                  oracle    = false;
  bool                  json      = false;
  bool                  normalize = false;
  io::InfoUnit          unit      = io::InfoUnit::Bits;
};

struct BenchFlags
{
  std::optional<std::string>              config_path;
  std::optional<std::string>              kind;
  std::optional<std::vector<std::size_t>> m_list;
  std::optional<std::vector<std::size_t>> n_list;
  std::optional<std::size_t>              trials;
  std::optional<std::uint64_t>            seed;
  std::optional<double>                   epsilon;
  std::size_t                             threads = 0;
  /// Full scale: 10000 trials per cell unless --trials is given.
  bool        full = false;
  bool        json = false;
  /// Output files are <out>.json, <out>.txt and <out>.csv; empty skips them.
  std::string out;
};

inline constexpr std::size_t kDefaultBenchTrials = 100;
inline constexpr std::size_t kFullBenchTrials    = 10000;

inline std::uint64_t parse_seed(std::string const &s)
{
  std::uint64_t v   = 0;
  auto const    res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "cli", "invalid seed '" + s + "'");
  }
  return v;
}

/// Comma-separated list of counts, e.g. "3,4,5".
inline std::vector<std::size_t> parse_count_list(std::string const &s)
{
  std::vector<std::size_t> out;
  std::stringstream        ss(s);
  std::string              item;
  while (std::getline(ss, item, ','))
  {
    std::size_t v   = 0;
    auto const  res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size())
    {
      throw Error(ErrorCode::InvalidArgument, "cli", "invalid count list '" + s + "'");
    }
    out.push_back(v);
  }
  if (out.empty())
  {
    throw Error(ErrorCode::InvalidArgument, "cli", "empty count list");
  }
  return out;
}

/// Layering: defaults, then the config file, then CAPGEO_SEED, then flags.
inline bench::BenchConfig resolve_bench_config(BenchFlags const &flags, char const *env_seed)
{
  bench::BenchConfig cfg;
  cfg.trials_per_cell = flags.full ? kFullBenchTrials : kDefaultBenchTrials;
  if (flags.config_path)
  {
    io::Json const doc = io::parse_json_text(io::read_file(*flags.config_path));
    cfg                = bench::config_from_json(doc);
    if (!doc.contains("trials_per_cell"))
    {
      cfg.trials_per_cell = flags.full ? kFullBenchTrials : kDefaultBenchTrials;
    }
  }
  if (env_seed != nullptr && *env_seed != '\0')
  {
    cfg.base_seed = parse_seed(env_seed);
  }
  if (flags.kind)
  {
    cfg.kind = bench::parse_kind(*flags.kind);
  }
  if (flags.m_list)
  {
    cfg.m_list = *flags.m_list;
  }
  if (flags.n_list)
  {
    cfg.n_list = *flags.n_list;
  }
  if (flags.trials)
  {
    cfg.trials_per_cell = *flags.trials;
  }
  if (flags.seed)
  {
    cfg.base_seed = *flags.seed;
  }
  if (flags.epsilon)
  {
    cfg.epsilon = flags.epsilon;
  }
  cfg.threads = flags.threads;
  cfg.validate();
  return cfg;
}

namespace detail {

inline std::string fmt_vector(Vector const &v)
{
  std::ostringstream os;
  os << std::setprecision(10) << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i)
  {
    os << (i == 0 ? "" : ", ") << v(i);
  }
  os << ')';
  return os.str();
}

inline std::string fmt_indices(IndexSet const &s)
{
  std::ostringstream os;
  os << '{';
  for (std::size_t k = 0; k < s.size(); ++k)
  {
    os << (k == 0 ? "" : ", ") << s[k];
  }
  os << '}';
  return os.str();
}

inline int report_error(std::ostream &err, Error const &e)
{
  err << "error: " << e.what() << '\n';
  return kExitError;
}

inline int verdict_code(bool certified, std::optional<bool> agreement)
{
  return certified && agreement.value_or(true) ? kExitCertified : kExitUncertified;
}

}  // namespace detail

inline int cmd_sec_solve(std::string const &input_path, SolveFlags const &flags, std::ostream &out,
                         std::ostream &err)
{
  try
  {
    io::Instance const inst = io::load_instance(input_path, {flags.normalize});
    auto const *const  p    = std::get_if<sec::SecInstance>(&inst);
    if (p == nullptr)
    {
      throw Error(ErrorCode::InvalidArgument, "cli", "sec-solve needs a \"sec\" instance");
    }
    sec::HsOptions options;
    if (flags.epsilon)
    {
      options.epsilon0 = *flags.epsilon;
    }
    sec::SecSolution const          hs = sec::solve_hs(*p, {}, options);
    std::optional<sec::SecSolution> bf;
    std::optional<bool>             agree;
    if (flags.oracle)
    {
      bf    = oracles::brute_force_sec(*p);
      agree = bench::centers_agree(*p, hs.center, bf->center);
    }
    if (flags.json)
    {
      out << io::solve_report(io::to_json(*p), io::to_json(hs), hs.history,
                              bf ? io::to_json(*bf) : io::Json(nullptr), agree)
                 .dump(2)
          << '\n';
    }
    else
    {
      out << std::setprecision(10);
      out << "center   " << detail::fmt_vector(hs.center) << '\n';
      out << "radius   " << hs.radius << '\n';
      out << "weights  " << detail::fmt_vector(hs.weights.weights()) << '\n';
      out << "support  " << detail::fmt_indices(hs.support) << '\n';
      out << "removed  " << detail::fmt_indices(hs.history) << '\n';
      out << "KT       " << (hs.kt_certified ? "certified" : "NOT certified") << '\n';
      if (bf)
      {
        out << "oracle   center " << detail::fmt_vector(bf->center) << " radius " << bf->radius << '\n';
        out << (*agree ? "MATCH" : "MISMATCH") << '\n';
      }
    }
    return detail::verdict_code(hs.kt_certified, agree);
  }
  catch (Error const &e)
  {
    return detail::report_error(err, e);
  }
}

inline int cmd_cap_solve(std::string const &input_path, SolveFlags const &flags, std::ostream &out,
                         std::ostream &err)
{
  try
  {
    io::Instance const inst = io::load_instance(input_path, {flags.normalize});
    auto const *const  ch   = std::get_if<capacity::Channel>(&inst);
    if (ch == nullptr)
    {
      throw Error(ErrorCode::InvalidArgument, "cli", "cap-solve needs a \"channel\" instance");
    }
    capacity::CapacitySolution const hc =
        capacity::solve_hc(*ch, flags.epsilon.value_or(capacity::HcOptions{}.epsilon));
    std::optional<capacity::CapacitySolution> ba;
    std::optional<bool>                       agree;
    if (flags.oracle)
    {
      ba    = oracles::blahut_arimoto(*ch);
      agree = bench::capacities_agree(hc.capacity_nats, ba->capacity_nats);
    }
    bool const  bits = flags.unit == io::InfoUnit::Bits;
    char const *unit = bits ? " bits" : " nats";
    if (flags.json)
    {
      out << io::solve_report(io::to_json(*ch), io::to_json(hc, flags.unit), hc.history,
                              ba ? io::to_json(*ba, flags.unit) : io::Json(nullptr), agree)
                 .dump(2)
          << '\n';
    }
    else
    {
      out << std::setprecision(10);
      out << "capacity " << (bits ? hc.capacity_bits : hc.capacity_nats) << unit << '\n';
      out << "output   " << detail::fmt_vector(hc.output_dist.probs()) << '\n';
      out << "weights  " << detail::fmt_vector(hc.weights.weights()) << '\n';
      out << "support  " << detail::fmt_indices(hc.support) << '\n';
      out << "removed  " << detail::fmt_indices(hc.history) << '\n';
      out << "epsilon  " << hc.epsilon << '\n';
      out << "KT       " << (hc.kt_certified ? "certified" : "NOT certified") << '\n';
      if (ba)
      {
        out << "oracle   capacity " << (bits ? ba->capacity_bits : ba->capacity_nats) << unit << " output "
            << detail::fmt_vector(ba->output_dist.probs()) << '\n';
        out << (*agree ? "MATCH" : "MISMATCH") << '\n';
      }
    }
    return detail::verdict_code(hc.kt_certified, agree);
  }
  catch (Error const &e)
  {
    return detail::report_error(err, e);
  }
}

inline void write_text_file(std::string const &path, std::string const &body)
{
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << body))
  {
    throw Error(ErrorCode::InvalidArgument, "cli", "cannot write '" + path + "'");
  }
}

inline int cmd_bench(BenchFlags const &flags, std::ostream &out, std::ostream &err, char const *env_seed)
{
  try
  {
    bench::BenchConfig const cfg    = resolve_bench_config(flags, env_seed);
    bench::BenchReport const report = bench::run_success_experiment(cfg);
    std::string const        json   = bench::to_json(report).dump(2) + "\n";
    std::string const        tables = bench::text_tables(report);
    if (!flags.out.empty())
    {
      write_text_file(flags.out + ".json", json);
      write_text_file(flags.out + ".txt", tables);
      write_text_file(flags.out + ".csv", bench::to_csv(report));
    }
    out << (flags.json ? json : tables);
    return kExitCertified;
  }
  catch (Error const &e)
  {
    return detail::report_error(err, e);
  }
}

}  // namespace capgeo::cli
