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
#include "capgeo/core/error.hpp"
#include "capgeo/core/types.hpp"
#include "capgeo/core/version.hpp"
#include "capgeo/sec/geometry.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

namespace capgeo::io {

using Json = nlohmann::ordered_json;

using Instance = std::variant<sec::SecInstance, capacity::Channel>;

/// Row sums of a channel file may be off by this much; larger deviations
/// are rejected unless renormalization is requested.
inline constexpr double kRowSumTolerance = 1e-9;

struct ParseOptions
{
  bool normalize = false;
};

inline Json vector_to_json(Vector const &v)
{
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
  {
    a.push_back(v(i));
  }
  return a;
}

inline Json matrix_to_json(Matrix const &a)
{
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
  {
    rows.push_back(vector_to_json(a.row(i).transpose()));
  }
  return rows;
}

inline Json indices_to_json(IndexSet const &s)
{
  Json a = Json::array();
  for (std::size_t i : s)
  {
    a.push_back(i);
  }
  return a;
}

namespace detail {

[[noreturn]] inline void parse_fail(std::string const &msg)
{
  throw Error(ErrorCode::ParseError, "cli", msg);
}

inline Matrix matrix_from_json(Json const &j, char const *field)
{
  if (!j.is_array() || j.empty())
  {
    parse_fail(std::string("'") + field + "' must be a nonempty array of rows");
  }
  std::size_t const cols = j.front().is_array() ? j.front().size() : 0;
  if (cols == 0)
  {
    parse_fail(std::string("'") + field + "' rows must be nonempty arrays");
  }
  Matrix a(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i)
  {
    Json const &row = j[i];
    if (!row.is_array() || row.size() != cols)
    {
      parse_fail(std::string("'") + field + "' row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t k = 0; k < cols; ++k)
    {
      if (!row[k].is_number())
      {
        parse_fail(std::string("'") + field + "' entry (" + std::to_string(i) + ", " + std::to_string(k) +
                   ") is not a number");
      }
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
    }
  }
  return a;
}

}  // namespace detail

/// Channel matrix from file data: rows within kRowSumTolerance of 1 are
/// rescaled exactly; others are rescaled only with `normalize`.
inline capacity::Channel channel_from_matrix(Matrix a, ParseOptions const &options = {})
{
  for (Eigen::Index i = 0; i < a.rows(); ++i)
  {
    double const s = a.row(i).sum();
    if (!options.normalize && !(std::abs(s - 1.0) <= kRowSumTolerance))
    {
      throw Error(ErrorCode::InvalidArgument, "cli",
                  "row " + std::to_string(i) + " sums to " + std::to_string(s) + " (use --normalize)");
    }
    if (s > 0.0)
    {
      a.row(i) /= s;
    }
  }
  return capacity::Channel(std::move(a));
}

/// Instance from a parsed document, either a bare instance or a report
/// carrying one under "instance".
inline Instance instance_from_json(Json const &doc, ParseOptions const &options = {})
{
  if (!doc.is_object())
  {
    detail::parse_fail("instance document must be a JSON object");
  }
  if (doc.contains("instance"))
  {
    return instance_from_json(doc.at("instance"), options);
  }
  if (!doc.contains("kind") || !doc.at("kind").is_string())
  {
    detail::parse_fail("missing string field 'kind'");
  }
  std::string const kind = doc.at("kind").get<std::string>();
  if (kind == "sec")
  {
    if (!doc.contains("points"))
    {
      detail::parse_fail("sec instance needs 'points'");
    }
    return sec::SecInstance(detail::matrix_from_json(doc.at("points"), "points"));
  }
  if (kind == "channel")
  {
    if (!doc.contains("matrix"))
    {
      detail::parse_fail("channel instance needs 'matrix'");
    }
    return channel_from_matrix(detail::matrix_from_json(doc.at("matrix"), "matrix"), options);
  }
  detail::parse_fail("unknown instance kind '" + kind + "'");
}

inline Json parse_json_text(std::string const &text)
{
  try
  {
    return Json::parse(text);
  }
  catch (nlohmann::json::parse_error const &e)
  {
    throw Error(ErrorCode::ParseError, "cli", e.what());
  }
}

inline Instance parse_instance(std::string const &text, ParseOptions const &options = {})
{
  return instance_from_json(parse_json_text(text), options);
}

inline std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw Error(ErrorCode::ParseError, "cli", "cannot open '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance load_instance(std::string const &path, ParseOptions const &options = {})
{
  return parse_instance(read_file(path), options);
}

inline Json to_json(sec::SecInstance const &instance)
{
  return Json{{"kind", "sec"}, {"points", matrix_to_json(instance.points())}};
}

inline Json to_json(capacity::Channel const &channel)
{
  return Json{{"kind", "channel"}, {"matrix", matrix_to_json(channel.matrix())}};
}

inline Json to_json(sec::SecSolution const &s)
{
  Json steps = Json::array();
  for (Vector const &w : s.steps)
  {
    steps.push_back(vector_to_json(w));
  }
  Json j{{"center", vector_to_json(s.center)},
         {"radius", s.radius},
         {"weights", vector_to_json(s.weights.weights())},
         {"support", indices_to_json(s.support)},
         {"kt_certified", s.kt_certified},
         {"epsilon", s.epsilon},
         {"steps", steps}};
  if (!s.case_label.empty())
  {
    j["case"] = s.case_label;
  }
  return j;
}

enum class InfoUnit
{
  Nats,
  Bits,
};

inline Json to_json(capacity::CapacitySolution const &s, InfoUnit unit = InfoUnit::Bits)
{
  Json steps = Json::array();
  for (Vector const &w : s.steps)
  {
    steps.push_back(vector_to_json(w));
  }
  Json j{{"output_dist", vector_to_json(s.output_dist.probs())},
         {"capacity", unit == InfoUnit::Bits ? s.capacity_bits : s.capacity_nats},
         {"unit", unit == InfoUnit::Bits ? "bits" : "nats"},
         {"capacity_nats", s.capacity_nats},
         {"weights", vector_to_json(s.weights.weights())},
         {"support", indices_to_json(s.support)},
         {"kt_certified", s.kt_certified},
         {"epsilon", s.epsilon},
         {"steps", steps}};
  if (!s.case_label.empty())
  {
    j["case"] = s.case_label;
  }
  if (s.iterations != 0)
  {
    j["iterations"] = s.iterations;
  }
  return j;
}

/// Solve report shared by both solve commands. `oracle` is null when no
/// oracle ran.
inline Json solve_report(Json instance, Json solution, IndexSet const &history, Json oracle = nullptr,
                         std::optional<bool> agreement = std::nullopt)
{
  Json j{{"schema", kReportSchema}, {"version", kVersion}, {"instance", std::move(instance)},
         {"solution", std::move(solution)}};
  if (!oracle.is_null())
  {
    j["oracle"] = std::move(oracle);
  }
  if (agreement)
  {
    j["agreement"] = *agreement;
  }
  j["history"] = indices_to_json(history);
  return j;
}

}  // namespace capgeo::io
