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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace capgeo {

enum class ErrorCode
{
  InvalidArgument,
  LengthMismatch,
  SingularInconsistent,
  NoConvergence,
  NonFiniteIterate,
  DegeneratePlacement,
  DomainEscape,
  NegativeWeight,
  TooLarge,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
  switch (code)
  {
  case ErrorCode::InvalidArgument:
    return "InvalidArgument";
  case ErrorCode::LengthMismatch:
    return "LengthMismatch";
  case ErrorCode::SingularInconsistent:
    return "SingularInconsistent";
  case ErrorCode::NoConvergence:
    return "NoConvergence";
  case ErrorCode::NonFiniteIterate:
    return "NonFiniteIterate";
  case ErrorCode::DegeneratePlacement:
    return "DegeneratePlacement";
  case ErrorCode::DomainEscape:
    return "DomainEscape";
  case ErrorCode::NegativeWeight:
    return "NegativeWeight";
  case ErrorCode::TooLarge:
    return "TooLarge";
  case ErrorCode::ParseError:
    return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. `module()` names the component that
/// raised it ("numeric-core", "sec-solver", ...); `history()` carries the
/// indices removed by a heuristic cascade before the failure, if any.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, std::string module, const std::string &message)
    : std::runtime_error(std::string(to_string(code)) + " [" + module + "]: " + message)
    , code_(code)
    , module_(std::move(module))
  {}

  ErrorCode code() const noexcept
  {
    return code_;
  }

  std::string const &module() const noexcept
  {
    return module_;
  }

  std::vector<std::size_t> const &history() const noexcept
  {
    return history_;
  }

  Error &with_history(std::vector<std::size_t> history)
  {
    history_ = std::move(history);
    return *this;
  }

private:
  ErrorCode                code_;
  std::string              module_;
  std::vector<std::size_t> history_;
};

}  // namespace capgeo
