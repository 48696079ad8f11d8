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

// Solves the worked point sets with HS and checks each against brute force.

#include "capgeo/oracles/brute_force_sec.hpp"
#include "capgeo/sec/hs.hpp"

#include <iostream>
#include <string>
#include <utility>
#include <vector>

using namespace capgeo;

namespace {

Matrix points(std::vector<std::vector<double>> const &rows)
{
  Matrix p(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    for (std::size_t j = 0; j < rows[i].size(); ++j)
    {
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return p;
}

void show(std::string const &name, sec::SecInstance const &inst)
{
  sec::SecSolution const hs = sec::solve_hs(inst);
  sec::SecSolution const bf = oracles::brute_force_sec(inst);
  Eigen::IOFormat const  fmt(6, Eigen::DontAlignCols, ", ", ", ", "", "", "(", ")");
  std::cout << name << '\n';
  std::cout << "  HS      center " << hs.center.transpose().format(fmt) << "  radius " << hs.radius
            << (hs.kt_certified ? "  [KT ok]" : "  [KT failed]") << '\n';
  std::cout << "  weights " << hs.weights.weights().transpose().format(fmt) << '\n';
  std::cout << "  removed";
  for (std::size_t i : hs.history)
  {
    std::cout << ' ' << i;
  }
  std::cout << '\n';
  std::cout << "  brute   center " << bf.center.transpose().format(fmt) << "  radius " << bf.radius << '\n';
}

}  // namespace

int main()
{
  std::vector<std::pair<std::string, Matrix>> const cases = {
      {"four points in R^3", points({{-10, 1, -3}, {-9, -2, 8}, {-8, 10, -5}, {4, -8, 8}})},
      {"three points on a line", points({{1}, {0}, {2}})},
      {"four points in the plane", points({{1, 2}, {0, 0}, {2, 0}, {1, 3}})},
      {"placement where HS fails", points({{-10, -9}, {6, 5}, {6, -7}, {-9, -10}})},
  };
  for (auto const &[name, p] : cases)
  {
    show(name, sec::SecInstance(p));
  }
}
