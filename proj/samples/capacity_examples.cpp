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

// Channel capacity of two small channels by HC, the small-m case tree and
// Blahut-Arimoto.

#include "capgeo/capacity/hc.hpp"
#include "capgeo/capacity/small_m.hpp"
#include "capgeo/oracles/blahut_arimoto.hpp"

#include <iomanip>
#include <iostream>
#include <string>

using namespace capgeo;

namespace {

void show(std::string const &name, Matrix const &phi)
{
  capacity::Channel const          ch(phi);
  capacity::CapacitySolution const hc = capacity::solve_hc(ch);
  capacity::CapacitySolution const ba = oracles::blahut_arimoto(ch);
  Eigen::IOFormat const            fmt(6, Eigen::DontAlignCols, ", ", ", ", "", "", "(", ")");
  std::cout << std::setprecision(6) << name << '\n';
  for (std::size_t k = 0; k < hc.steps.size(); ++k)
  {
    std::cout << "  lambda~" << k << "  " << hc.steps[k].transpose().format(fmt) << '\n';
  }
  std::cout << "  HC  C = " << hc.capacity_bits << " bits  Q* = " << hc.output_dist.probs().transpose().format(fmt)
            << (hc.kt_certified ? "  [KT ok]" : "  [KT failed]") << '\n';
  try
  {
    capacity::CapacitySolution const tree = capacity::solve_small_m_capacity(ch);
    std::cout << "  case " << tree.case_label << "  C = " << tree.capacity_bits << " bits\n";
  }
  catch (Error const &e)
  {
    std::cout << "  case tree: " << e.what() << '\n';
  }
  std::cout << "  BA  C = " << ba.capacity_bits << " bits  (" << ba.iterations << " iterations)\n";
}

}  // namespace

int main()
{
  Matrix three(3, 2);
  three << 0.1, 0.9, 0.7, 0.3, 0.8, 0.2;
  show("binary-output channel with three inputs", three);

  Matrix four(4, 3);
  four << 0.4, 0.4, 0.2, 1.0 / 3, 1.0 / 3, 1.0 / 3, 0.8, 0.1, 0.1, 0.1, 0.8, 0.1;
  show("ternary-output channel with four inputs", four);
}
