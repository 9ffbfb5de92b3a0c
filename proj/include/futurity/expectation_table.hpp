#pragma once

#include <vector>

#include "futurity/cyclic.hpp"
#include "futurity/equilibrium.hpp"
#include "futurity/machine_spec.hpp"

namespace futurity {

// Expected profit E(i,j) for a player who, facing state (cam i, pointer j),
// plays one coin per coup until the first coup that pays anything (payout or
// award) and then walks away. Backward recursion on the pointer:
//   E(i, J-1) = -1 + mu_i + J q_i
//   E(i, j)   = -1 + mu_i + q_i E(i+1, j+1)     for j = J-2 .. 0,
// cam indices cyclic. equilibrium_value weights the table by the stationary
// law of the driving chain.
struct ExpectationTable {
  int I = 0, J = 0;
  std::vector<double> E;  // I x J row-major
  double equilibrium_value = 0.0;

  double at(int cam, int pointer) const {
    return E[static_cast<std::size_t>(cam) * J + pointer];
  }
};

inline ExpectationTable stop_after_payout_table(const MachineSpec& spec,
                                                const StationaryLaw& law) {
  const int I = spec.I(), J = spec.J();
  ExpectationTable tab;
  tab.I = I;
  tab.J = J;
  tab.E.assign(static_cast<std::size_t>(I) * J, 0.0);
  for (int i = 0; i < I; ++i)
    tab.E[static_cast<std::size_t>(i) * J + (J - 1)] =
        -1.0 + spec.mu(i) + J * spec.q(i);
  for (int j = J - 2; j >= 0; --j)
    for (int i = 0; i < I; ++i)
      tab.E[static_cast<std::size_t>(i) * J + j] =
          -1.0 + spec.mu(i) + spec.q(i) * tab.at(cyc(i + 1, I), j + 1);

  double v = 0.0;
  for (int i = 0; i < I; ++i)
    for (int j = 0; j < J; ++j) v += law.at(i, j) * tab.at(i, j);
  tab.equilibrium_value = v;
  return tab;
}

}  // namespace futurity
