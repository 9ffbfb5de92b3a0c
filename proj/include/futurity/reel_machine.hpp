#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "futurity/errors.hpp"
#include "futurity/machine_spec.hpp"
#include "futurity/payout_distribution.hpp"

namespace futurity {

// Symbol codes used on the reel strips.
enum Symbol : int {
  kLemon = 0,
  kCherry = 1,
  kOrange = 2,
  kPlum = 3,
  kBell = 4,
  kBar = 5,
};

enum class Mode { E, O };

// A three-reel machine with 20-stop strips and a two-mode cam. Strip
// positions are numbered 1..20: in mode E only even-numbered positions can
// come to rest on the pay line, in mode O only odd-numbered ones, so each
// mode exposes 10 equally likely stops per reel. Triples absent from the pay
// table pay zero.
struct ReelMachine {
  std::array<std::array<int, 20>, 3> reels{};
  std::map<std::array<int, 3>, std::int64_t> paytable;
  std::string mode_pattern;  // one char per cam position, 'E' or 'O'
};

inline void validate(const ReelMachine& rm) {
  for (const auto& strip : rm.reels)
    for (int s : strip)
      if (s < 0 || s > 5) throw BadDist("reel symbol out of range 0..5");
  for (const auto& [sym, pay] : rm.paytable) {
    for (int s : sym)
      if (s < 0 || s > 5) throw BadDist("pay-table symbol out of range 0..5");
    if (pay <= 0) throw BadDist("pay-table payout must be positive");
  }
  if (rm.mode_pattern.size() != 10)
    throw BadPeriod("mode pattern must have length 10");
  for (char c : rm.mode_pattern)
    if (c != 'E' && c != 'O') throw BadPeriod("mode pattern characters must be E or O");
}

// The 1936 machine: strips, pay table, and cam timing.
inline ReelMachine futurity_reels() {
  ReelMachine rm;
  rm.reels = {{
      {kCherry, kBar, kCherry, kOrange, kCherry, kBar, kCherry, kBar, kCherry, kPlum,
       kCherry, kOrange, kBar, kCherry, kBell, kPlum, kCherry, kBar, kCherry, kOrange},
      {kCherry, kBell, kCherry, kPlum, kCherry, kBell, kCherry, kOrange, kCherry, kBell,
       kCherry, kBell, kCherry, kOrange, kCherry, kOrange, kBell, kCherry, kBar, kBell},
      {kPlum, kBell, kOrange, kLemon, kPlum, kBell, kOrange, kLemon, kBell, kLemon,
       kOrange, kPlum, kOrange, kBell, kOrange, kBell, kBar, kOrange, kPlum, kBar},
  }};
  rm.paytable = {
      {{kBar, kBar, kBar}, 150},
      {{kBell, kBell, kBell}, 18},
      {{kBell, kBell, kBar}, 18},
      {{kPlum, kPlum, kPlum}, 14},
      {{kPlum, kPlum, kBar}, 14},
      {{kOrange, kOrange, kOrange}, 10},
      {{kOrange, kOrange, kBar}, 10},
      {{kCherry, kCherry, kLemon}, 5},
      {{kCherry, kCherry, kBell}, 5},
      {{kCherry, kCherry, kOrange}, 3},
      {{kCherry, kCherry, kPlum}, 3},
      {{kCherry, kCherry, kBar}, 3},
  };
  rm.mode_pattern = "EEEEEOEEEO";
  return rm;
}

// Exact payout census over the 10^3 equally likely stop triples of a mode.
inline std::map<std::int64_t, std::int64_t> mode_payout_counts(const ReelMachine& rm,
                                                               Mode mode) {
  validate(rm);
  // Mode E sees the even-numbered strip positions (2,4,...,20), mode O the
  // odd-numbered ones.
  int first = (mode == Mode::E) ? 1 : 0;
  std::map<std::int64_t, std::int64_t> counts;
  for (int a = first; a < 20; a += 2)
    for (int b = first; b < 20; b += 2)
      for (int c = first; c < 20; c += 2) {
        std::array<int, 3> sym = {rm.reels[0][a], rm.reels[1][b], rm.reels[2][c]};
        auto it = rm.paytable.find(sym);
        counts[it == rm.paytable.end() ? 0 : it->second] += 1;
      }
  return counts;
}

inline PayoutDistribution mode_distribution(const ReelMachine& rm, Mode mode) {
  return PayoutDistribution::from_counts(mode_payout_counts(rm, mode), 1000);
}

// Builds the generalized-machine view: one payout law per cam position,
// following the machine's mode pattern.
inline MachineSpec to_machine_spec(const ReelMachine& rm, int J = 10) {
  validate(rm);
  PayoutDistribution e = mode_distribution(rm, Mode::E);
  PayoutDistribution o = mode_distribution(rm, Mode::O);
  std::vector<PayoutDistribution> dists;
  dists.reserve(rm.mode_pattern.size());
  for (char c : rm.mode_pattern) dists.push_back(c == 'E' ? e : o);
  return MachineSpec::make(J, std::move(dists));
}

inline MachineSpec futurity1936() { return to_machine_spec(futurity_reels(), 10); }

}  // namespace futurity
