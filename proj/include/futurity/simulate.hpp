#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <thread>
#include <variant>
#include <vector>

#include "futurity/errors.hpp"
#include "futurity/limit_theorems.hpp"
#include "futurity/machine_spec.hpp"
#include "futurity/two_armed.hpp"
#include "futurity/xoshiro.hpp"

namespace futurity {

struct SimConfig {
  std::uint64_t seed = 0;
  int stream = 0;  // jump the seeded generator this many times before use
  long long n_coups = 1;
  int replications = 1;        // used by clt_experiment
  MachineState initial_state;  // for two-armed play, cam is the pattern offset
  bool record_path = false;
};

struct SimResult {
  long long n_coups = 0;
  long long total_payout = 0;  // awards included
  long long hits = 0;          // coups that paid anything (awards included)
  long long awards = 0;
  MachineState final_state;
  // Per-cam tallies (one-armed runs only): awards by the cam position played,
  // and the cam position right after each paying coup.
  std::vector<long long> awards_by_cam;
  std::vector<long long> post_payout_cam;
  // Per-coup records when record_path is set: the base payout of each coup
  // and whether it also paid the award.
  std::vector<long long> path_payouts;
  std::vector<unsigned char> path_awards;
  std::optional<double> standardized_statistic;
};

namespace detail {

// Inverse-CDF sampling table; atoms in ascending payout order, which fixes
// how the uniform stream is consumed.
struct SampleTable {
  std::vector<double> cum;
  std::vector<long long> pay;
};

inline SampleTable make_table(const PayoutDistribution& d) {
  SampleTable t;
  double c = 0.0;
  for (const auto& atom : d.atoms()) {
    c += atom.prob;
    t.cum.push_back(c);
    t.pay.push_back(atom.payout);
  }
  t.cum.back() = 1.0;  // uniform01() < 1, so the scan always lands
  return t;
}

inline long long draw(const SampleTable& t, double u) {
  std::size_t k = 0;
  while (u >= t.cum[k]) ++k;
  return t.pay[k];
}

}  // namespace detail

inline SimResult simulate_one_armed(const MachineSpec& spec, const SimConfig& cfg) {
  const int I = spec.I(), J = spec.J();
  if (cfg.n_coups < 0) throw BadPeriod("coup count must be nonnegative");
  if (cfg.initial_state.cam < 0 || cfg.initial_state.cam >= I ||
      cfg.initial_state.pointer < 0 || cfg.initial_state.pointer >= J)
    throw BadPeriod("initial state outside the state space");

  std::vector<detail::SampleTable> tabs;
  tabs.reserve(I);
  for (int i = 0; i < I; ++i) tabs.push_back(detail::make_table(spec.dist(i)));

  Xoshiro256pp g(cfg.seed);
  for (int k = 0; k < cfg.stream; ++k) g.jump();
  SimResult r;
  r.n_coups = cfg.n_coups;
  r.awards_by_cam.assign(I, 0);
  r.post_payout_cam.assign(I, 0);
  if (cfg.record_path) {
    r.path_payouts.reserve(cfg.n_coups);
    r.path_awards.reserve(cfg.n_coups);
  }

  int cam = cfg.initial_state.cam, ptr = cfg.initial_state.pointer;
  for (long long t = 0; t < cfg.n_coups; ++t) {
    long long pay = detail::draw(tabs[cam], g.uniform01());
    bool award = false;
    if (pay > 0) {
      ptr = 0;
    } else if (++ptr == J) {
      ptr = 0;
      award = true;
    }
    r.total_payout += pay;
    if (award) {
      r.total_payout += J;
      r.awards += 1;
      r.awards_by_cam[cam] += 1;
    }
    if (pay > 0 || award) {
      r.hits += 1;
      r.post_payout_cam[cam + 1 == I ? 0 : cam + 1] += 1;
    }
    if (cfg.record_path) {
      r.path_payouts.push_back(pay);
      r.path_awards.push_back(award ? 1 : 0);
    }
    cam = cam + 1 == I ? 0 : cam + 1;
  }
  r.final_state = {cam, ptr};
  return r;
}

inline SimResult simulate_two_armed(const TwoArmedSpec& spec, const Strategy& strat,
                                    const SimConfig& cfg) {
  const int J = spec.J;
  if (cfg.n_coups < 0) throw BadPeriod("coup count must be nonnegative");
  if (cfg.initial_state.pointer < 0 || cfg.initial_state.pointer >= J)
    throw BadPeriod("initial pointer outside 0..J-1");

  detail::SampleTable tab_A = detail::make_table(spec.arm_A);
  detail::SampleTable tab_B = detail::make_table(spec.arm_B);

  const SingleArm* single = std::get_if<SingleArm>(&strat);
  const Mixture* mix = std::get_if<Mixture>(&strat);
  const PatternStrategy* pat = std::get_if<PatternStrategy>(&strat);
  const PointerThreshold* ptr_strat = std::get_if<PointerThreshold>(&strat);
  if (single && single->arm != 'A' && single->arm != 'B')
    throw BadPattern("single arm must be A or B");
  if (mix && (!(mix->gamma >= 0.0) || !(mix->gamma <= 1.0)))
    throw BadDist("gamma must lie in [0,1]");
  if (pat) validate_pattern_word(pat->word);
  if (ptr_strat && (ptr_strat->K < 0 || ptr_strat->K > J - 1))
    throw BadK("threshold must lie in 0..J-1");
  const int pat_len = pat ? static_cast<int>(pat->word.size()) : 1;

  Xoshiro256pp g(cfg.seed);
  for (int k = 0; k < cfg.stream; ++k) g.jump();
  SimResult r;
  r.n_coups = cfg.n_coups;
  if (cfg.record_path) {
    r.path_payouts.reserve(cfg.n_coups);
    r.path_awards.reserve(cfg.n_coups);
  }

  int ptr = cfg.initial_state.pointer;
  int pos = pat ? cfg.initial_state.cam % pat_len : 0;  // position in the pattern
  for (long long t = 0; t < cfg.n_coups; ++t) {
    bool play_A;
    if (single) {
      play_A = single->arm == 'A';
    } else if (mix) {
      play_A = g.uniform01() < mix->gamma;  // arm draw precedes the payout draw
    } else if (pat) {
      play_A = pat->word[pos] == 'A';
    } else {
      play_A = ptr < ptr_strat->K;
    }
    long long pay = detail::draw(play_A ? tab_A : tab_B, g.uniform01());
    bool award = false;
    if (pay > 0) {
      ptr = 0;
    } else if (++ptr == J) {
      ptr = 0;
      award = true;
    }
    r.total_payout += pay;
    if (award) {
      r.total_payout += J;
      r.awards += 1;
    }
    if (pay > 0 || award) r.hits += 1;
    if (cfg.record_path) {
      r.path_payouts.push_back(pay);
      r.path_awards.push_back(award ? 1 : 0);
    }
    if (pat) pos = pos + 1 == pat_len ? 0 : pos + 1;
  }
  r.final_state = {pos, ptr};
  return r;
}

inline double standardized_statistic(const SimResult& r, double mu_star,
                                     double sigma_star_sq) {
  return (static_cast<double>(r.total_payout) - r.n_coups * mu_star) /
         std::sqrt(static_cast<double>(r.n_coups) * sigma_star_sq);
}

// Runs cfg.replications independent copies of an n-coup session and returns
// the standardized total payout of each. Replication k draws from the seed
// stream jumped k times, so the set of statistics does not depend on the
// worker count.
inline std::vector<double> clt_experiment(const MachineSpec& spec, const SimConfig& cfg,
                                          const CltParameters& params, int threads = 1) {
  const int I = spec.I(), J = spec.J();
  if (cfg.replications < 1) throw BadPeriod("need at least one replication");
  if (cfg.initial_state.cam < 0 || cfg.initial_state.cam >= I ||
      cfg.initial_state.pointer < 0 || cfg.initial_state.pointer >= J)
    throw BadPeriod("initial state outside the state space");

  std::vector<detail::SampleTable> tabs;
  tabs.reserve(I);
  for (int i = 0; i < I; ++i) tabs.push_back(detail::make_table(spec.dist(i)));

  const double mu_star = params.mu_bar / I;
  const double denom = std::sqrt(static_cast<double>(cfg.n_coups) * params.sigma_star_sq);
  std::vector<double> out(cfg.replications);

  auto run_block = [&](int lo, int hi) {
    Xoshiro256pp base(cfg.seed);
    for (int k = 0; k < lo; ++k) base.jump();
    for (int k = lo; k < hi; ++k) {
      Xoshiro256pp g = base;
      long long total = 0;
      int cam = cfg.initial_state.cam, ptr = cfg.initial_state.pointer;
      for (long long t = 0; t < cfg.n_coups; ++t) {
        long long pay = detail::draw(tabs[cam], g.uniform01());
        if (pay > 0) {
          ptr = 0;
        } else if (++ptr == J) {
          ptr = 0;
          pay += J;
        }
        total += pay;
        cam = cam + 1 == I ? 0 : cam + 1;
      }
      out[k] = (static_cast<double>(total) - cfg.n_coups * mu_star) / denom;
      base.jump();
    }
  };

  int n_threads = std::max(1, threads);
  if (n_threads == 1 || cfg.replications < 2 * n_threads) {
    run_block(0, cfg.replications);
  } else {
    std::vector<std::thread> pool;
    int chunk = (cfg.replications + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      int lo = std::min(cfg.replications, t * chunk);
      int hi = std::min(cfg.replications, lo + chunk);
      if (lo < hi) pool.emplace_back(run_block, lo, hi);
    }
    for (auto& th : pool) th.join();
  }
  return out;
}

// Kolmogorov-Smirnov distance of a sample against the standard normal.
inline double ks_distance_normal(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    double cdf = 0.5 * std::erfc(-xs[k] / std::sqrt(2.0));
    d = std::max(d, std::abs(cdf - static_cast<double>(k) / n));
    d = std::max(d, std::abs(static_cast<double>(k + 1) / n - cdf));
  }
  return d;
}

}  // namespace futurity
