#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "futurity/equilibrium.hpp"
#include "futurity/limit_theorems.hpp"
#include "futurity/reel_machine.hpp"
#include "futurity/simulate.hpp"
#include "futurity/two_armed.hpp"

using namespace futurity;

TEST_CASE("generator reference stream") {
  // SplitMix64 expansion keeps distinct seeds decorrelated; spot properties.
  Xoshiro256pp a(1), b(1), c(2);
  for (int k = 0; k < 100; ++k) REQUIRE(a.next() == b.next());
  bool differs = false;
  for (int k = 0; k < 100; ++k) differs = differs || (a.next() != c.next());
  REQUIRE(differs);
  Xoshiro256pp d(1);
  for (int k = 0; k < 1000; ++k) {
    double u = d.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
  // jump() moves to a disjoint stream.
  Xoshiro256pp e(1), f(1);
  f.jump();
  bool jump_differs = false;
  for (int k = 0; k < 100; ++k) jump_differs = jump_differs || (e.next() != f.next());
  REQUIRE(jump_differs);
}

TEST_CASE("simulation is reproducible") {
  MachineSpec spec = futurity1936();
  SimConfig cfg;
  cfg.seed = 987654321;
  cfg.n_coups = 50000;
  cfg.record_path = true;
  SimResult a = simulate_one_armed(spec, cfg);
  SimResult b = simulate_one_armed(spec, cfg);
  REQUIRE(a.total_payout == b.total_payout);
  REQUIRE(a.hits == b.hits);
  REQUIRE(a.awards == b.awards);
  REQUIRE(a.final_state.cam == b.final_state.cam);
  REQUIRE(a.final_state.pointer == b.final_state.pointer);
  REQUIRE(a.path_payouts == b.path_payouts);
  REQUIRE(a.path_awards == b.path_awards);

  SimConfig other = cfg;
  other.stream = 1;
  SimResult c = simulate_one_armed(spec, other);
  REQUIRE(a.path_payouts != c.path_payouts);
}

TEST_CASE("recorded path is self-consistent") {
  MachineSpec spec = futurity1936();
  SimConfig cfg;
  cfg.seed = 24601;
  cfg.n_coups = 20000;
  cfg.record_path = true;
  cfg.initial_state = {3, 2};
  SimResult r = simulate_one_armed(spec, cfg);

  const int I = spec.I(), J = spec.J();
  long long total = 0, hits = 0, awards = 0;
  int cam = 3, ptr = 2;
  for (long long t = 0; t < cfg.n_coups; ++t) {
    long long pay = r.path_payouts[t];
    bool award = r.path_awards[t] != 0;
    if (pay > 0) {
      REQUIRE_FALSE(award);  // an award coup is by definition a losing spin
      ptr = 0;
    } else if (ptr == J - 1) {
      REQUIRE(award);
      ptr = 0;
    } else {
      REQUIRE_FALSE(award);
      ++ptr;
    }
    total += pay + (award ? J : 0);
    if (pay > 0 || award) ++hits;
    if (award) ++awards;
    cam = (cam + 1) % I;
  }
  REQUIRE(total == r.total_payout);
  REQUIRE(hits == r.hits);
  REQUIRE(awards == r.awards);
  REQUIRE(cam == r.final_state.cam);
  REQUIRE(ptr == r.final_state.pointer);

  long long award_tally = std::accumulate(r.awards_by_cam.begin(),
                                          r.awards_by_cam.end(), 0LL);
  REQUIRE(award_tally == r.awards);
  long long post_tally = std::accumulate(r.post_payout_cam.begin(),
                                         r.post_payout_cam.end(), 0LL);
  REQUIRE(post_tally == r.hits);
}

TEST_CASE("long-run frequencies agree with the exact analysis") {
  MachineSpec spec = futurity1936();
  StationaryLaw law = stationary_closed_form(spec);
  CltParameters pay = clt_parameters(spec);
  CltParameters hit = hit_count_parameters(spec);
  CltParameters award = award_count_parameters(spec);

  SimConfig cfg;
  cfg.seed = 777;
  cfg.n_coups = 1000000;
  SimResult r = simulate_one_armed(spec, cfg);
  const double n = static_cast<double>(cfg.n_coups);

  double se_pay = std::sqrt(pay.sigma_star_sq / n);
  double se_hit = std::sqrt(hit.sigma_star_sq / n);
  double se_award = std::sqrt(award.sigma_star_sq / n);
  REQUIRE(std::abs(r.total_payout / n - law.mu_star) < 3 * se_pay);
  REQUIRE(std::abs(r.hits / n - law.p_star) < 3 * se_hit);
  REQUIRE(std::abs(r.awards / n - law.p_award) < 3 * se_award);
}

TEST_CASE("two-armed simulation tracks each strategy's mean") {
  TwoArmedSpec spec = fair_two_armed(0.3, 1.0 / 15, 10);
  const long long n = 1000000;
  auto mean_of = [&](const Strategy& s, std::uint64_t seed) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.n_coups = n;
    SimResult r = simulate_two_armed(spec, s, cfg);
    return r.total_payout / static_cast<double>(n);
  };

  REQUIRE(mean_of(SingleArm{'A'}, 11) == Catch::Approx(1.0).margin(0.02).epsilon(0));
  REQUIRE(mean_of(SingleArm{'B'}, 12) == Catch::Approx(1.0).margin(0.02).epsilon(0));
  REQUIRE(mean_of(Mixture{0.5}, 13) ==
          Catch::Approx(mixture_mean(spec, 0.5)).margin(0.02).epsilon(0));
  REQUIRE(mean_of(PatternStrategy{"AABB"}, 14) ==
          Catch::Approx(pattern_mean(spec, "AABB")).margin(0.02).epsilon(0));
  REQUIRE(mean_of(PointerThreshold{4}, 15) ==
          Catch::Approx(pointer_strategy_analysis(0.3, 1.0 / 15, 10, 4).mu_star)
              .margin(0.02)
              .epsilon(0));
}

TEST_CASE("two-armed pattern offset and reproducibility") {
  TwoArmedSpec spec = fair_two_armed(0.4, 0.1, 4);
  SimConfig cfg;
  cfg.seed = 5;
  cfg.n_coups = 1000;
  cfg.record_path = true;
  SimResult a = simulate_two_armed(spec, PatternStrategy{"AB"}, cfg);
  SimResult b = simulate_two_armed(spec, PatternStrategy{"AB"}, cfg);
  REQUIRE(a.path_payouts == b.path_payouts);
  cfg.initial_state.cam = 1;  // start the pattern on its second letter
  SimResult c = simulate_two_armed(spec, PatternStrategy{"AB"}, cfg);
  REQUIRE(a.path_payouts != c.path_payouts);
}

TEST_CASE("replicated sessions standardize to a normal shape") {
  MachineSpec spec = futurity1936();
  CltParameters params = clt_parameters(spec);
  SimConfig cfg;
  cfg.seed = 314159;
  // Short horizons keep visible skew from the 150-coin jackpot; 2*10^4 coups
  // is past the worst of it while the whole experiment stays under a second.
  cfg.n_coups = 20000;
  cfg.replications = 2000;
  std::vector<double> stats = clt_experiment(spec, cfg, params);
  REQUIRE(stats.size() == 2000);

  double mean = std::accumulate(stats.begin(), stats.end(), 0.0) / stats.size();
  double var = 0.0;
  for (double s : stats) var += (s - mean) * (s - mean);
  var /= stats.size() - 1;
  REQUIRE(std::abs(mean) < 0.15);
  REQUIRE(var > 0.8);
  REQUIRE(var < 1.2);
  REQUIRE(ks_distance_normal(stats) < 0.06);

  // The statistic set does not depend on the worker count.
  std::vector<double> threaded = clt_experiment(spec, cfg, params, 3);
  REQUIRE(threaded == stats);
}

TEST_CASE("normal distance measure sanity") {
  std::vector<double> good;
  for (int k = 1; k <= 400; ++k) {
    double u = (k - 0.5) / 400;
    // Rough normal quantile via bisection on erfc.
    double lo = -6, hi = 6;
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      (0.5 * std::erfc(-mid / std::sqrt(2.0)) < u ? lo : hi) = mid;
    }
    good.push_back(0.5 * (lo + hi));
  }
  REQUIRE(ks_distance_normal(good) < 0.01);
  std::vector<double> shifted = good;
  for (double& v : shifted) v += 1.0;
  REQUIRE(ks_distance_normal(shifted) > 0.3);
}
