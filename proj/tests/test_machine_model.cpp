#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <vector>

#include "futurity/machine_spec.hpp"
#include "futurity/payout_distribution.hpp"
#include "futurity/rational.hpp"
#include "futurity/reel_machine.hpp"
#include "futurity/xoshiro.hpp"

using namespace futurity;

TEST_CASE("rational arithmetic and parsing") {
  REQUIRE(Rational(2, 4) == Rational(1, 2));
  REQUIRE(Rational(-3, -6) == Rational(1, 2));
  REQUIRE(Rational(3, -6) == Rational(-1, 2));
  REQUIRE(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  REQUIRE(Rational(7, 25) * Rational(5, 7) == Rational(1, 5));
  REQUIRE(Rational(1, 2) - Rational(1, 2) == Rational(0));
  REQUIRE(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  REQUIRE(Rational(1, 3) < Rational(1, 2));

  REQUIRE(Rational::parse("968/1000") == Rational(121, 125));
  REQUIRE(Rational::parse("0.968") == Rational(968, 1000));
  REQUIRE(Rational::parse("-0.25") == Rational(-1, 4));
  REQUIRE(Rational::parse("14") == Rational(14));
  REQUIRE(Rational(121, 125).str() == "121/125");
  REQUIRE(Rational(3).str() == "3");
  REQUIRE_THROWS(Rational::parse("x"));
  REQUIRE_THROWS(Rational(1, 0));
  REQUIRE_THROWS(Rational(1, 2) / Rational(0));
}

TEST_CASE("payout distribution construction") {
  auto d = PayoutDistribution::from_probs(
      {{5, 0.25}, {0, 0.5}, {5, 0.05}, {2, 0.2}});
  REQUIRE(d.atoms().size() == 3);
  REQUIRE(d.atoms()[0].payout == 0);
  REQUIRE(d.atoms()[1].payout == 2);
  REQUIRE(d.atoms()[2].payout == 5);
  REQUIRE(d.atoms()[2].prob == Catch::Approx(0.3).margin(1e-15).epsilon(0));
  REQUIRE(d.p() == Catch::Approx(0.5).margin(1e-15).epsilon(0));
  REQUIRE(d.mu() == Catch::Approx(2 * 0.2 + 5 * 0.3).margin(1e-14).epsilon(0));
  REQUIRE_FALSE(d.has_exact());

  auto e = PayoutDistribution::from_rationals(
      {{0, Rational(1, 2)}, {3, Rational(1, 4)}, {7, Rational(1, 4)}});
  REQUIRE(e.has_exact());
  REQUIRE(e.p_exact() == Rational(1, 2));
  REQUIRE(e.mu_exact() == Rational(3, 4) + Rational(7, 4));
  // var = E[R^2] - mu^2 = (9/4 + 49/4) - (5/2)^2 = 58/4 - 25/4 = 33/4
  REQUIRE(e.sigma_sq_exact() == Rational(33, 4));
  REQUIRE(e.mu() == Catch::Approx(2.5).margin(1e-14).epsilon(0));

  SECTION("rejections") {
    REQUIRE_THROWS_AS(PayoutDistribution::from_probs({{1, 1.0}}), BadDist);
    REQUIRE_THROWS_AS(PayoutDistribution::from_probs({{0, 1.0}}), BadDist);
    REQUIRE_THROWS_AS(PayoutDistribution::from_probs({{0, 0.4}, {1, 0.4}}), BadDist);
    REQUIRE_THROWS_AS(PayoutDistribution::from_probs({{0, 0.5}, {1, -0.5}, {2, 1.0}}),
                      BadDist);
    REQUIRE_THROWS_AS(PayoutDistribution::from_probs({{-1, 0.5}, {0, 0.5}}), BadDist);
    REQUIRE_THROWS_AS(
        PayoutDistribution::from_rationals({{0, Rational(1, 2)}, {1, Rational(1, 3)}}),
        BadDist);
    REQUIRE_THROWS_AS(PayoutDistribution::from_counts({{0, 999}, {3, 2}}, 1000), BadDist);
  }
}

TEST_CASE("even-mode payout law is exact") {
  auto counts = mode_payout_counts(futurity_reels(), Mode::E);
  std::map<std::int64_t, std::int64_t> want = {
      {0, 968}, {3, 3}, {5, 7}, {10, 18}, {14, 4}};
  REQUIRE(counts == want);

  auto d = mode_distribution(futurity_reels(), Mode::E);
  REQUIRE(d.has_exact());
  REQUIRE(d.p_exact() == Rational(32, 1000));
  REQUIRE(d.mu_exact() == Rational(7, 25));
  REQUIRE(d.sigma_sq_exact() == Rational(27076, 10000));
}

TEST_CASE("odd-mode payout law is exact") {
  auto counts = mode_payout_counts(futurity_reels(), Mode::O);
  std::map<std::int64_t, std::int64_t> want = {
      {0, 357}, {3, 576}, {5, 64}, {18, 2}, {150, 1}};
  REQUIRE(counts == want);

  auto d = mode_distribution(futurity_reels(), Mode::O);
  REQUIRE(d.has_exact());
  REQUIRE(d.p_exact() == Rational(643, 1000));
  REQUIRE(d.mu_exact() == Rational(2234, 1000));
  REQUIRE(d.sigma_sq_exact() == Rational(6235311, 250000));
}

TEST_CASE("builtin machine shape") {
  MachineSpec spec = futurity1936();
  REQUIRE(spec.I() == 10);
  REQUIRE(spec.J() == 10);
  REQUIRE(spec.d() == 1);
  // Cam mode word: EEEEEOEEEO.
  for (int i = 0; i < 10; ++i) {
    bool odd_mode = (i == 5 || i == 9);
    REQUIRE(spec.p(i) == Catch::Approx(odd_mode ? 0.643 : 0.032).margin(1e-15).epsilon(0));
    REQUIRE(spec.mu(i) == Catch::Approx(odd_mode ? 2.234 : 0.28).margin(1e-14).epsilon(0));
  }
  REQUIRE(spec.q(0) == Catch::Approx(0.968).margin(1e-15).epsilon(0));
}

TEST_CASE("reel machine structure") {
  ReelMachine rm = futurity_reels();
  for (const auto& reel : rm.reels) REQUIRE(reel.size() == 20);
  REQUIRE(rm.mode_pattern.size() == 10);
  long long total = 0;
  for (const auto& [pay, count] : mode_payout_counts(rm, Mode::E)) {
    REQUIRE(count > 0);
    total += count;
  }
  REQUIRE(total == 1000);
}

TEST_CASE("machine spec validation") {
  auto dist = PayoutDistribution::from_probs({{0, 0.9}, {2, 0.1}});
  REQUIRE_THROWS_AS(MachineSpec::make(1, {dist, dist}), BadJ);
  REQUIRE_THROWS_AS(MachineSpec::make(3, {dist, dist}), BadPeriod);
  REQUIRE_THROWS_AS(MachineSpec::make(3, {}), BadPeriod);
  MachineSpec m = MachineSpec::make(2, {dist, dist, dist, dist});
  REQUIRE(m.I() == 4);
  REQUIRE(m.d() == 2);
  REQUIRE(m == MachineSpec::make(2, {dist, dist, dist, dist}));
}

TEST_CASE("distribution moments match direct sums") {
  Xoshiro256pp g(20260817);
  for (int trial = 0; trial < 50; ++trial) {
    int n_atoms = 2 + static_cast<int>(g.below(4));
    std::vector<PayoutDistribution::Atom> atoms;
    double rest = 1.0;
    double p0 = 0.2 + 0.6 * g.uniform01();
    atoms.push_back({0, p0});
    rest -= p0;
    for (int a = 1; a < n_atoms; ++a) {
      double pr = (a == n_atoms - 1) ? rest : rest * (0.2 + 0.6 * g.uniform01());
      atoms.push_back({static_cast<std::int64_t>(1 + g.below(40)), pr});
      rest -= pr;
    }
    auto d = PayoutDistribution::from_probs(atoms);
    double mu = 0, m2 = 0, p = 0;
    for (const auto& a : d.atoms()) {
      mu += static_cast<double>(a.payout) * a.prob;
      m2 += static_cast<double>(a.payout) * static_cast<double>(a.payout) * a.prob;
      if (a.payout > 0) p += a.prob;
    }
    REQUIRE(d.mu() == Catch::Approx(mu).margin(1e-15).epsilon(0));
    REQUIRE(d.sigma_sq() == Catch::Approx(m2 - mu * mu).margin(1e-12).epsilon(0));
    REQUIRE(d.p() == Catch::Approx(p).margin(1e-15).epsilon(0));
  }
}
