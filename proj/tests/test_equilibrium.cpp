#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "futurity/equilibrium.hpp"
#include "futurity/reel_machine.hpp"
#include "test_util.hpp"

using namespace futurity;

TEST_CASE("transition matrix structure") {
  Xoshiro256pp g(11);
  MachineSpec spec = testutil::random_machine(g);
  TransitionMatrix tm = transition_matrix(spec);
  const int I = spec.I(), J = spec.J();
  for (int r = 0; r < tm.n(); ++r) {
    double sum = 0.0;
    for (int c = 0; c < tm.n(); ++c) sum += tm.at(r, c);
    REQUIRE(sum == Catch::Approx(1.0).margin(1e-12).epsilon(0));
  }
  for (int i = 0; i < I; ++i) {
    int next = (i + 1) % I;
    for (int j = 0; j + 1 < J; ++j) {
      int from = TransitionMatrix::state(i, j, J);
      REQUIRE(tm.at(from, TransitionMatrix::state(next, 0, J)) ==
              Catch::Approx(spec.p(i)).margin(0).epsilon(0));
      REQUIRE(tm.at(from, TransitionMatrix::state(next, j + 1, J)) ==
              Catch::Approx(spec.q(i)).margin(0).epsilon(0));
    }
    REQUIRE(tm.at(TransitionMatrix::state(i, J - 1, J),
                  TransitionMatrix::state(next, 0, J)) == Catch::Approx(1.0).margin(0).epsilon(0));
  }
}

TEST_CASE("builtin stationary law anchors") {
  StationaryLaw law = stationary_closed_form(futurity1936());
  REQUIRE(law.at(0, 0) == Catch::Approx(0.071306).margin(5e-7).epsilon(0));
  REQUIRE(law.at(0, 4) == Catch::Approx(0.023090).margin(5e-7).epsilon(0));
  REQUIRE(law.at(5, 9) == Catch::Approx(0.019624).margin(5e-7).epsilon(0));
  for (int i = 0; i < 10; ++i) {
    double row = 0.0;
    for (int j = 0; j < 10; ++j) {
      REQUIRE(law.at(i, j) >= 0.0);
      row += law.at(i, j);
    }
    REQUIRE(std::abs(row - 0.1) < 1e-14);
  }
  double col0 = 0.0;
  for (int i = 0; i < 10; ++i) col0 += law.at(i, 0);
  REQUIRE(col0 == Catch::Approx(0.171001).margin(5e-7).epsilon(0));
}

TEST_CASE("builtin equilibrium scalars") {
  StationaryLaw law = stationary_closed_form(futurity1936());
  REQUIRE(law.p_award == Catch::Approx(0.0168011).margin(1e-6).epsilon(0));
  REQUIRE(law.mu_star == Catch::Approx(0.838811).margin(1e-6).epsilon(0));
  REQUIRE(law.p_star == Catch::Approx(0.171001).margin(1e-6).epsilon(0));
  // Column 0 of the stationary matrix carries exactly the paying-coup rate.
  double col0 = 0.0;
  for (int i = 0; i < 10; ++i) col0 += law.at(i, 0);
  REQUIRE(law.p_star == Catch::Approx(col0).margin(1e-14).epsilon(0));
}

TEST_CASE("single-period award collapse") {
  MachineSpec spec = futurity1936();  // d = 1
  StationaryLaw law = stationary_closed_form(spec);
  double pbar = 0.0;
  for (int i = 0; i < spec.I(); ++i) pbar += spec.p(i);
  pbar /= spec.J();
  REQUIRE(std::abs(law.p_award - pbar * law.Q / (1.0 - law.Q)) < 1e-14);
}

TEST_CASE("constant two-state machine has explicit law") {
  double p = 0.3, q = 1 - p;
  auto dist = PayoutDistribution::from_probs({{0, q}, {2, p}});
  MachineSpec spec = MachineSpec::make(2, {dist, dist});
  StationaryLaw law = stationary_closed_form(spec);
  REQUIRE(law.at(0, 0) == Catch::Approx(1.0 / (2 * (1 + q))).margin(1e-15).epsilon(0));
  REQUIRE(law.at(1, 1) == Catch::Approx(q / (2 * (1 + q))).margin(1e-15).epsilon(0));
}

TEST_CASE("closed form matches the linear-solve oracle") {
  Xoshiro256pp g(20260401);
  for (int trial = 0; trial < 60; ++trial) {
    MachineSpec spec = testutil::random_machine(g);
    StationaryLaw law = stationary_closed_form(spec);
    std::vector<double> x = stationary_oracle(transition_matrix(spec));
    double worst = 0.0;
    for (int i = 0; i < spec.I(); ++i)
      for (int j = 0; j < spec.J(); ++j)
        worst = std::max(worst,
                         std::abs(law.at(i, j) -
                                  x[TransitionMatrix::state(i, j, spec.J())]));
    REQUIRE(worst < 1e-10);
  }
}

TEST_CASE("oracle rejects a chain with no unique stationary law") {
  TransitionMatrix tm;
  tm.I = 2;
  tm.J = 2;
  tm.a.assign(16, 0.0);
  for (int s = 0; s < 4; ++s) tm.at(s, s) = 1.0;
  REQUIRE_THROWS_AS(stationary_oracle(tm), SingularSystem);
}

TEST_CASE("cyclic relabeling rotates the stationary law") {
  Xoshiro256pp g(777);
  MachineSpec spec = testutil::random_machine(g, 5, 2);
  const int I = spec.I(), J = spec.J();
  int r = 1 + static_cast<int>(g.below(I - 1));
  std::vector<PayoutDistribution> rotated;
  for (int i = 0; i < I; ++i) rotated.push_back(spec.dist((i + r) % I));
  MachineSpec spun = MachineSpec::make(J, std::move(rotated));
  StationaryLaw a = stationary_closed_form(spec);
  StationaryLaw b = stationary_closed_form(spun);
  for (int i = 0; i < I; ++i)
    for (int j = 0; j < J; ++j)
      REQUIRE(b.at(i, j) == Catch::Approx(a.at((i + r) % I, j)).margin(1e-13).epsilon(0));
  REQUIRE(b.p_award == Catch::Approx(a.p_award).margin(1e-13).epsilon(0));
  REQUIRE(b.mu_star == Catch::Approx(a.mu_star).margin(1e-13).epsilon(0));
}

TEST_CASE("post-payout cam distribution") {
  MachineSpec spec = futurity1936();
  StationaryLaw law = stationary_closed_form(spec);
  std::vector<double> rho = post_payout_distribution(spec, law);
  double sum = 0.0;
  for (double v : rho) sum += v;
  REQUIRE(sum == Catch::Approx(1.0).margin(1e-12).epsilon(0));
  // The cams right after the two generous cams dominate, and equally so.
  REQUIRE(rho[0] == Catch::Approx(0.416991).margin(1e-6).epsilon(0));
  REQUIRE(rho[6] == Catch::Approx(0.416991).margin(1e-6).epsilon(0));
  REQUIRE(std::abs(rho[0] - rho[6]) < 1e-12);
  REQUIRE(rho[0] + rho[6] == Catch::Approx(0.833982).margin(2e-6).epsilon(0));
  for (int i : {1, 2, 3, 4, 5, 7, 8, 9})
    REQUIRE(rho[i] == Catch::Approx(0.020752).margin(1e-6).epsilon(0));
}
