#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "futurity/equilibrium.hpp"
#include "futurity/errors.hpp"
#include "futurity/machine_spec.hpp"
#include "futurity/payout_distribution.hpp"

namespace futurity {

// Two arms in front of one shared loss counter of length J. Each arm's coup
// payouts are i.i.d. (no cam dependence within an arm), so an arm is a single
// payout law; J consecutive zero-payout coups, regardless of which arms were
// played, pay the J-coin award and reset the counter.
struct TwoArmedSpec {
  PayoutDistribution arm_A;
  PayoutDistribution arm_B;
  int J = 2;

  static TwoArmedSpec make(PayoutDistribution A, PayoutDistribution B, int J) {
    if (J < 2) throw BadJ("award run length must be at least 2, got " + std::to_string(J));
    return TwoArmedSpec{std::move(A), std::move(B), J};
  }
};

// ---- Strategies -----------------------------------------------------------

struct SingleArm {
  char arm = 'A';  // 'A' or 'B'
};

struct Mixture {
  double gamma = 0.5;  // chance of playing A on each coup, i.i.d.
};

struct PatternStrategy {
  std::string word;  // e.g. "AABB"; repeated cyclically over coups
};

struct PointerThreshold {
  int K = 1;  // play A while the loss counter is below K, else B
};

using Strategy = std::variant<SingleArm, Mixture, PatternStrategy, PointerThreshold>;

inline void validate_pattern_word(const std::string& word) {
  if (word.empty()) throw BadPattern("empty pattern");
  bool has_a = false, has_b = false;
  for (char c : word) {
    if (c == 'A')
      has_a = true;
    else if (c == 'B')
      has_b = true;
    else
      throw BadPattern("pattern characters must be A or B");
  }
  if (!has_a || !has_b) throw BadPattern("pattern must play both arms");
}

// ---- Single-arm equilibrium scalars ---------------------------------------

namespace detail {
inline double ipow(double x, long long n) {
  double r = 1.0;
  for (; n > 0; n >>= 1, x *= x)
    if (n & 1) r *= x;
  return r;
}

inline void check_prob(double p, const char* what) {
  if (!(p > 0.0) || !(p < 1.0))
    throw BadDist(std::string(what) + " must lie strictly in (0,1)");
}
}  // namespace detail

// Long-run award frequency of one arm played alone: p q^J / (1 - q^J).
inline double single_arm_award_probability(double p, int J) {
  detail::check_prob(p, "hit probability");
  if (J < 2) throw BadJ("award run length must be at least 2");
  double qJ = detail::ipow(1.0 - p, J);
  return p * qJ / (1.0 - qJ);
}

// Long-run mean payout per coup of one arm played alone, award included.
inline double single_arm_mean(double p, double mu, int J) {
  return mu + J * single_arm_award_probability(p, J);
}

// The base mean that makes a single arm exactly fair (long-run mean 1). It
// always exceeds p, so a fair arm exists with integer payouts.
inline double fair_mu(double p, int J) {
  return 1.0 - J * single_arm_award_probability(p, J);
}

// Integer-payout law with hit chance p and mean mu: zero atom plus at most
// two adjacent positive payouts bracketing mu/p.
inline PayoutDistribution arm_distribution(double p, double mu) {
  detail::check_prob(p, "hit probability");
  double m = mu / p;  // conditional mean payout given a hit
  if (m < 1.0 - 1e-12) throw BadDist("mean too small for integer payouts at this hit rate");
  long long v1 = std::max<long long>(1, static_cast<long long>(std::floor(m)));
  std::vector<PayoutDistribution::Atom> atoms = {{0, 1.0 - p}};
  if (std::abs(m - static_cast<double>(v1)) < 1e-12) {
    atoms.push_back({v1, p});
  } else {
    double w2 = (m - static_cast<double>(v1)) * p;
    atoms.push_back({v1, p - w2});
    atoms.push_back({v1 + 1, w2});
  }
  return PayoutDistribution::from_probs(std::move(atoms));
}

inline TwoArmedSpec fair_two_armed(double pA, double pB, int J) {
  return TwoArmedSpec::make(arm_distribution(pA, fair_mu(pA, J)),
                            arm_distribution(pB, fair_mu(pB, J)), J);
}

// ---- Mixtures --------------------------------------------------------------

// Playing A with chance gamma each coup is a single arm with the mixed law.
inline double mixture_award_probability(const TwoArmedSpec& spec, double gamma) {
  if (!(gamma >= 0.0) || !(gamma <= 1.0)) throw BadDist("gamma must lie in [0,1]");
  double pC = gamma * spec.arm_A.p() + (1.0 - gamma) * spec.arm_B.p();
  detail::check_prob(pC, "mixed hit probability");
  return single_arm_award_probability(pC, spec.J);
}

inline double mixture_mean(const TwoArmedSpec& spec, double gamma) {
  double muC = gamma * spec.arm_A.mu() + (1.0 - gamma) * spec.arm_B.mu();
  return muC + spec.J * mixture_award_probability(spec, gamma);
}

// mu*_C minus the gamma-blend of the single-arm means. Strictly negative
// whenever the arms' hit rates differ and gamma is interior: mixing can only
// help the casino.
inline double mixture_gap(const TwoArmedSpec& spec, double gamma) {
  double blend = gamma * single_arm_mean(spec.arm_A.p(), spec.arm_A.mu(), spec.J) +
                 (1.0 - gamma) * single_arm_mean(spec.arm_B.p(), spec.arm_B.mu(), spec.J);
  return mixture_mean(spec, gamma) - blend;
}

// Supremum over fair-arm pairs of the casino's win rate under the
// half-and-half mixture: (1/2) [ 1 - J 2^{-J} / (1 - 2^{-J}) ].
inline double casino_win_rate_supremum(int J) {
  if (J < 2) throw BadJ("award run length must be at least 2");
  double half_pow = detail::ipow(0.5, J);
  return 0.5 * (1.0 - J * half_pow / (1.0 - half_pow));
}

// ---- Periodic patterns -----------------------------------------------------

namespace detail {

// Award frequency of a periodic arm pattern, by the period-folded double sum.
// With L = |D| and G = prod of one period's miss chances, each award run of
// k*J misses splits into whole periods (powers of G) plus a remainder of
// e = kJ mod L misses adjacent to the terminating hit.
inline double pattern_award_probability_scalar(double pA, double pB, int J,
                                               const std::string& word) {
  validate_pattern_word(word);
  check_prob(pA, "arm A hit probability");
  check_prob(pB, "arm B hit probability");
  if (J < 2) throw BadJ("award run length must be at least 2");
  const int L = static_cast<int>(word.size());
  std::vector<double> p(2 * L), q(2 * L);
  for (int t = 0; t < 2 * L; ++t) {
    p[t] = word[t % L] == 'A' ? pA : pB;
    q[t] = 1.0 - p[t];
  }
  double G = 1.0;
  for (int t = 0; t < L; ++t) G *= q[t];
  const double QJ = ipow(G, J);

  double total = 0.0;
  for (int k = 1; k <= L; ++k) {
    long long kJ = static_cast<long long>(k) * J;
    long long whole = kJ / L;
    int e = static_cast<int>(kJ % L);
    double inner = 0.0;
    for (int j = 1; j <= L; ++j) {
      double run = p[j - 1];
      for (int i = j + 1; i <= j + e; ++i) run *= q[i - 1];
      inner += run;
    }
    total += inner * ipow(G, whole);
  }
  return total / (L * (1.0 - QJ));
}

}  // namespace detail

inline double pattern_award_probability(const TwoArmedSpec& spec, const std::string& word) {
  return detail::pattern_award_probability_scalar(spec.arm_A.p(), spec.arm_B.p(),
                                                  spec.J, word);
}

inline double pattern_award_probability(double pA, double pB, int J,
                                        const std::string& word) {
  return detail::pattern_award_probability_scalar(pA, pB, J, word);
}

// The same quantity through the generalized one-armed machine whose cam
// sequence follows the pattern (cam count |D| * J). The two routes must agree
// to near machine precision; the analysis and the tests lean on that.
inline MachineSpec pattern_machine(const TwoArmedSpec& spec, const std::string& word) {
  validate_pattern_word(word);
  const int L = static_cast<int>(word.size());
  std::vector<PayoutDistribution> dists;
  dists.reserve(static_cast<std::size_t>(L) * spec.J);
  for (int c = 0; c < L * spec.J; ++c)
    dists.push_back(word[c % L] == 'A' ? spec.arm_A : spec.arm_B);
  return MachineSpec::make(spec.J, std::move(dists));
}

inline double pattern_award_probability_via_machine(const TwoArmedSpec& spec,
                                                    const std::string& word) {
  return stationary_closed_form(pattern_machine(spec, word)).p_award;
}

inline double pattern_mean(const TwoArmedSpec& spec, const std::string& word) {
  validate_pattern_word(word);
  const int L = static_cast<int>(word.size());
  long long r = std::count(word.begin(), word.end(), 'A');
  long long s = L - r;
  double mu_base =
      (static_cast<double>(r) * spec.arm_A.mu() + static_cast<double>(s) * spec.arm_B.mu()) / L;
  return mu_base + spec.J * pattern_award_probability(spec, word);
}

// mu*_D minus the per-coup blend of the single-arm means.
inline double pattern_gap(const TwoArmedSpec& spec, const std::string& word) {
  validate_pattern_word(word);
  const int L = static_cast<int>(word.size());
  long long r = std::count(word.begin(), word.end(), 'A');
  long long s = L - r;
  double blend =
      (static_cast<double>(r) * single_arm_mean(spec.arm_A.p(), spec.arm_A.mu(), spec.J) +
       static_cast<double>(s) * single_arm_mean(spec.arm_B.p(), spec.arm_B.mu(), spec.J)) /
      L;
  return pattern_mean(spec, word) - blend;
}

// ---- Pointer-driven strategy -----------------------------------------------

// Play arm A while the shared loss counter is below K, arm B otherwise, with
// both arms made fair. The counter alone is a Markov chain; pi1 is its
// stationary law, and the long-run mean follows from it.
struct PointerStrategyReport {
  int J = 0, K = 0;
  std::vector<double> pi1;
  double mu_star = 0.0;
  double player_edge = 0.0;   // mu_star - 1
  bool parrondo_effect = false;  // casino edge; holds exactly when p_A < p_B
};

inline PointerStrategyReport pointer_strategy_analysis(double pA, double pB, int J, int K) {
  detail::check_prob(pA, "arm A hit probability");
  detail::check_prob(pB, "arm B hit probability");
  if (J < 2) throw BadJ("award run length must be at least 2");
  if (K < 0 || K > J - 1)
    throw BadK("threshold must lie in 0..J-1, got " + std::to_string(K));
  const double qA = 1.0 - pA, qB = 1.0 - pB;

  PointerStrategyReport rep;
  rep.J = J;
  rep.K = K;
  rep.pi1.resize(J);
  double c = 0.0;
  for (int j = 0; j < J; ++j) {
    rep.pi1[j] = j < K ? detail::ipow(qA, j) : detail::ipow(qA, K) * detail::ipow(qB, j - K);
    c += rep.pi1[j];
  }
  for (double& v : rep.pi1) v /= c;

  double on_A = 0.0;
  for (int j = 0; j < K; ++j) on_A += rep.pi1[j];
  double on_B = 1.0 - on_A;
  rep.mu_star = 1.0 - on_A * J * single_arm_award_probability(pA, J) -
                on_B * J * single_arm_award_probability(pB, J) +
                J * rep.pi1[J - 1] * qB;
  rep.player_edge = rep.mu_star - 1.0;
  rep.parrondo_effect = pA < pB;
  return rep;
}

// ---- Conjecture sweep ------------------------------------------------------

// One evaluated grid point of the A^r B^s pattern sweep. The condition flags
// record which of the conjectured sufficient conditions hold:
//   a: J == 2    b: min(r,s) == 1    c: r+s <= J    d: p_A + p_B > 1/3
// divides marks the proven region (r+s divides J). gap >= 0 with p_A != p_B
// would be a counterexample (a violation).
struct SweepRow {
  int J = 0, r = 0, s = 0;
  double p_A = 0.0, p_B = 0.0;
  bool cond_a = false, cond_b = false, cond_c = false, cond_d = false;
  bool divides = false;
  double gap = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  long long violations = 0;
  double min_abs_gap = std::numeric_limits<double>::infinity();
};

enum SweepCondition : unsigned {
  kCondA = 1u,
  kCondB = 2u,
  kCondC = 4u,
  kCondD = 8u,
  kCondAll = 15u,
};

inline SweepReport conjecture_sweep(const std::vector<int>& J_set,
                                    const std::vector<std::pair<int, int>>& rs_set,
                                    const std::vector<double>& p_grid,
                                    unsigned conditions = kCondAll, int threads = 1) {
  struct Point {
    int J, r, s;
    double pA, pB;
  };
  std::vector<Point> points;
  for (int J : J_set)
    for (auto [r, s] : rs_set) {
      if (r < 1 || s < 1) throw BadPattern("pattern exponents must be >= 1");
      for (double pA : p_grid)
        for (double pB : p_grid) {
          if (pA == pB) continue;
          bool a = J == 2;
          bool b = std::min(r, s) == 1;
          bool c = r + s <= J;
          bool d = pA + pB > 1.0 / 3.0;
          bool divides = J % (r + s) == 0;
          bool wanted = ((conditions & kCondA) && a) || ((conditions & kCondB) && b) ||
                        ((conditions & kCondC) && c) || ((conditions & kCondD) && d) ||
                        divides;
          if (wanted) points.push_back({J, r, s, pA, pB});
        }
    }

  SweepReport rep;
  rep.rows.resize(points.size());
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      const Point& pt = points[k];
      std::string word(pt.r, 'A');
      word.append(pt.s, 'B');
      double muA = fair_mu(pt.pA, pt.J), muB = fair_mu(pt.pB, pt.J);
      double blend = (pt.r * single_arm_mean(pt.pA, muA, pt.J) +
                      pt.s * single_arm_mean(pt.pB, muB, pt.J)) /
                     (pt.r + pt.s);
      double mu_base = (pt.r * muA + pt.s * muB) / (pt.r + pt.s);
      double mean = mu_base + pt.J * detail::pattern_award_probability_scalar(
                                         pt.pA, pt.pB, pt.J, word);
      SweepRow row;
      row.J = pt.J;
      row.r = pt.r;
      row.s = pt.s;
      row.p_A = pt.pA;
      row.p_B = pt.pB;
      row.cond_a = pt.J == 2;
      row.cond_b = std::min(pt.r, pt.s) == 1;
      row.cond_c = pt.r + pt.s <= pt.J;
      row.cond_d = pt.pA + pt.pB > 1.0 / 3.0;
      row.divides = pt.J % (pt.r + pt.s) == 0;
      row.gap = mean - blend;
      rep.rows[k] = row;
    }
  };
  int n_threads = std::max(1, threads);
  if (n_threads == 1 || points.size() < 64) {
    work(0, points.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t chunk = (points.size() + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      std::size_t lo = std::min(points.size(), t * chunk);
      std::size_t hi = std::min(points.size(), lo + chunk);
      if (lo < hi) pool.emplace_back(work, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  for (const SweepRow& row : rep.rows) {
    if (row.gap >= 0.0) rep.violations += 1;
    rep.min_abs_gap = std::min(rep.min_abs_gap, std::abs(row.gap));
  }
  return rep;
}

// ---- Expected profit curves (direct calculation) ---------------------------

// Expected cumulative casino profit after each of the first n coups (one coin
// wagered per coup), computed by pushing the loss-counter distribution
// forward one coup at a time. No randomness is involved; the counter starts
// at 0.
inline std::vector<double> expected_casino_profit(const TwoArmedSpec& spec,
                                                  const Strategy& strat, int n) {
  const int J = spec.J;
  const double pA = spec.arm_A.p(), muA = spec.arm_A.mu();
  const double pB = spec.arm_B.p(), muB = spec.arm_B.mu();

  // Effective (p, mu) for the coup at time t with counter j.
  auto params = [&](long long t, int j) -> std::pair<double, double> {
    if (const auto* single = std::get_if<SingleArm>(&strat))
      return single->arm == 'A' ? std::make_pair(pA, muA) : std::make_pair(pB, muB);
    if (const auto* mix = std::get_if<Mixture>(&strat)) {
      double g = mix->gamma;
      return {g * pA + (1.0 - g) * pB, g * muA + (1.0 - g) * muB};
    }
    if (const auto* pat = std::get_if<PatternStrategy>(&strat)) {
      validate_pattern_word(pat->word);
      char arm = pat->word[static_cast<std::size_t>(t % static_cast<long long>(pat->word.size()))];
      return arm == 'A' ? std::make_pair(pA, muA) : std::make_pair(pB, muB);
    }
    const auto& ptr = std::get<PointerThreshold>(strat);
    if (ptr.K < 0 || ptr.K > J - 1) throw BadK("threshold must lie in 0..J-1");
    return j < ptr.K ? std::make_pair(pA, muA) : std::make_pair(pB, muB);
  };

  std::vector<double> v(J, 0.0), w(J, 0.0);
  v[0] = 1.0;
  std::vector<double> profit(n);
  double cum = 0.0;
  for (int t = 0; t < n; ++t) {
    std::fill(w.begin(), w.end(), 0.0);
    double pay = 0.0;
    for (int j = 0; j < J; ++j) {
      if (v[j] == 0.0) continue;
      auto [p, mu] = params(t, j);
      double q = 1.0 - p;
      pay += v[j] * mu;
      w[0] += v[j] * p;
      if (j == J - 1) {
        pay += v[j] * q * J;  // the award coup
        w[0] += v[j] * q;
      } else {
        w[j + 1] += v[j] * q;
      }
    }
    cum += pay;
    profit[t] = static_cast<double>(t + 1) - cum;
    std::swap(v, w);
  }
  return profit;
}

}  // namespace futurity
