#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "futurity/cyclic.hpp"
#include "futurity/equilibrium.hpp"
#include "futurity/errors.hpp"
#include "futurity/machine_spec.hpp"

namespace futurity {

// Central-limit parameters for the total payout process. Coups are grouped
// into segments of length I; var_S0 is the variance of one stationary
// segment sum, cov1 the covariance of adjacent segment sums (successive lags
// decay by a factor Q), and sigma_star_sq = (var_S0 + 2*cov_tail)/I is the
// per-coup variance parameter entering the normal approximation.
struct CltParameters {
  std::vector<double> P;  // P[c]: chance that the coup played at cam c pays the award
  double mu_bar = 0.0;    // mean of one segment sum
  double var_S0 = 0.0;
  double cov1 = 0.0;
  double cov_tail = 0.0;  // sum of covariances against all later segments
  double sigma_bar_sq = 0.0;
  double sigma_star_sq = 0.0;
};

namespace detail {

// Sums a vector pairwise (splitting halves recursively); used for the larger
// double-index aggregations.
inline double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += v[k];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& v) {
  return v.empty() ? 0.0 : pairwise_sum(v.data(), v.size());
}

// Second-moment engine for segment sums of R_n + bonus * 1{award at n}. The
// payout process uses bonus = J; the hit-count and award-count processes
// reuse the identical covariance structure with indicator payloads and
// bonus = 1 (only the per-coup payload moments differ, never the run
// geometry, which depends on the p_i and J alone).
//
// Written against 1-based coup indices i, j in 1..I to mirror the way the
// quantities are usually derived; parameter subscripts are cyclic mod I.
class SegmentMoments {
 public:
  SegmentMoments(std::vector<double> p, std::vector<double> mu,
                 std::vector<double> var, int J, double bonus)
      : p_(std::move(p)),
        mu_(std::move(mu)),
        var_(std::move(var)),
        I_(static_cast<int>(p_.size())),
        J_(J),
        d_(I_ / J),
        w_(bonus) {
    q_.resize(I_);
    Q_ = 1.0;
    for (int c = 0; c < I_; ++c) {
      q_[c] = 1.0 - p_[c];
      Q_ *= q_[c];
    }
    P_.resize(I_);
    for (int c = 0; c < I_; ++c) {
      double sum = 0.0, run = 1.0;
      for (int k = 1; k <= d_; ++k) {
        for (int t = (k - 1) * J_; t < k * J_; ++t) run *= q_[cyc(c - t, I_)];
        sum += run * p_[cyc(c - static_cast<long long>(k) * J_, I_)];
      }
      P_[c] = sum / (1.0 - Q_);
    }
  }

  double Q() const { return Q_; }
  const std::vector<double>& P() const { return P_; }

  double mu_bar() const {
    double s = 0.0;
    for (int c = 0; c < I_; ++c) s += mu_[c] + w_ * P_[c];
    return s;
  }

  double var_segment() const {
    double s = 0.0;
    for (int c = 0; c < I_; ++c)
      s += var_[c] - 2.0 * w_ * mu_[c] * P_[c] + w_ * w_ * P_[c] * (1.0 - P_[c]);
    std::vector<double> cross;
    cross.reserve(static_cast<std::size_t>(I_) * (I_ - 1) / 2);
    for (int i = 1; i <= I_; ++i)
      for (int j = i + 1; j <= I_; ++j) cross.push_back(A(i, j));
    return s + 2.0 * pairwise_sum(cross);
  }

  // Covariance of segment sums m apart, m >= 1; decays geometrically in Q.
  double cov_segments(int m) const { return std::pow(Q_, m - 1) * cov1(); }

  double cov1() const {
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(I_) * I_);
    for (int i = 1; i <= I_; ++i)
      for (int j = 1; j <= I_; ++j) terms.push_back(w_ * B(i, j) + w_ * w_ * C(i, j));
    return pairwise_sum(terms);
  }

  double cov_tail() const { return cov1() / (1.0 - Q_); }

 private:
  // T(j,k) = q_{j-1} q_{j-2} ... q_{j-kJ} * p_{j-kJ-1}: the chance that the
  // coup kJ before coup j was the last hit. Periodicity gives
  // T(j, k+d) = Q * T(j, k), so sum_{k>=1} T(j,k) = (1-Q) * ... = P_{j-1}.
  double T(int j, int k) const {
    double run = 1.0;
    for (int t = 1; t <= k * J_; ++t) run *= q_[cyc(j - t, I_)];
    return run * p_[cyc(j - static_cast<long long>(k) * J_ - 1, I_)];
  }

  // Same-segment cross term, 1 <= i < j <= I. The first bracket covers the
  // payload-at-i vs award-at-j coupling, the second the award-award one. The
  // k-sum "1 <= k < (j-i)/J" keeps the award runs that start strictly after
  // coup i; a run anchored exactly at coup i (possible iff J | j-i)
  // contributes the delta terms, and the tail over k > (j-i)/J folds back to
  // a finite sum via the period relation T(j, k+d) = Q T(j, k).
  double A(int i, int j) const {
    const bool delta = (j - i) % J_ == 0;
    double sum_lt = 0.0;
    for (int k = 1; k <= (j - i - 1) / J_; ++k) sum_lt += T(j, k);

    double bracket_mu = sum_lt - P_[j - 1];
    double bracket_ww = sum_lt * P_[i - 1] - P_[i - 1] * P_[j - 1];
    if (delta) {
      double run = 1.0;  // q_{j-1} ... q_i (indices i..j-1, no wrap needed)
      for (int t = i; t <= j - 1; ++t) run *= q_[t];
      bracket_mu += run;
      int x = (j - i) / J_;
      double tail = 0.0;
      for (int k = x + 1; k <= d_; ++k) tail += T(j, k);
      bracket_ww += tail + Q_ * P_[j - 1];
    }
    return w_ * mu_[i - 1] * bracket_mu + w_ * w_ * bracket_ww;
  }

  // Adjacent-segment payload-vs-award term, i, j in 1..I (coup i in the first
  // segment against the award at coup I + j).
  double B(int i, int j) const {
    const bool delta = cyc(j - i, J_) == 0;
    double sum = 0.0;
    for (int k = 1; k <= (I_ + j - i - 1) / J_; ++k) sum += T(j, k);
    double bracket = sum - P_[j - 1];
    if (delta) {
      double run = 1.0;  // q_{I-1} ... q_i, empty when i == I
      for (int t = i; t <= I_ - 1; ++t) run *= q_[t];
      for (int t = 0; t <= j - 1; ++t) run *= q_[t];  // times q_{j-1} ... q_0
      bracket += run;
    }
    return mu_[i - 1] * bracket;
  }

  // Adjacent-segment award-vs-award term. The infinite tail over
  // k > d + (j-i)/J (present iff J | j-i) reduces to the stated finite forms,
  // which differ according to whether the aligned run starts inside the first
  // segment (j >= i) or the one before it (j < i).
  double C(int i, int j) const {
    const bool delta = cyc(j - i, J_) == 0;
    double sum = 0.0;
    for (int k = 1; k <= (I_ + j - i - 1) / J_; ++k) sum += T(j, k);
    double out = sum * P_[i - 1] - P_[i - 1] * P_[j - 1];
    if (delta) {
      if (j >= i) {
        int x = (j - i) / J_;
        double tail = 0.0;
        for (int k = x + 1; k <= d_; ++k) tail += T(j, k);
        out += Q_ * tail + Q_ * Q_ * P_[j - 1];
      } else {
        int y = d_ + (j - i) / J_;  // exact: J | j-i
        double tail = 0.0;
        for (int k = y + 1; k <= d_; ++k) tail += T(j, k);
        out += tail + Q_ * P_[j - 1];
      }
    }
    return out;
  }

  std::vector<double> p_, mu_, var_, q_;
  int I_, J_, d_;
  double w_;
  double Q_;
  std::vector<double> P_;
};

inline SegmentMoments payout_moments(const MachineSpec& spec) {
  const int I = spec.I();
  std::vector<double> p(I), mu(I), var(I);
  for (int i = 0; i < I; ++i) {
    p[i] = spec.p(i);
    mu[i] = spec.mu(i);
    var[i] = spec.sigma_sq(i);
  }
  return SegmentMoments(std::move(p), std::move(mu), std::move(var), spec.J(),
                        static_cast<double>(spec.J()));
}

inline CltParameters assemble(const SegmentMoments& sm, int I) {
  CltParameters out;
  out.P = sm.P();
  out.mu_bar = sm.mu_bar();
  out.var_S0 = sm.var_segment();
  out.cov1 = sm.cov1();
  out.cov_tail = sm.cov_tail();
  out.sigma_bar_sq = out.var_S0 + 2.0 * out.cov_tail;
  out.sigma_star_sq = out.sigma_bar_sq / I;
  if (!(out.sigma_bar_sq > 0.0))
    throw DegenerateVariance("nonpositive limiting variance " +
                             std::to_string(out.sigma_bar_sq));
  return out;
}

}  // namespace detail

// P[c] for c = 0..I-1: stationary probability that the coup played at cam
// position c ends a loss run of length exactly a multiple of J, i.e. pays the
// award. Satisfies sum_c P[c] = I * p_award.
inline std::vector<double> run_probabilities(const MachineSpec& spec) {
  return detail::payout_moments(spec).P();
}

inline double variance_segment(const MachineSpec& spec) {
  return detail::payout_moments(spec).var_segment();
}

inline double covariance_between_segments(const MachineSpec& spec, int m) {
  if (m < 1) throw BadPeriod("segment lag must be >= 1");
  return detail::payout_moments(spec).cov_segments(m);
}

inline double covariance_tail(const MachineSpec& spec) {
  return detail::payout_moments(spec).cov_tail();
}

inline CltParameters clt_parameters(const MachineSpec& spec) {
  return detail::assemble(detail::payout_moments(spec), spec.I());
}

// Same covariance structure for the count of paying coups: the payload
// becomes the hit indicator (mean p_i, variance p_i q_i) and an award counts
// 1 toward the statistic instead of J coins.
inline CltParameters hit_count_parameters(const MachineSpec& spec) {
  const int I = spec.I();
  std::vector<double> p(I), mu(I), var(I);
  for (int i = 0; i < I; ++i) {
    p[i] = spec.p(i);
    mu[i] = spec.p(i);
    var[i] = spec.p(i) * (1.0 - spec.p(i));
  }
  return detail::assemble(
      detail::SegmentMoments(std::move(p), std::move(mu), std::move(var), spec.J(), 1.0),
      I);
}

// And for the count of award coups alone: zero payload, award counts 1.
inline CltParameters award_count_parameters(const MachineSpec& spec) {
  const int I = spec.I();
  std::vector<double> p(I), mu(I, 0.0), var(I, 0.0);
  for (int i = 0; i < I; ++i) p[i] = spec.p(i);
  return detail::assemble(
      detail::SegmentMoments(std::move(p), std::move(mu), std::move(var), spec.J(), 1.0),
      I);
}

}  // namespace futurity
