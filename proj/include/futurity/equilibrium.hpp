#pragma once

#include <cassert>
#include <cmath>
#include <vector>

#include "futurity/cyclic.hpp"
#include "futurity/errors.hpp"
#include "futurity/machine_spec.hpp"

namespace futurity {

// Row-stochastic transition matrix of the driving chain on states (cam,
// pointer), flattened as cam*J + pointer. From (i,j) the chain moves to cam
// i+1 mod I; the pointer resets to 0 on a hit, advances on a miss, and a miss
// at pointer J-1 resets it to 0 (that coup pays the award).
struct TransitionMatrix {
  int I = 0, J = 0;
  std::vector<double> a;  // n x n row-major, n = I*J

  int n() const { return I * J; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r) * n() + c]; }
  double& at(int r, int c) { return a[static_cast<std::size_t>(r) * n() + c]; }
  static int state(int cam, int pointer, int J) { return cam * J + pointer; }
};

inline TransitionMatrix transition_matrix(const MachineSpec& spec) {
  const int I = spec.I(), J = spec.J();
  TransitionMatrix tm;
  tm.I = I;
  tm.J = J;
  tm.a.assign(static_cast<std::size_t>(I * J) * (I * J), 0.0);
  for (int i = 0; i < I; ++i) {
    int next = cyc(i + 1, I);
    for (int j = 0; j < J; ++j) {
      int from = TransitionMatrix::state(i, j, J);
      if (j == J - 1) {
        // Hit or award, the pointer comes back to 0 either way.
        tm.at(from, TransitionMatrix::state(next, 0, J)) = 1.0;
      } else {
        tm.at(from, TransitionMatrix::state(next, 0, J)) = spec.p(i);
        tm.at(from, TransitionMatrix::state(next, j + 1, J)) = spec.q(i);
      }
    }
  }
  return tm;
}

// Stationary distribution of the driving chain plus the equilibrium scalars
// derived from it.
struct StationaryLaw {
  int I = 0, J = 0;
  std::vector<double> pi;  // I x J row-major
  double Q = 0.0;          // product of all per-position miss probabilities
  double p_award = 0.0;    // long-run frequency of award coups
  double mu_star = 0.0;    // long-run mean payout per coup, award included
  double p_star = 0.0;     // long-run frequency of paying coups

  double at(int cam, int pointer) const {
    return pi[static_cast<std::size_t>(cam) * J + pointer];
  }
};

inline double award_probability(const MachineSpec& spec, const StationaryLaw& law);
inline double mean_payout(const MachineSpec& spec, const StationaryLaw& law);
inline double hit_frequency(const MachineSpec& spec, const StationaryLaw& law);

// Closed-form stationary law. With d = I/J,
//   pi(i,0) = [ sum_{m=0}^{d-1} q_{i-1} ... q_{i-mJ} * p_{i-mJ-1} ] / (I (1-Q))
//   pi(i,j) = q_{i-1} pi(i-1, j-1)              for j = 1..J-1,
// all subscripts cyclic mod I. Each cam row sums to 1/I.
inline StationaryLaw stationary_closed_form(const MachineSpec& spec) {
  const int I = spec.I(), J = spec.J(), d = spec.d();
  StationaryLaw law;
  law.I = I;
  law.J = J;
  law.pi.assign(static_cast<std::size_t>(I) * J, 0.0);

  double Q = 1.0;
  for (int i = 0; i < I; ++i) Q *= spec.q(i);
  law.Q = Q;

  const double denom = I * (1.0 - Q);
  for (int i = 0; i < I; ++i) {
    double sum = 0.0, run = 1.0;  // run = q_{i-1} ... q_{i-mJ} so far
    for (int m = 0; m < d; ++m) {
      sum += run * spec.p(cyc(i - static_cast<long long>(m) * J - 1, I));
      for (int t = m * J + 1; t <= (m + 1) * J; ++t) run *= spec.q(cyc(i - t, I));
    }
    law.pi[static_cast<std::size_t>(i) * J] = sum / denom;
  }
  for (int j = 1; j < J; ++j)
    for (int i = 0; i < I; ++i)
      law.pi[static_cast<std::size_t>(i) * J + j] =
          spec.q(cyc(i - 1, I)) * law.at(cyc(i - 1, I), j - 1);

  law.p_award = award_probability(spec, law);
  law.mu_star = mean_payout(spec, law);
  law.p_star = hit_frequency(spec, law);
  return law;
}

// Long-run frequency of award coups: sum_i pi(i, J-1) q_i.
inline double award_probability(const MachineSpec& spec, const StationaryLaw& law) {
  const int I = spec.I(), J = spec.J();
  double p_award = 0.0;
  for (int i = 0; i < I; ++i) p_award += law.at(i, J - 1) * spec.q(i);
#ifndef NDEBUG
  if (spec.d() == 1) {
    // Single-period machines collapse to (mean hit rate) * Q / (1-Q).
    double pbar = 0.0;
    for (int i = 0; i < I; ++i) pbar += spec.p(i);
    pbar /= J;
    assert(std::abs(p_award - pbar * law.Q / (1.0 - law.Q)) < 1e-12);
  }
#endif
  return p_award;
}

// Long-run mean payout per coup, award included: I^{-1} sum_i mu_i + J p_award.
inline double mean_payout(const MachineSpec& spec, const StationaryLaw& law) {
  const int I = spec.I();
  double mu = 0.0;
  for (int i = 0; i < I; ++i) mu += spec.mu(i);
  return mu / I + spec.J() * award_probability(spec, law);
}

// Long-run frequency of coups that pay anything: I^{-1} sum_i p_i + p_award.
inline double hit_frequency(const MachineSpec& spec, const StationaryLaw& law) {
  const int I = spec.I();
  double p = 0.0;
  for (int i = 0; i < I; ++i) p += spec.p(i);
  return p / I + award_probability(spec, law);
}

// Distribution of the cam position immediately after a paying coup (the
// pointer is 0 there by construction):
//   rho(i) = [ I^{-1} p_{i-1} + pi(i-1, J-1) q_{i-1} ] / p_star.
inline std::vector<double> post_payout_distribution(const MachineSpec& spec,
                                                    const StationaryLaw& law) {
  const int I = spec.I(), J = spec.J();
  const double denom = hit_frequency(spec, law);
  std::vector<double> rho(I, 0.0);
  for (int i = 0; i < I; ++i) {
    int prev = cyc(i - 1, I);
    rho[i] = (spec.p(prev) / I + law.at(prev, J - 1) * spec.q(prev)) / denom;
  }
  return rho;
}

// Independent route to the stationary vector: solve pi P = pi, sum(pi) = 1 by
// Gaussian elimination with partial pivoting on (P^T - I) with the first row
// replaced by the normalization. Throws SingularSystem when the pivot
// collapses (e.g. a reducible or identity-like chain). Extended precision
// keeps the result usable inside cancellation-heavy downstream checks
// (second moments of enumerated segments), where plain double residue of
// ~1e-12 per entry can blow up past 1e-9.
inline std::vector<double> stationary_oracle(const TransitionMatrix& tm) {
  const int n = tm.n();
  std::vector<long double> A(static_cast<std::size_t>(n) * n, 0.0L);
  std::vector<long double> b(n, 0.0L);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      A[static_cast<std::size_t>(r) * n + c] =
          static_cast<long double>(tm.at(c, r)) - (r == c ? 1.0L : 0.0L);
  for (int c = 0; c < n; ++c) A[c] = 1.0L;
  b[0] = 1.0L;

  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(A[static_cast<std::size_t>(r) * n + col]) >
          std::abs(A[static_cast<std::size_t>(piv) * n + col]))
        piv = r;
    long double head = A[static_cast<std::size_t>(piv) * n + col];
    if (std::abs(head) < 1e-12L)
      throw SingularSystem("stationary system has no unique solution");
    if (piv != col) {
      for (int c = col; c < n; ++c)
        std::swap(A[static_cast<std::size_t>(piv) * n + c],
                  A[static_cast<std::size_t>(col) * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (int r = col + 1; r < n; ++r) {
      long double f = A[static_cast<std::size_t>(r) * n + col] / head;
      if (f == 0.0L) continue;
      for (int c = col; c < n; ++c)
        A[static_cast<std::size_t>(r) * n + c] -= f * A[static_cast<std::size_t>(col) * n + c];
      b[r] -= f * b[col];
    }
  }
  std::vector<long double> x(n, 0.0L);
  for (int r = n - 1; r >= 0; --r) {
    long double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= A[static_cast<std::size_t>(r) * n + c] * x[c];
    x[r] = s / A[static_cast<std::size_t>(r) * n + r];
  }
  return std::vector<double>(x.begin(), x.end());
}

}  // namespace futurity
