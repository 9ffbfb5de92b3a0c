#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "futurity/errors.hpp"
#include "futurity/rational.hpp"

namespace futurity {

// One coup's payout law at a single cam position, award excluded. A valid law
// always has a zero-payout atom with probability in (0,1), so the hit
// probability p = P(payout > 0) lies strictly between 0 and 1. Atoms are kept
// sorted by ascending payout; the simulator's inverse-CDF sampling consumes
// them in that order, which makes the random stream layout part of the
// contract.
class PayoutDistribution {
 public:
  struct Atom {
    std::int64_t payout = 0;
    double prob = 0.0;
  };

  // Floating-point construction; duplicate payouts are merged. No exact
  // rational view is attached.
  static PayoutDistribution from_probs(std::vector<Atom> atoms,
                                       double sum_tol = 1e-9) {
    if (atoms.empty()) throw BadDist("no atoms");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.payout < b.payout; });
    std::vector<Atom> merged;
    for (const Atom& a : atoms) {
      if (a.payout < 0) throw BadDist("negative payout");
      if (!(a.prob > 0.0) || a.prob > 1.0) throw BadDist("atom probability outside (0,1]");
      if (!merged.empty() && merged.back().payout == a.payout)
        merged.back().prob += a.prob;
      else
        merged.push_back(a);
    }
    double sum = 0.0;
    for (const Atom& a : merged) sum += a.prob;
    if (std::abs(sum - 1.0) > sum_tol)
      throw BadDist("atom probabilities sum to " + std::to_string(sum));
    PayoutDistribution d;
    d.atoms_ = std::move(merged);
    d.finish_doubles();
    return d;
  }

  // Exact construction from fractions; probabilities must sum to exactly 1.
  static PayoutDistribution from_rationals(
      std::vector<std::pair<std::int64_t, Rational>> atoms) {
    if (atoms.empty()) throw BadDist("no atoms");
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<std::int64_t, Rational>> merged;
    for (auto& a : atoms) {
      if (a.first < 0) throw BadDist("negative payout");
      if (a.second <= Rational(0) || a.second > Rational(1))
        throw BadDist("atom probability outside (0,1]");
      if (!merged.empty() && merged.back().first == a.first)
        merged.back().second += a.second;
      else
        merged.push_back(a);
    }
    Rational sum(0);
    for (const auto& a : merged) sum += a.second;
    if (sum != Rational(1))
      throw BadDist("exact atom probabilities must sum to 1, got " + sum.str());

    PayoutDistribution d;
    Exact e;
    for (const auto& a : merged) {
      d.atoms_.push_back({a.first, a.second.to_double()});
      e.probs.push_back(a.second);
    }
    e.p = Rational(0);
    e.mu = Rational(0);
    Rational m2(0);
    for (const auto& a : merged) {
      Rational v(a.first);
      if (a.first > 0) e.p += a.second;
      e.mu += v * a.second;
      m2 += v * v * a.second;
    }
    e.var = m2 - e.mu * e.mu;
    d.exact_ = std::move(e);
    d.finish_doubles();
    return d;
  }

  // Exact construction from an integer census (payout -> count out of total).
  static PayoutDistribution from_counts(
      const std::map<std::int64_t, std::int64_t>& counts, std::int64_t total) {
    if (total <= 0) throw BadDist("nonpositive census total");
    std::int64_t seen = 0;
    std::vector<std::pair<std::int64_t, Rational>> atoms;
    for (const auto& [payout, count] : counts) {
      if (count < 0) throw BadDist("negative count");
      if (count == 0) continue;
      seen += count;
      atoms.emplace_back(payout, Rational(count, total));
    }
    if (seen != total) throw BadDist("census counts do not sum to the total");
    return from_rationals(std::move(atoms));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  double p() const { return p_; }           // P(payout > 0)
  double mu() const { return mu_; }         // mean payout, in coins
  double sigma_sq() const { return var_; }  // payout variance

  bool has_exact() const { return exact_.has_value(); }
  const std::vector<Rational>& exact_probs() const { return exact_->probs; }
  Rational p_exact() const { return exact_->p; }
  Rational mu_exact() const { return exact_->mu; }
  Rational sigma_sq_exact() const { return exact_->var; }

  friend bool operator==(const PayoutDistribution& a, const PayoutDistribution& b) {
    if (a.has_exact() != b.has_exact()) return false;
    if (a.atoms_.size() != b.atoms_.size()) return false;
    for (std::size_t k = 0; k < a.atoms_.size(); ++k) {
      if (a.atoms_[k].payout != b.atoms_[k].payout) return false;
      if (a.has_exact()) {
        if (a.exact_->probs[k] != b.exact_->probs[k]) return false;
      } else if (a.atoms_[k].prob != b.atoms_[k].prob) {
        return false;
      }
    }
    return true;
  }
  friend bool operator!=(const PayoutDistribution& a, const PayoutDistribution& b) {
    return !(a == b);
  }

 private:
  struct Exact {
    std::vector<Rational> probs;  // parallel to atoms_
    Rational p, mu, var;
  };

  void finish_doubles() {
    if (atoms_.front().payout != 0)
      throw BadDist("a zero-payout atom is required (p must be < 1)");
    p_ = 0.0;
    mu_ = 0.0;
    double m2 = 0.0;
    for (const Atom& a : atoms_) {
      if (a.payout > 0) p_ += a.prob;
      mu_ += static_cast<double>(a.payout) * a.prob;
      m2 += static_cast<double>(a.payout) * static_cast<double>(a.payout) * a.prob;
    }
    var_ = m2 - mu_ * mu_;
    if (!(p_ > 0.0) || !(p_ < 1.0))
      throw BadDist("hit probability must lie strictly in (0,1)");
  }

  std::vector<Atom> atoms_;
  double p_ = 0.0, mu_ = 0.0, var_ = 0.0;
  std::optional<Exact> exact_;
};

}  // namespace futurity
