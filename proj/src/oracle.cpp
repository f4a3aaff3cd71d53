#include "probcsp/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace probcsp {

namespace {

// k-subsets of {0..d-1} in colex order, materialized as a removal mask.
class subset_enumerator {
public:
  subset_enumerator(int d, int k) : d_(d), k_(k), idx_(k), mask_(d) { rewind(); }

  void rewind() {
    std::iota(idx_.begin(), idx_.end(), 0);
    sync();
  }

  bool advance() {
    int t = 0;
    while (t < k_ && idx_[t] + 1 == (t + 1 < k_ ? idx_[t + 1] : d_)) ++t;
    if (t == k_) return false;
    ++idx_[t];
    std::iota(idx_.begin(), idx_.begin() + t, 0);
    sync();
    return true;
  }

  const bit_set& removed() const { return mask_; }

private:
  void sync() {
    mask_.reset_all();
    for (int v : idx_) mask_.set(v);
  }

  int d_;
  int k_;
  std::vector<int> idx_;
  bit_set mask_;
};

void check_budget(const bigint& total, const enumeration_budget& budget) {
  if (budget.max_total_subsets <= 0) {
    throw std::invalid_argument("enumeration budget must be positive");
  }
  if (total > bigint(budget.max_total_subsets)) throw budget_error(total, budget.max_total_subsets);
}

// Joint odometer over per-variable subset enumerators. Visits every
// combination of removal subsets exactly once.
class joint_enumerator {
public:
  void add(int var, int d, int k) {
    vars_.push_back(var);
    subs_.emplace_back(d, k);
  }

  bigint total(const constraint_network& net, const removal_profile& profile) const {
    bigint t = 1;
    for (int v : vars_) t *= binomial(net.domain_size(v), profile.k(v));
    return t;
  }

  bool advance() {
    for (std::size_t s = 0; s < subs_.size(); ++s) {
      if (subs_[s].advance()) {
        for (std::size_t r = 0; r < s; ++r) subs_[r].rewind();
        return true;
      }
    }
    return false;
  }

  const std::vector<int>& vars() const { return vars_; }
  const bit_set& removed(std::size_t s) const { return subs_[s].removed(); }

private:
  std::vector<int> vars_;
  std::vector<subset_enumerator> subs_;
};

}  // namespace

bigrat oracle_prob_constraint(const constraint_network& net, int i, int w, int j, int k,
                              const enumeration_budget& budget) {
  const int arc = net.arc_between(i, j);
  if (arc < 0) {
    throw std::invalid_argument("no constraint between " + net.var_name(i) + " and " +
                                net.var_name(j));
  }
  const int d = net.domain_size(j);
  if (k < 0 || k > d) {
    throw std::invalid_argument("removal count " + std::to_string(k) +
                                " violates 0 <= k <= d = " + std::to_string(d));
  }
  const bigint denom = binomial(d, k);
  check_budget(denom, budget);
  const bit_set& pi = net.supports(arc, w);
  long long hits = 0;
  subset_enumerator subs(d, k);
  do {
    if (pi.is_subset_of(subs.removed())) ++hits;
  } while (subs.advance());
  return bigrat(bigint(hits), denom);
}

bigrat oracle_prob_network(const constraint_network& net, const removal_profile& profile, int i,
                           int w, const enumeration_budget& budget) {
  joint_enumerator joint;
  std::vector<const bit_set*> pi;
  for (const auto& nb : net.neighbors(i)) {
    joint.add(nb.var, net.domain_size(nb.var), profile.k(nb.var));
    pi.push_back(&net.supports(nb.arc, w));
  }
  if (pi.empty()) return bigrat(0);
  const bigint denom = joint.total(net, profile);
  check_budget(denom, budget);
  long long hits = 0;
  do {
    for (std::size_t s = 0; s < pi.size(); ++s) {
      if (pi[s]->is_subset_of(joint.removed(s))) {
        ++hits;
        break;
      }
    }
  } while (joint.advance());
  return bigrat(bigint(hits), denom);
}

bigrat oracle_expected_domain(const constraint_network& net, const removal_profile& profile,
                              int i, const enumeration_budget& budget) {
  const auto& neighbors = net.neighbors(i);
  if (neighbors.empty()) return bigrat(0);
  joint_enumerator joint;
  for (const auto& nb : neighbors) joint.add(nb.var, net.domain_size(nb.var), profile.k(nb.var));
  const bigint denom = joint.total(net, profile);
  check_budget(denom, budget);
  const int d = net.domain_size(i);
  long long sum = 0;
  do {
    for (int w = 0; w < d; ++w) {
      for (std::size_t s = 0; s < neighbors.size(); ++s) {
        if (net.supports(neighbors[s].arc, w).is_subset_of(joint.removed(s))) {
          ++sum;
          break;
        }
      }
    }
  } while (joint.advance());
  return bigrat(bigint(sum), denom);
}

bigrat oracle_expected_network(const constraint_network& net, const removal_profile& profile,
                               const enumeration_budget& budget) {
  long long sum = 0;
  for_each_joint_removal(net, profile, budget, [&](const std::vector<bit_set>& live) {
    sum += realized_inconsistent_count(net, live);
  });
  return bigrat(bigint(sum), joint_outcome_count(net, profile));
}

bigint joint_outcome_count(const constraint_network& net, const removal_profile& profile) {
  bigint t = 1;
  for (int v = 0; v < net.var_count(); ++v) t *= binomial(net.domain_size(v), profile.k(v));
  return t;
}

void for_each_joint_removal(const constraint_network& net, const removal_profile& profile,
                            const enumeration_budget& budget,
                            const std::function<void(const std::vector<bit_set>&)>& fn) {
  check_budget(joint_outcome_count(net, profile), budget);
  const int n = net.var_count();
  joint_enumerator joint;
  for (int v = 0; v < n; ++v) joint.add(v, net.domain_size(v), profile.k(v));
  std::vector<bit_set> live;
  live.reserve(n);
  for (int v = 0; v < n; ++v) live.emplace_back(net.domain_size(v));
  do {
    for (int v = 0; v < n; ++v) {
      live[v].set_all();
      live[v].subtract(joint.removed(static_cast<std::size_t>(v)));
    }
    fn(live);
  } while (joint.advance());
}

int realized_inconsistent_count(const constraint_network& net, const std::vector<bit_set>& live) {
  int count = 0;
  for (int i = 0; i < net.var_count(); ++i) {
    const int d = net.domain_size(i);
    for (int w = 0; w < d; ++w) {
      for (const auto& nb : net.neighbors(i)) {
        if (!net.supports(nb.arc, w).intersects(live[nb.var])) {
          ++count;
          break;
        }
      }
    }
  }
  return count;
}

monte_carlo_result monte_carlo_expected_network(const constraint_network& net,
                                                const removal_profile& profile, long long samples,
                                                std::uint64_t seed) {
  if (samples < 100) {
    throw std::invalid_argument("need at least 100 samples, got " + std::to_string(samples));
  }
  rng64 rng(seed);
  const int n = net.var_count();
  std::vector<bit_set> live;
  live.reserve(n);
  for (int v = 0; v < n; ++v) live.emplace_back(net.domain_size(v));
  long long sum = 0;
  long long sumsq = 0;
  for (long long s = 0; s < samples; ++s) {
    for (int v = 0; v < n; ++v) {
      live[v].set_all();
      for (int idx : rng.sample_indices(net.domain_size(v), profile.k(v))) live[v].reset(idx);
    }
    const long long c = realized_inconsistent_count(net, live);
    sum += c;
    sumsq += c * c;
  }
  monte_carlo_result r{};
  r.estimate = static_cast<double>(sum) / static_cast<double>(samples);
  const __int128 var_num =
      static_cast<__int128>(sumsq) * samples - static_cast<__int128>(sum) * sum;
  if (samples > 1 && var_num > 0) {
    const double denom = static_cast<double>(samples) * static_cast<double>(samples) *
                         static_cast<double>(samples - 1);
    r.stderr_ = std::sqrt(static_cast<double>(var_num) / denom);
  } else {
    r.stderr_ = 0.0;
  }
  return r;
}

}  // namespace probcsp
