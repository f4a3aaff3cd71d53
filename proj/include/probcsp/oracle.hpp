#ifndef PROBCSP_ORACLE_HPP
#define PROBCSP_ORACLE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "probcsp/bitset.hpp"
#include "probcsp/network.hpp"
#include "probcsp/rational.hpp"
#include "probcsp/rng.hpp"

namespace probcsp {

// Cap on the number of joint removal outcomes an exhaustive oracle call may
// visit before refusing.
struct enumeration_budget {
  long long max_total_subsets = 2'000'000;
};

class budget_error : public std::runtime_error {
public:
  budget_error(const bigint& required, long long cap)
      : std::runtime_error("enumeration needs " + required.str() + " subsets, budget is " +
                           std::to_string(cap)) {}
};

// Brute-force ground truth, independent of the closed-form module: every
// quantity below is obtained by literally enumerating removal subsets in
// colex order and counting outcomes, with exact rational results.

// P(value index w of variable i loses all supports on the constraint with j
// when k values are removed from D_j), as (#supersets of the support set)
// over C(|D_j|, k). Requires a constraint between i and j.
bigrat oracle_prob_constraint(const constraint_network& net, int i, int w, int j, int k,
                              const enumeration_budget& budget = {});

// P(w is arc-inconsistent on at least one constraint of i) under the joint
// removal experiment across all neighbors of i.
bigrat oracle_prob_network(const constraint_network& net, const removal_profile& profile, int i,
                           int w, const enumeration_budget& budget = {});

// Mean count of arc-inconsistent values of D_i over the joint neighbor
// experiment.
bigrat oracle_expected_domain(const constraint_network& net, const removal_profile& profile,
                              int i, const enumeration_budget& budget = {});

// Mean total count over the joint experiment across every domain in the
// network (not just one neighborhood), so the linearity identity
// "network = sum of domains" is itself testable.
bigrat oracle_expected_network(const constraint_network& net, const removal_profile& profile,
                               const enumeration_budget& budget = {});

// Number of joint outcomes of the full experiment: prod_v C(|D_v|, k_v).
bigint joint_outcome_count(const constraint_network& net, const removal_profile& profile);

// Visits every joint outcome exactly once (colex odometer order), handing
// the per-variable live masks to fn. The mask vector is reused between
// calls. Throws budget_error when the outcome count exceeds the budget.
void for_each_joint_removal(const constraint_network& net, const removal_profile& profile,
                            const enumeration_budget& budget,
                            const std::function<void(const std::vector<bit_set>&)>& fn);

// Number of values (over the original domains) whose support set on some
// constraint contains no live partner value. Values removed by the event
// still count: the model's tally is per original value, and a value with an
// empty support row counts under every outcome.
int realized_inconsistent_count(const constraint_network& net, const std::vector<bit_set>& live);

struct monte_carlo_result {
  double estimate;
  double stderr_;
};

// Sample mean of the inconsistent-value count over `samples` independent
// joint removals (uniform k_j-subset per variable), with its standard
// error. Deterministic per seed. Requires samples >= 100.
monte_carlo_result monte_carlo_expected_network(const constraint_network& net,
                                                const removal_profile& profile, long long samples,
                                                std::uint64_t seed);

}  // namespace probcsp

#endif
