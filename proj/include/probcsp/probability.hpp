#ifndef PROBCSP_PROBABILITY_HPP
#define PROBCSP_PROBABILITY_HPP

#include <string>
#include <utility>
#include <vector>

#include "probcsp/network.hpp"
#include "probcsp/rational.hpp"

namespace probcsp {

// Probability that a value with `support_count` supports in a partner domain
// of size `partner_domain_size` becomes arc-inconsistent on that constraint
// when k uniformly chosen values are removed from the partner domain:
//
//   support_count == 0          -> 1
//   k >= support_count > 0      -> prod_{l=1..p} (k - p + l) / (d - p + l)
//   support_count > k >= 0      -> 0
//
// The product accumulates left to right in doubles; every factor is in [0,1],
// so no intermediate can overflow. Throws std::invalid_argument when an
// argument leaves its bounds.
double prob_value_constraint(int support_count, int partner_domain_size, int k);

// Same quantity on the exact big-integer route C(d-p, k-p) / C(d, k).
// Verification-only: the floating product form above is the production path.
bigrat prob_value_constraint_exact(int support_count, int partner_domain_size, int k);

// Probability that value `value` of variable `var` is arc-inconsistent on at
// least one of its constraints, given the per-neighbor removal hypotheses:
// 1 - prod_j (1 - p_j). An empty neighborhood yields 0. The result is clamped
// from below by max_j p_j, which the exact value dominates; this keeps the
// max-bound ordering intact under floating-point rounding.
double prob_value_network(const constraint_network& net, const support_counts& counts,
                          const removal_profile& profile, int var, int value);

// Expected number of arc-inconsistent values in var's domain (sum of the
// per-value network probabilities, domain order).
double expected_domain(const constraint_network& net, const support_counts& counts,
                       const removal_profile& profile, int var);

// Network-wide expectation: sum of expected_domain over all variables.
double expected_network(const constraint_network& net, const support_counts& counts,
                        const removal_profile& profile);

// Max-based lower bound on prob_value_network; 0 for isolated variables.
double bound_value(const constraint_network& net, const support_counts& counts,
                   const removal_profile& profile, int var, int value);

struct domain_bounds {
  double lower;  // sum of per-value max bounds
  int upper;     // |D_i|
};
domain_bounds bound_domain(const constraint_network& net, const support_counts& counts,
                           const removal_profile& profile, int var);

// Sum of the per-domain lower bounds.
double bound_network(const constraint_network& net, const support_counts& counts,
                     const removal_profile& profile);

// Full per-value / per-domain / network summary. Assembled sequentially in
// variable order with per-variable value order, so repeated runs are
// bit-identical.
struct probability_report {
  struct value_entry {
    int var;
    int value;
    double p_network;
    double p_lower;
    std::vector<std::pair<int, double>> per_constraint;  // (neighbor var, p), adjacency order
  };
  struct domain_entry {
    int var;
    double e;
    double e_lower;
    int size;
  };
  std::vector<value_entry> values;
  std::vector<domain_entry> domains;
  double e_network = 0.0;
  double e_network_lower = 0.0;
};

probability_report make_report(const constraint_network& net, const support_counts& counts,
                               const removal_profile& profile);

// Report document; probabilities carry 9 significant digits.
std::string report_to_json(const constraint_network& net, const probability_report& report);

}  // namespace probcsp

#endif
