#ifndef PROBCSP_NETWORK_HPP
#define PROBCSP_NETWORK_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "probcsp/bitset.hpp"

namespace probcsp {

// Raised on malformed or invalid documents; `where` names the offending
// element ("constraints[2].supports[0]", "variable 'x3'", ...).
class document_error : public std::runtime_error {
public:
  document_error(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

private:
  std::string where_;
};

// Binary constraint network over finite integer domains. Constraints are
// extensional support relations, at most one per unordered variable pair.
// Domain values are arbitrary integers; internally every domain maps onto
// dense 0-based value indices and supports are stored as per-value bitsets
// over the partner's index space.
//
// Immutable once loaded; safe to share across concurrent readers.
class constraint_network {
public:
  // Builder interface. Both calls validate their inputs and throw
  // document_error on violations (duplicate names/pairs, self loops, empty
  // domains, values absent from a domain).
  int add_variable(std::string name, std::vector<int> domain);
  int add_constraint(int a, int b, const std::vector<std::pair<int, int>>& supports);

  int var_count() const { return static_cast<int>(vars_.size()); }
  const std::string& var_name(int v) const { return vars_[v].name; }
  int var_index(std::string_view name) const;  // -1 when unknown
  const std::vector<int>& domain(int v) const { return vars_[v].values; }
  int domain_size(int v) const { return static_cast<int>(vars_[v].values.size()); }
  int value_index(int v, int value) const;  // -1 when absent

  // Constraint c on scope (a, b) owns two directed arcs: arc 2c holds the
  // supports of a's values inside b's domain, arc 2c+1 the reverse.
  int constraint_count() const { return static_cast<int>(cons_.size()); }
  std::pair<int, int> scope(int c) const { return {cons_[c].a, cons_[c].b}; }
  std::uint64_t tuple_count(int c) const { return cons_[c].tuples; }
  int arc_count() const { return 2 * constraint_count(); }
  int arc_from(int arc) const { return arc & 1 ? cons_[arc >> 1].b : cons_[arc >> 1].a; }
  int arc_to(int arc) const { return arc & 1 ? cons_[arc >> 1].a : cons_[arc >> 1].b; }
  static int reverse(int arc) { return arc ^ 1; }

  // supports of from-side value index w, as a mask over the to-side indices
  const bit_set& supports(int arc, int w) const { return arc_rows_[arc][w]; }

  struct neighbor {
    int var;  // the other endpoint
    int arc;  // directed from the owning variable towards var
  };
  // in constraint insertion order; iteration order is part of the
  // deterministic-output contract
  const std::vector<neighbor>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  // arc directed i -> j, or -1 when the pair is unconstrained
  int arc_between(int i, int j) const;

private:
  struct variable_rec {
    std::string name;
    std::vector<int> values;
    std::unordered_map<int, int> index_of;
  };
  struct constraint_rec {
    int a;
    int b;
    std::uint64_t tuples;
  };

  std::vector<variable_rec> vars_;
  std::vector<constraint_rec> cons_;
  std::vector<std::vector<bit_set>> arc_rows_;  // [arc][from-side value index]
  std::vector<std::vector<neighbor>> adj_;
  std::unordered_map<std::string, int> name_index_;
};

// |pi_to(S^w)| for every directed arc and from-side value, computed once at
// load time. Immutable alongside the network.
class support_counts {
public:
  static support_counts compute(const constraint_network& net);

  int count(int arc, int w) const { return counts_[arc][w]; }

  // by variable pair; requires a constraint between i and j
  int count(const constraint_network& net, int i, int j, int value) const;

private:
  std::vector<std::vector<int>> counts_;
};

// Hypothesized removal counts, one per variable (default 0). Removals are
// hypotheses about domains, never edits to them.
class removal_profile {
public:
  static removal_profile zeros(const constraint_network& net);
  // validates 0 <= k(i) <= |D_i|
  removal_profile(const constraint_network& net, std::vector<int> k);

  int k(int v) const { return k_[v]; }
  const std::vector<int>& counts() const { return k_; }

private:
  explicit removal_profile(std::vector<int> k) : k_(std::move(k)) {}
  std::vector<int> k_;
};

// Document parsing. Network documents:
//   {"variables":[{"name":"x1","domain":[1,2,3]},...],
//    "constraints":[{"scope":["x1","x2"],"supports":[[1,2],[3,3]]},...]}
// Removal profiles: {"removals":{"x2":2}} with absent variables meaning 0.
// Parse failures and invariant violations raise document_error.
constraint_network parse_network(const std::string& json_text);
removal_profile parse_profile(const constraint_network& net, const std::string& json_text);
std::string network_to_json(const constraint_network& net);

// Classical arc-consistency fixpoint (coarse-grained, arc worklist). Works
// on a copy of the domains; the network itself is never modified.
struct ac3_result {
  std::vector<std::vector<int>> domains;  // surviving values, domain order
  bool empty_domain = false;
};
ac3_result ac3(const constraint_network& net);
ac3_result ac3(const constraint_network& net, const std::vector<bit_set>& live);

}  // namespace probcsp

#endif
