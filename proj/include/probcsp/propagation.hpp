#ifndef PROBCSP_PROPAGATION_HPP
#define PROBCSP_PROPAGATION_HPP

#include <string>
#include <vector>

#include "probcsp/network.hpp"

namespace probcsp {

// Final state of a ProbAC run. rem holds the (possibly raised) removal
// hypotheses, p the per-value probability lower bounds, e the per-domain
// sums of p, e_net their total. enqueue_count instruments the termination
// bound: it counts worklist additions (initialization plus one per
// hypothesis raise; an addition while already queued is deduplicated but
// still counted) and may never exceed |D_i|, since each raise strictly
// increases an integer hypothesis capped by |D_i|.
struct propagation_state {
  std::vector<int> rem;
  std::vector<std::vector<double>> p;
  std::vector<double> e;
  double e_net = 0.0;
  std::vector<int> enqueue_count;
};

// One log record: either a p-cell update or a worklist insertion from the
// main loop (initialization enqueues are not logged). Replaying a log on top
// of the initial profile reproduces the final state exactly.
struct trace_event {
  enum class kind { update, enqueue };
  kind ev;
  int var;
  int value = -1;      // update only
  double old_p = 0.0;  // update only
  double new_p = 0.0;  // update only
  int rem = -1;        // enqueue only: the raised hypothesis
};

// Runs ProbAC to its fixpoint. The worklist is FIFO with membership dedup;
// processing x_i scans each neighbor row with tmp computed from |D_i| and the
// current rem(i); p-cells only ever increase; a neighbor is (re)enqueued when
// the floor of its domain expectation strictly exceeds its hypothesis.
// The network is read-only; domains are never shrunk.
//
// Throws std::logic_error if a variable enters the worklist more than |D_i|
// times (impossible if the enqueue rule is implemented faithfully) or if the
// incrementally maintained expectations drift from the p-row sums by more
// than 1e-9.
propagation_state prob_ac(const constraint_network& net, const support_counts& counts,
                          const removal_profile& initial,
                          std::vector<trace_event>* trace = nullptr);

// Reconstructs the final state from the initial profile and an event log.
propagation_state replay_trace(const constraint_network& net, const removal_profile& initial,
                               const std::vector<trace_event>& events);

// JSON-lines rendering of a trace, one event per line.
std::string trace_to_json_lines(const constraint_network& net,
                                const std::vector<trace_event>& events);

// Final-state document: per-domain expectation (recomputed under the final
// rem table) next to the propagated lower bound, network totals, and the rem
// and enqueue-count tables.
std::string state_to_json(const constraint_network& net, const support_counts& counts,
                          const propagation_state& state);

}  // namespace probcsp

#endif
