#include "probcsp/propagation.hpp"

#include <cmath>
#include <cstdlib>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "probcsp/format.hpp"
#include "probcsp/probability.hpp"

namespace probcsp {

namespace {

double row_sum(const std::vector<double>& row) {
  double s = 0.0;
  for (double x : row) s += x;
  return s;
}

}  // namespace

propagation_state prob_ac(const constraint_network& net, const support_counts& counts,
                          const removal_profile& initial,
                          std::vector<trace_event>* trace) {
  const int n = net.var_count();
  propagation_state st;
  st.rem = initial.counts();
  st.p.resize(n);
  for (int i = 0; i < n; ++i) st.p[i].assign(net.domain_size(i), 0.0);
  st.e.assign(n, 0.0);
  st.e_net = 0.0;
  st.enqueue_count.assign(n, 0);

  std::deque<int> list;
  std::vector<char> in_list(n, 0);
  auto enqueue = [&](int v) {
    ++st.enqueue_count[v];
    if (st.enqueue_count[v] > net.domain_size(v)) {
      throw std::logic_error("variable " + net.var_name(v) + " entered the worklist " +
                             std::to_string(st.enqueue_count[v]) + " times, above its bound " +
                             std::to_string(net.domain_size(v)));
    }
    if (!in_list[v]) {
      list.push_back(v);
      in_list[v] = 1;
    }
  };
  for (int i = 0; i < n; ++i) {
    if (st.rem[i] > 0) enqueue(i);
  }

  while (!list.empty()) {
    const int i = list.front();
    list.pop_front();
    in_list[i] = 0;
    const int di = net.domain_size(i);
    const int ki = st.rem[i];
    for (const auto& nb : net.neighbors(i)) {
      const int j = nb.var;
      const int to_me = constraint_network::reverse(nb.arc);
      const int dj = net.domain_size(j);
      for (int vj = 0; vj < dj; ++vj) {
        const double tmp = prob_value_constraint(counts.count(to_me, vj), di, ki);
        double& cell = st.p[j][vj];
        if (tmp > cell) {
          st.e_net += tmp - cell;
          st.e[j] += tmp - cell;
          if (trace) trace->push_back({trace_event::kind::update, j, vj, cell, tmp, -1});
          cell = tmp;
        }
      }
      const double exact = row_sum(st.p[j]);
      if (std::abs(exact - st.e[j]) > 1e-9) {
        throw std::logic_error("expectation drift on " + net.var_name(j));
      }
      st.e[j] = exact;
      if (static_cast<int>(std::floor(st.e[j])) > st.rem[j]) {
        st.rem[j] = static_cast<int>(std::floor(st.e[j]));
        if (trace) trace->push_back({trace_event::kind::enqueue, j, -1, 0.0, 0.0, st.rem[j]});
        enqueue(j);
      }
    }
  }

  double total = 0.0;
  for (int i = 0; i < n; ++i) total += st.e[i];
  if (std::abs(total - st.e_net) > 1e-9) {
    throw std::logic_error("network expectation drift");
  }
  st.e_net = total;
  return st;
}

propagation_state replay_trace(const constraint_network& net, const removal_profile& initial,
                               const std::vector<trace_event>& events) {
  const int n = net.var_count();
  propagation_state st;
  st.rem = initial.counts();
  st.p.resize(n);
  for (int i = 0; i < n; ++i) st.p[i].assign(net.domain_size(i), 0.0);
  st.enqueue_count.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (st.rem[i] > 0) st.enqueue_count[i] = 1;
  }
  for (const auto& ev : events) {
    if (ev.ev == trace_event::kind::update) {
      st.p[ev.var][ev.value] = ev.new_p;
    } else {
      const bool raised = ev.rem > st.rem[ev.var];
      st.rem[ev.var] = ev.rem;
      if (raised) ++st.enqueue_count[ev.var];
    }
  }
  st.e.assign(n, 0.0);
  st.e_net = 0.0;
  for (int i = 0; i < n; ++i) {
    st.e[i] = row_sum(st.p[i]);
    st.e_net += st.e[i];
  }
  return st;
}

std::string trace_to_json_lines(const constraint_network& net,
                                const std::vector<trace_event>& events) {
  std::ostringstream out;
  for (const auto& ev : events) {
    if (ev.ev == trace_event::kind::update) {
      out << "{\"ev\": \"update\", \"var\": \"" << json_escape(net.var_name(ev.var))
          << "\", \"value\": " << net.domain(ev.var)[ev.value] << ", \"old\": " << fmt_g9(ev.old_p)
          << ", \"new\": " << fmt_g9(ev.new_p) << "}\n";
    } else {
      out << "{\"ev\": \"enqueue\", \"var\": \"" << json_escape(net.var_name(ev.var))
          << "\", \"rem\": " << ev.rem << "}\n";
    }
  }
  return out.str();
}

std::string state_to_json(const constraint_network& net, const support_counts& counts,
                          const propagation_state& state) {
  const removal_profile final_profile(net, state.rem);
  std::ostringstream out;
  out << "{\n  \"domains\": [\n";
  double e_total = 0.0;
  for (int i = 0; i < net.var_count(); ++i) {
    const double e = expected_domain(net, counts, final_profile, i);
    e_total += e;
    out << "    {\"var\": \"" << json_escape(net.var_name(i)) << "\", \"e\": " << fmt_g9(e)
        << ", \"e_lower\": " << fmt_g9(state.e[i]) << ", \"size\": " << net.domain_size(i) << "}";
    if (i + 1 < net.var_count()) out << ",";
    out << "\n";
  }
  out << "  ],\n  \"network\": {\"e\": " << fmt_g9(e_total)
      << ", \"e_lower\": " << fmt_g9(state.e_net) << "},\n  \"rem\": {";
  for (int i = 0; i < net.var_count(); ++i) {
    if (i) out << ", ";
    out << "\"" << json_escape(net.var_name(i)) << "\": " << state.rem[i];
  }
  out << "},\n  \"enqueue_counts\": {";
  for (int i = 0; i < net.var_count(); ++i) {
    if (i) out << ", ";
    out << "\"" << json_escape(net.var_name(i)) << "\": " << state.enqueue_count[i];
  }
  out << "}\n}\n";
  return out.str();
}

}  // namespace probcsp
