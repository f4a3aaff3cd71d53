#include "probcsp/probability.hpp"

#include <sstream>
#include <stdexcept>

#include "probcsp/format.hpp"

namespace probcsp {

namespace {

void check_prob_args(int support_count, int partner_domain_size, int k) {
  if (partner_domain_size < 0) {
    throw std::invalid_argument("partner domain size " + std::to_string(partner_domain_size) +
                                " violates 0 <= d");
  }
  if (support_count < 0 || support_count > partner_domain_size) {
    throw std::invalid_argument("support count " + std::to_string(support_count) +
                                " violates 0 <= p <= d = " + std::to_string(partner_domain_size));
  }
  if (k < 0 || k > partner_domain_size) {
    throw std::invalid_argument("removal count " + std::to_string(k) +
                                " violates 0 <= k <= d = " + std::to_string(partner_domain_size));
  }
}

}  // namespace

double prob_value_constraint(int support_count, int partner_domain_size, int k) {
  check_prob_args(support_count, partner_domain_size, k);
  const int p = support_count;
  const int d = partner_domain_size;
  if (p == 0) return 1.0;
  if (p > k) return 0.0;
  double r = 1.0;
  for (int l = 1; l <= p; ++l) {
    r *= static_cast<double>(k - p + l) / static_cast<double>(d - p + l);
  }
  return r;
}

bigrat prob_value_constraint_exact(int support_count, int partner_domain_size, int k) {
  check_prob_args(support_count, partner_domain_size, k);
  const int p = support_count;
  const int d = partner_domain_size;
  if (p == 0) return bigrat(1);
  if (p > k) return bigrat(0);
  return bigrat(binomial(d - p, k - p), binomial(d, k));
}

double prob_value_network(const constraint_network& net, const support_counts& counts,
                          const removal_profile& profile, int var, int value) {
  double survive = 1.0;
  double best = 0.0;
  for (const auto& nb : net.neighbors(var)) {
    const double q = prob_value_constraint(counts.count(nb.arc, value),
                                           net.domain_size(nb.var), profile.k(nb.var));
    survive *= 1.0 - q;
    if (q > best) best = q;
  }
  double p = 1.0 - survive;
  if (p < best) p = best;
  return p;
}

double expected_domain(const constraint_network& net, const support_counts& counts,
                       const removal_profile& profile, int var) {
  double e = 0.0;
  const int d = net.domain_size(var);
  for (int w = 0; w < d; ++w) {
    e += prob_value_network(net, counts, profile, var, w);
  }
  return e;
}

double expected_network(const constraint_network& net, const support_counts& counts,
                        const removal_profile& profile) {
  double e = 0.0;
  for (int i = 0; i < net.var_count(); ++i) {
    e += expected_domain(net, counts, profile, i);
  }
  return e;
}

double bound_value(const constraint_network& net, const support_counts& counts,
                   const removal_profile& profile, int var, int value) {
  double best = 0.0;
  for (const auto& nb : net.neighbors(var)) {
    const double q = prob_value_constraint(counts.count(nb.arc, value),
                                           net.domain_size(nb.var), profile.k(nb.var));
    if (q > best) best = q;
  }
  return best;
}

domain_bounds bound_domain(const constraint_network& net, const support_counts& counts,
                           const removal_profile& profile, int var) {
  domain_bounds b{0.0, net.domain_size(var)};
  for (int w = 0; w < b.upper; ++w) {
    b.lower += bound_value(net, counts, profile, var, w);
  }
  return b;
}

double bound_network(const constraint_network& net, const support_counts& counts,
                     const removal_profile& profile) {
  double e = 0.0;
  for (int i = 0; i < net.var_count(); ++i) {
    e += bound_domain(net, counts, profile, i).lower;
  }
  return e;
}

probability_report make_report(const constraint_network& net, const support_counts& counts,
                               const removal_profile& profile) {
  probability_report rep;
  for (int i = 0; i < net.var_count(); ++i) {
    const int d = net.domain_size(i);
    probability_report::domain_entry de{i, 0.0, 0.0, d};
    for (int w = 0; w < d; ++w) {
      probability_report::value_entry ve;
      ve.var = i;
      ve.value = w;
      double survive = 1.0;
      double best = 0.0;
      for (const auto& nb : net.neighbors(i)) {
        const double q = prob_value_constraint(counts.count(nb.arc, w),
                                               net.domain_size(nb.var), profile.k(nb.var));
        ve.per_constraint.emplace_back(nb.var, q);
        survive *= 1.0 - q;
        if (q > best) best = q;
      }
      double p = 1.0 - survive;
      if (p < best) p = best;
      ve.p_network = p;
      ve.p_lower = best;
      de.e += p;
      de.e_lower += best;
      rep.values.push_back(std::move(ve));
    }
    rep.e_network += de.e;
    rep.e_network_lower += de.e_lower;
    rep.domains.push_back(de);
  }
  return rep;
}

std::string report_to_json(const constraint_network& net, const probability_report& report) {
  std::ostringstream out;
  out << "{\n  \"values\": [\n";
  for (std::size_t idx = 0; idx < report.values.size(); ++idx) {
    const auto& ve = report.values[idx];
    out << "    {\"var\": \"" << json_escape(net.var_name(ve.var)) << "\", \"value\": "
        << net.domain(ve.var)[ve.value] << ", \"p_network\": " << fmt_g9(ve.p_network)
        << ", \"p_lower\": " << fmt_g9(ve.p_lower) << ", \"per_constraint\": {";
    for (std::size_t c = 0; c < ve.per_constraint.size(); ++c) {
      if (c) out << ", ";
      out << "\"" << json_escape(net.var_name(ve.per_constraint[c].first))
          << "\": " << fmt_g9(ve.per_constraint[c].second);
    }
    out << "}}";
    if (idx + 1 < report.values.size()) out << ",";
    out << "\n";
  }
  out << "  ],\n  \"domains\": [\n";
  for (std::size_t idx = 0; idx < report.domains.size(); ++idx) {
    const auto& de = report.domains[idx];
    out << "    {\"var\": \"" << json_escape(net.var_name(de.var)) << "\", \"e\": "
        << fmt_g9(de.e) << ", \"e_lower\": " << fmt_g9(de.e_lower)
        << ", \"size\": " << de.size << "}";
    if (idx + 1 < report.domains.size()) out << ",";
    out << "\n";
  }
  out << "  ],\n  \"network\": {\"e\": " << fmt_g9(report.e_network)
      << ", \"e_lower\": " << fmt_g9(report.e_network_lower) << "}\n}\n";
  return out.str();
}

}  // namespace probcsp
