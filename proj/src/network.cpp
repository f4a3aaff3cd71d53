#include "probcsp/network.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include <json.hpp>

#include "probcsp/format.hpp"

namespace probcsp {

int constraint_network::add_variable(std::string name, std::vector<int> domain) {
  std::string where = "variable '" + name + "'";
  if (name.empty()) throw document_error("variables", "empty variable name");
  if (name_index_.count(name)) throw document_error(where, "duplicate variable name");
  if (domain.empty()) throw document_error(where, "empty domain");

  variable_rec rec;
  rec.name = std::move(name);
  for (int i = 0; i < static_cast<int>(domain.size()); ++i) {
    if (!rec.index_of.emplace(domain[i], i).second)
      throw document_error(where, "duplicate domain value " + std::to_string(domain[i]));
  }
  rec.values = std::move(domain);

  int id = var_count();
  name_index_.emplace(rec.name, id);
  vars_.push_back(std::move(rec));
  adj_.emplace_back();
  return id;
}

int constraint_network::add_constraint(int a, int b,
                                       const std::vector<std::pair<int, int>>& supports) {
  if (a < 0 || a >= var_count() || b < 0 || b >= var_count())
    throw document_error("constraints", "variable index out of range");
  std::string where = "constraint (" + vars_[a].name + "," + vars_[b].name + ")";
  if (a == b) throw document_error(where, "self-loop: both endpoints are the same variable");
  if (arc_between(a, b) >= 0) throw document_error(where, "duplicate constraint on this pair");

  int da = domain_size(a), db = domain_size(b);
  std::vector<bit_set> fwd(da, bit_set(db));
  std::vector<bit_set> bwd(db, bit_set(da));
  std::set<std::pair<int, int>> seen;
  for (const auto& [va, vb] : supports) {
    int ia = value_index(a, va);
    if (ia < 0)
      throw document_error(where, "support tuple references value " + std::to_string(va) +
                                      " absent from domain of '" + vars_[a].name + "'");
    int ib = value_index(b, vb);
    if (ib < 0)
      throw document_error(where, "support tuple references value " + std::to_string(vb) +
                                      " absent from domain of '" + vars_[b].name + "'");
    if (!seen.emplace(ia, ib).second)
      throw document_error(where, "duplicate support tuple (" + std::to_string(va) + "," +
                                      std::to_string(vb) + ")");
    fwd[ia].set(ib);
    bwd[ib].set(ia);
  }

  int c = constraint_count();
  cons_.push_back({a, b, static_cast<std::uint64_t>(supports.size())});
  arc_rows_.push_back(std::move(fwd));
  arc_rows_.push_back(std::move(bwd));
  adj_[a].push_back({b, 2 * c});
  adj_[b].push_back({a, 2 * c + 1});
  return c;
}

int constraint_network::var_index(std::string_view name) const {
  auto it = name_index_.find(std::string(name));
  return it == name_index_.end() ? -1 : it->second;
}

int constraint_network::value_index(int v, int value) const {
  const auto& m = vars_[v].index_of;
  auto it = m.find(value);
  return it == m.end() ? -1 : it->second;
}

int constraint_network::arc_between(int i, int j) const {
  for (const auto& nb : adj_[i])
    if (nb.var == j) return nb.arc;
  return -1;
}

support_counts support_counts::compute(const constraint_network& net) {
  support_counts sc;
  sc.counts_.resize(net.arc_count());
  for (int arc = 0; arc < net.arc_count(); ++arc) {
    int d = net.domain_size(net.arc_from(arc));
    sc.counts_[arc].resize(d);
    for (int w = 0; w < d; ++w) sc.counts_[arc][w] = net.supports(arc, w).count();
  }
  return sc;
}

int support_counts::count(const constraint_network& net, int i, int j, int value) const {
  int arc = net.arc_between(i, j);
  if (arc < 0)
    throw std::invalid_argument("no constraint between '" + net.var_name(i) + "' and '" +
                                net.var_name(j) + "'");
  int w = net.value_index(i, value);
  if (w < 0)
    throw std::invalid_argument("value " + std::to_string(value) + " not in domain of '" +
                                net.var_name(i) + "'");
  return counts_[arc][w];
}

removal_profile removal_profile::zeros(const constraint_network& net) {
  return removal_profile(std::vector<int>(net.var_count(), 0));
}

removal_profile::removal_profile(const constraint_network& net, std::vector<int> k)
    : k_(std::move(k)) {
  if (static_cast<int>(k_.size()) != net.var_count())
    throw std::invalid_argument("removal profile has " + std::to_string(k_.size()) +
                                " entries for " + std::to_string(net.var_count()) + " variables");
  for (int v = 0; v < net.var_count(); ++v) {
    if (k_[v] < 0)
      throw std::invalid_argument("removal count for '" + net.var_name(v) + "' is " +
                                  std::to_string(k_[v]) + "; violates 0 <= k");
    if (k_[v] > net.domain_size(v))
      throw std::invalid_argument("removal count for '" + net.var_name(v) + "' is " +
                                  std::to_string(k_[v]) + "; violates k <= |D| = " +
                                  std::to_string(net.domain_size(v)));
  }
}

namespace {

using nlohmann::json;

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw document_error("document", e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw document_error(where, "expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw document_error(where, std::string("missing key '") + key + "'");
  return *it;
}

}  // namespace

constraint_network parse_network(const std::string& json_text) {
  json doc = parse_document(json_text);
  constraint_network net;

  const json& vars = require(doc, "variables", "document");
  if (!vars.is_array()) throw document_error("variables", "expected an array");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::string where = "variables[" + std::to_string(i) + "]";
    const json& v = vars[i];
    const json& name = require(v, "name", where);
    if (!name.is_string()) throw document_error(where + ".name", "expected a string");
    const json& dom = require(v, "domain", where);
    if (!dom.is_array()) throw document_error(where + ".domain", "expected an array");
    std::vector<int> values;
    values.reserve(dom.size());
    for (std::size_t t = 0; t < dom.size(); ++t) {
      if (!dom[t].is_number_integer())
        throw document_error(where + ".domain[" + std::to_string(t) + "]",
                             "expected an integer");
      values.push_back(dom[t].get<int>());
    }
    if (values.empty()) throw document_error(where + ".domain", "empty domain");
    net.add_variable(name.get<std::string>(), std::move(values));
  }

  const json& cons = require(doc, "constraints", "document");
  if (!cons.is_array()) throw document_error("constraints", "expected an array");
  for (std::size_t c = 0; c < cons.size(); ++c) {
    std::string where = "constraints[" + std::to_string(c) + "]";
    const json& entry = cons[c];
    const json& scope = require(entry, "scope", where);
    if (!scope.is_array() || scope.size() != 2 || !scope[0].is_string() || !scope[1].is_string())
      throw document_error(where + ".scope", "expected a pair of variable names");
    int a = net.var_index(scope[0].get<std::string>());
    if (a < 0)
      throw document_error(where + ".scope",
                           "unknown variable '" + scope[0].get<std::string>() + "'");
    int b = net.var_index(scope[1].get<std::string>());
    if (b < 0)
      throw document_error(where + ".scope",
                           "unknown variable '" + scope[1].get<std::string>() + "'");
    const json& sup = require(entry, "supports", where);
    if (!sup.is_array()) throw document_error(where + ".supports", "expected an array");
    std::vector<std::pair<int, int>> tuples;
    tuples.reserve(sup.size());
    for (std::size_t t = 0; t < sup.size(); ++t) {
      const json& tup = sup[t];
      if (!tup.is_array() || tup.size() != 2 || !tup[0].is_number_integer() ||
          !tup[1].is_number_integer())
        throw document_error(where + ".supports[" + std::to_string(t) + "]",
                             "expected an integer pair");
      tuples.emplace_back(tup[0].get<int>(), tup[1].get<int>());
    }
    try {
      net.add_constraint(a, b, tuples);
    } catch (const document_error& e) {
      throw document_error(where, e.what());
    }
  }
  return net;
}

removal_profile parse_profile(const constraint_network& net, const std::string& json_text) {
  json doc = parse_document(json_text);
  const json& rem = require(doc, "removals", "document");
  if (!rem.is_object()) throw document_error("removals", "expected an object");
  std::vector<int> k(net.var_count(), 0);
  for (const auto& [name, value] : rem.items()) {
    std::string where = "removals." + name;
    int v = net.var_index(name);
    if (v < 0) throw document_error(where, "unknown variable");
    if (!value.is_number_integer()) throw document_error(where, "expected an integer");
    k[v] = value.get<int>();
    if (k[v] < 0) throw document_error(where, "negative removal count");
    if (k[v] > net.domain_size(v))
      throw document_error(where, "removal count " + std::to_string(k[v]) +
                                      " exceeds domain size " +
                                      std::to_string(net.domain_size(v)));
  }
  try {
    return removal_profile(net, std::move(k));
  } catch (const std::invalid_argument& e) {
    throw document_error("removals", e.what());
  }
}

std::string network_to_json(const constraint_network& net) {
  std::string out = "{\n  \"variables\": [\n";
  for (int v = 0; v < net.var_count(); ++v) {
    out += "    {\"name\":\"" + json_escape(net.var_name(v)) + "\",\"domain\":[";
    const auto& dom = net.domain(v);
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(dom[i]);
    }
    out += "]}";
    out += v + 1 < net.var_count() ? ",\n" : "\n";
  }
  out += "  ],\n  \"constraints\": [\n";
  for (int c = 0; c < net.constraint_count(); ++c) {
    auto [a, b] = net.scope(c);
    out += "    {\"scope\":[\"" + json_escape(net.var_name(a)) + "\",\"" +
           json_escape(net.var_name(b)) + "\"],\"supports\":[";
    bool first = true;
    int arc = 2 * c;
    for (int w = 0; w < net.domain_size(a); ++w) {
      net.supports(arc, w).for_each([&](int t) {
        if (!first) out += ',';
        first = false;
        out += '[' + std::to_string(net.domain(a)[w]) + ',' + std::to_string(net.domain(b)[t]) +
               ']';
      });
    }
    out += "]}";
    out += c + 1 < net.constraint_count() ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

ac3_result ac3(const constraint_network& net) {
  std::vector<bit_set> live(net.var_count());
  for (int v = 0; v < net.var_count(); ++v) {
    live[v] = bit_set(net.domain_size(v));
    live[v].set_all();
  }
  return ac3(net, live);
}

ac3_result ac3(const constraint_network& net, const std::vector<bit_set>& live0) {
  std::vector<bit_set> live = live0;

  std::deque<int> queue;
  std::vector<char> queued(net.arc_count(), 0);
  auto push = [&](int arc) {
    if (!queued[arc]) {
      queued[arc] = 1;
      queue.push_back(arc);
    }
  };
  for (int arc = 0; arc < net.arc_count(); ++arc) push(arc);

  bool wiped = false;
  while (!queue.empty()) {
    int arc = queue.front();
    queue.pop_front();
    queued[arc] = 0;
    int i = net.arc_from(arc), j = net.arc_to(arc);

    bool changed = false;
    for (int w = 0; w < net.domain_size(i); ++w) {
      if (live[i].test(w) && !net.supports(arc, w).intersects(live[j])) {
        live[i].reset(w);
        changed = true;
      }
    }
    if (!changed) continue;
    if (live[i].none()) wiped = true;
    // values of D_j cannot have lost a support here, so (j, i) stays out
    for (const auto& nb : net.neighbors(i))
      if (nb.var != j) push(constraint_network::reverse(nb.arc));
  }

  ac3_result res;
  res.empty_domain = wiped;
  res.domains.resize(net.var_count());
  for (int v = 0; v < net.var_count(); ++v) {
    const auto& dom = net.domain(v);
    for (int w = 0; w < net.domain_size(v); ++w)
      if (live[v].test(w)) res.domains[v].push_back(dom[w]);
  }
  return res;
}

}  // namespace probcsp
