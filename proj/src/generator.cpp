#include "probcsp/generator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "probcsp/rng.hpp"

namespace probcsp {

namespace {

// floor(fraction * total) with a nudge against representation error
// (0.3 * 10 sits just below 3 in binary).
int scaled_count(double fraction, long long total) {
  return static_cast<int>(std::floor(fraction * static_cast<double>(total) + 1e-9));
}

}  // namespace

constraint_network generate(const generator_config& config) {
  if (config.vars < 1) throw std::invalid_argument("vars must be >= 1");
  if (config.dom < 1) throw std::invalid_argument("dom must be >= 1");
  if (!(config.density >= 0.0 && config.density <= 1.0)) {
    throw std::invalid_argument("density must lie in [0,1]");
  }
  if (!(config.tightness >= 0.0 && config.tightness <= 1.0)) {
    throw std::invalid_argument("tightness must lie in [0,1]");
  }

  const int n = config.vars;
  const int d = config.dom;
  constraint_network net;
  std::vector<int> values(d);
  for (int v = 0; v < d; ++v) values[v] = v + 1;
  for (int i = 0; i < n; ++i) net.add_variable("x" + std::to_string(i + 1), values);

  rng64 rng(config.seed);
  const long long total_pairs = static_cast<long long>(n) * (n - 1) / 2;
  const int m = scaled_count(config.density, total_pairs);
  std::vector<int> pair_ids = rng.sample_indices(static_cast<int>(total_pairs), m);
  std::sort(pair_ids.begin(), pair_ids.end());

  const int forbidden = scaled_count(config.tightness, static_cast<long long>(d) * d);
  std::vector<char> is_forbidden(static_cast<std::size_t>(d) * d, 0);
  for (int pid : pair_ids) {
    int a = 0;
    int rest = pid;
    while (rest >= n - 1 - a) {
      rest -= n - 1 - a;
      ++a;
    }
    const int b = a + 1 + rest;

    std::fill(is_forbidden.begin(), is_forbidden.end(), 0);
    for (int t : rng.sample_indices(d * d, forbidden)) is_forbidden[t] = 1;
    std::vector<std::pair<int, int>> supports;
    supports.reserve(static_cast<std::size_t>(d) * d - forbidden);
    for (int u = 0; u < d; ++u) {
      for (int v = 0; v < d; ++v) {
        if (!is_forbidden[u * d + v]) supports.emplace_back(u + 1, v + 1);
      }
    }
    net.add_constraint(a, b, supports);
  }
  return net;
}

}  // namespace probcsp
