#include <doctest.h>

#include <cmath>
#include <vector>

#include "probcsp/oracle.hpp"
#include "probcsp/probability.hpp"
#include "test_helpers.hpp"

using namespace probcsp;

namespace {

// single constraint u -> v with the first p values of v supporting u's value
constraint_network pair_net(int p, int d) {
  constraint_network net;
  net.add_variable("u", {1});
  std::vector<int> dom(d);
  for (int i = 0; i < d; ++i) dom[i] = i + 1;
  net.add_variable("v", dom);
  std::vector<std::pair<int, int>> tuples;
  for (int i = 1; i <= p; ++i) tuples.emplace_back(1, i);
  net.add_constraint(0, 1, tuples);
  return net;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("constraint enumeration on pinned points") {
  CHECK(oracle_prob_constraint(pair_net(2, 4), 0, 0, 1, 2) == bigrat(1, 6));
  CHECK(oracle_prob_constraint(pair_net(0, 3), 0, 0, 1, 0) == bigrat(1));
  CHECK(oracle_prob_constraint(pair_net(3, 5), 0, 0, 1, 2) == bigrat(0));
}

TEST_CASE("constraint enumeration matches the closed form") {
  for (int d = 1; d <= 6; ++d) {
    for (int p = 0; p <= d; ++p) {
      const constraint_network net = pair_net(p, d);
      for (int k = 0; k <= d; ++k) {
        CHECK(oracle_prob_constraint(net, 0, 0, 1, k) == prob_value_constraint_exact(p, d, k));
      }
    }
  }
}

TEST_CASE("constraint enumeration argument checks") {
  const constraint_network net = pair_net(1, 3);
  CHECK_THROWS_AS(oracle_prob_constraint(net, 0, 0, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(oracle_prob_constraint(net, 0, 0, 0, 1), std::invalid_argument);
}

TEST_CASE("network enumeration degenerates to one constraint") {
  const constraint_network net = pair_net(2, 5);
  const removal_profile profile(net, {0, 3});
  CHECK(oracle_prob_network(net, profile, 0, 0) == oracle_prob_constraint(net, 0, 0, 1, 3));
}

TEST_CASE("star instance joint enumeration") {
  const constraint_network net = testutil::load_fixture("star_network.json");
  const removal_profile profile =
      parse_profile(net, testutil::read_file(testutil::fixture_dir() + "/star_events.json"));
  const int center = net.var_index("center");
  for (int w = 0; w < 3; ++w) {
    CHECK(oracle_prob_network(net, profile, center, w) == bigrat(11, 36));
  }
  CHECK(oracle_expected_domain(net, profile, center) == bigrat(11, 12));
  CHECK(oracle_expected_network(net, profile) == bigrat(11, 12));
}

TEST_CASE("fully supported zero-removal neighbor changes nothing") {
  constraint_network net;
  net.add_variable("x", {1, 2});
  net.add_variable("y", {1, 2, 3});
  net.add_variable("z", {1, 2});
  net.add_constraint(0, 1, {{1, 1}, {2, 2}});
  net.add_constraint(0, 2, {{1, 1}, {1, 2}, {2, 1}, {2, 2}});
  const support_counts counts = support_counts::compute(net);
  const removal_profile profile(net, {0, 2, 0});
  for (int w = 0; w < 2; ++w) {
    CHECK(oracle_prob_network(net, profile, 0, w) == oracle_prob_constraint(net, 0, w, 1, 2));
    CHECK(to_double(oracle_prob_network(net, profile, 0, w)) ==
          doctest::Approx(prob_value_network(net, counts, profile, 0, w)).epsilon(1e-9));
  }
}

TEST_CASE("no constraints means nothing to lose") {
  constraint_network net;
  net.add_variable("x", {1, 2, 3});
  net.add_variable("y", {1, 2});
  const removal_profile profile(net, {2, 1});
  CHECK(oracle_expected_domain(net, profile, 0) == bigrat(0));
  CHECK(oracle_expected_network(net, profile) == bigrat(0));
}

TEST_CASE("closed forms agree with enumeration on random instances") {
  rng64 rng(101);
  for (int it = 0; it < 40; ++it) {
    const constraint_network net = testutil::random_network(rng);
    const support_counts counts = support_counts::compute(net);
    const removal_profile profile = testutil::budget_capped_profile(rng, net, 20000);

    bigrat domain_sum(0);
    for (int v = 0; v < net.var_count(); ++v) {
      const bigrat e = oracle_expected_domain(net, profile, v);
      domain_sum += e;
      CHECK(std::abs(to_double(e) - expected_domain(net, counts, profile, v)) <= 1e-9);
      for (int w = 0; w < net.domain_size(v); ++w) {
        const bigrat q = oracle_prob_network(net, profile, v, w);
        CHECK(std::abs(to_double(q) - prob_value_network(net, counts, profile, v, w)) <= 1e-9);
      }
    }
    const bigrat e_net = oracle_expected_network(net, profile);
    CHECK(e_net == domain_sum);
    CHECK(std::abs(to_double(e_net) - expected_network(net, counts, profile)) <= 1e-9);
  }
}

TEST_CASE("budget refusal") {
  constraint_network net;
  std::vector<int> dom(20);
  for (int i = 0; i < 20; ++i) dom[i] = i + 1;
  net.add_variable("a", dom);
  net.add_variable("b", dom);
  net.add_constraint(0, 1, {{1, 1}});
  const removal_profile profile(net, {10, 10});
  enumeration_budget tiny;
  tiny.max_total_subsets = 100;
  CHECK_THROWS_AS(oracle_expected_network(net, profile, tiny), budget_error);
  CHECK_THROWS_AS(oracle_prob_network(net, profile, 0, 0, tiny), budget_error);
  CHECK_THROWS_WITH_AS(oracle_prob_constraint(net, 0, 0, 1, 10, tiny),
                       doctest::Contains("budget"), budget_error);
}

TEST_CASE("degenerate sampler sees a constant") {
  const constraint_network net = testutil::load_fixture("wipeout_network.json");
  const removal_profile profile = removal_profile::zeros(net);
  const monte_carlo_result mc = monte_carlo_expected_network(net, profile, 500, 99);
  CHECK(mc.estimate == 4.0);
  CHECK(mc.stderr_ == 0.0);
}

TEST_CASE("sampler is reproducible and converges") {
  const constraint_network net = testutil::load_fixture("star_network.json");
  const removal_profile profile =
      parse_profile(net, testutil::read_file(testutil::fixture_dir() + "/star_events.json"));
  const monte_carlo_result a = monte_carlo_expected_network(net, profile, 100000, 7);
  const monte_carlo_result b = monte_carlo_expected_network(net, profile, 100000, 7);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_ == b.stderr_);
  CHECK(a.stderr_ > 0.0);
  CHECK(std::abs(a.estimate - 11.0 / 12.0) <= 4.0 * a.stderr_);

  CHECK_THROWS_AS(monte_carlo_expected_network(net, profile, 99, 7), std::invalid_argument);
}

TEST_CASE("sampler tracks the enumerated mean across seeds") {
  const constraint_network net = testutil::load_fixture("star_network.json");
  const removal_profile profile =
      parse_profile(net, testutil::read_file(testutil::fixture_dir() + "/star_events.json"));
  const double exact = to_double(oracle_expected_network(net, profile));
  int inside = 0;
  const int trials = 40;
  for (int seed = 0; seed < trials; ++seed) {
    const monte_carlo_result mc = monte_carlo_expected_network(net, profile, 4000, seed);
    if (std::abs(mc.estimate - exact) <= 4.0 * mc.stderr_) ++inside;
  }
  // 4 standard errors miss far less than once in forty
  CHECK(inside >= trials - 1);
}

}  // TEST_SUITE
