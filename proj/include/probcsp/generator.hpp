#ifndef PROBCSP_GENERATOR_HPP
#define PROBCSP_GENERATOR_HPP

#include <cstdint>

#include "probcsp/network.hpp"

namespace probcsp {

// Random binary network in the classic model-B style: `density` of the
// n(n-1)/2 variable pairs get a constraint, and each constraint forbids
// exactly floor(tightness * d^2) distinct tuples, both chosen uniformly
// without replacement.
struct generator_config {
  int vars = 0;
  int dom = 0;
  double density = 0.0;
  double tightness = 0.0;
  std::uint64_t seed = 0;
};

// Deterministic for a fixed config. Variables are named x1..xn with domains
// 1..d; constraints are stored in pair-sorted order so documents are
// reproducible byte for byte. Throws std::invalid_argument on a config
// outside its bounds.
constraint_network generate(const generator_config& config);

}  // namespace probcsp

#endif
