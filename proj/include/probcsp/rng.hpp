#ifndef PROBCSP_RNG_HPP
#define PROBCSP_RNG_HPP

#include <cassert>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace probcsp {

// mt19937_64 with a rejection-sampled bounded draw. std::uniform_int_distribution
// is implementation-defined, so seeded streams go through this wrapper to keep
// outputs stable across standard libraries.
class rng64 {
public:
  explicit rng64(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) {
    assert(n > 0);
    std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % n;
    std::uint64_t v;
    do {
      v = gen_();
    } while (v >= limit);
    return v % n;
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  double unit() {
    // 53 uniform bits
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // uniform k-subset of {0..n-1} by partial Fisher-Yates; first k slots of
  // the shuffled index array
  std::vector<int> sample_indices(int n, int k) {
    assert(0 <= k && k <= n);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    partial_shuffle(idx, k);
    idx.resize(k);
    return idx;
  }

  // shuffles the first k slots of idx against the whole array
  void partial_shuffle(std::vector<int>& idx, int k) {
    int n = static_cast<int>(idx.size());
    for (int i = 0; i < k; ++i) {
      int j = i + below_int(n - i);
      std::swap(idx[i], idx[j]);
    }
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace probcsp

#endif
