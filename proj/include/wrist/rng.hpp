#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wrist {

/// Deterministic random source. All distribution transforms are spelled out
/// here instead of using std:: distributions, whose output is
/// implementation-defined; the same seed therefore reproduces the same
/// stream on any compiler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer on [lo, hi] inclusive, rejection-sampled so the
  /// distribution is exact.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Standard normal via Marsaglia's polar method (second value cached).
  double normal01();

  double normal(double mean, double sd) { return mean + sd * normal01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(i) - 1));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Derives an independent stream seed from a base seed and a stream id
/// (splitmix64 finalizer), so parallel sessions never share a stream.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace wrist
