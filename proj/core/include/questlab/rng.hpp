#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace questlab {

/// Deterministic random source. Wraps mt19937_64 but avoids the standard
/// distribution objects, whose output is implementation-defined; every draw
/// here is a pure function of the seed on any conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Independent child stream. Reproducible: depends only on (seed, stream).
  static Rng stream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{seed, stream};
    std::mt19937_64 eng(0);
    eng.seed(seq);
    Rng r(0);
    r.engine_ = eng;
    return r;
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, n). n must be > 0.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Uniform double in [0, 1).
  double real() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * real(); }

  bool chance(double p) { return real() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  /// Fisher-Yates, deterministic across platforms (std::shuffle is not).
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

  /// k distinct indices drawn from [0, n), in draw order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    shuffle(pool);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace questlab
