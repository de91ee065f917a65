#pragma once

#include <array>
#include <cstdint>

namespace qst {

// Counter-based generator (Philox4x32-10). A draw depends only on
// (seed, stream, draw index), so independent streams keyed by
// (seed, realization index) reproduce bit-exactly whether realizations run
// serially or in parallel.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : seed_(seed), stream_(stream) {}

  // Uniform on [0, 1) with 53 random mantissa bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller (both values consumed, one cached).
  double gaussian();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::array<std::uint32_t, 4> block(std::uint64_t counter) const;
  std::uint64_t next_u64();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  bool have_cached_gaussian_ = false;
  double cached_gaussian_ = 0.0;
};

}  // namespace qst
