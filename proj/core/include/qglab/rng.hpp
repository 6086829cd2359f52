#pragma once

#include <cstdint>
#include <vector>

namespace qglab {

// Counter-based 64-bit generator with explicit (seed, stream_index) identity.
//
// The state evolution is the SplitMix64 mixer (Steele/Lea/Flood, "Fast
// splittable pseudorandom number generators"), seeded by hashing seed and
// stream_index together.  The same (seed, stream_index) therefore produces the
// same sequence bit for bit on every run and every thread schedule, and
// derived streams are independent of how much of the parent was consumed.
//
// Gaussian draws use an explicit Box-Muller transform (documented below)
// instead of std::normal_distribution, whose algorithm is
// implementation-defined and differs between standard libraries.
class SeededRng {
 public:
  SeededRng(std::uint64_t seed, std::uint64_t stream_index = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  // Child generator fully determined by (seed, stream_index, index); used to
  // give every trial / redraw / restart its own stream.
  SeededRng derive(std::uint64_t index) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_double();

  // Standard normal via Box-Muller:
  //   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2)
  // with u1 in (0,1], u2 in [0,1); z1 is cached for the next call.
  double next_gaussian();

  double next_gaussian(double mean, double stddev) {
    return mean + stddev * next_gaussian();
  }

  // Value in [0, bound) by rejection on the top multiple of bound, so the
  // result is exactly uniform. bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);

  bool next_bernoulli(double p) { return next_double() < p; }

  // Fisher-Yates shuffle (descending index, swap with next_below(i+1)).
  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t seed_ = 0;
  std::uint64_t stream_ = 0;
  std::uint64_t state_ = 0;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace qglab
