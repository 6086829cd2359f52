#include "qglab/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace qglab {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

// SplitMix64 output mixer.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Hash a pair of words into an initial state; two rounds keep (seed, stream)
// pairs that differ in one word far apart in state space.
std::uint64_t mix_pair(std::uint64_t a, std::uint64_t b) {
  return mix64(mix64(a + kGamma) ^ (b + 0x2545f4914f6cdd1dULL));
}

}  // namespace

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_(stream_index), state_(mix_pair(seed, stream_index)) {}

SeededRng SeededRng::derive(std::uint64_t index) const {
  // New stream identity from the parent's identity, not its position.
  return SeededRng(seed_, mix_pair(stream_ + 1, index));
}

std::uint64_t SeededRng::next_u64() {
  state_ += kGamma;
  return mix64(state_);
}

double SeededRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double SeededRng::next_gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  // u1 in (0,1]: flip next_double() so log(u1) is finite.
  double u1 = 1.0 - next_double();
  double u2 = next_double();
  double radius = std::sqrt(-2.0 * std::log(u1));
  double angle = 2.0 * M_PI * u2;
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

std::uint64_t SeededRng::next_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t draw;
  do {
    draw = next_u64();
  } while (draw > limit);
  return draw % bound;
}

}  // namespace qglab
