#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"
#include "qglab/rng.hpp"

using qglab::SeededRng;

TEST_CASE("same (seed, stream) reproduces the sequence bit for bit") {
  SeededRng a(123456789u, 7u);
  SeededRng b(123456789u, 7u);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seed or stream changes the sequence") {
  SeededRng base(42u, 0u);
  SeededRng other_seed(43u, 0u);
  SeededRng other_stream(42u, 1u);
  int same_seed_hits = 0;
  int same_stream_hits = 0;
  for (int i = 0; i < 64; ++i) {
    std::uint64_t x = base.next_u64();
    if (x == other_seed.next_u64()) ++same_seed_hits;
    if (x == other_stream.next_u64()) ++same_stream_hits;
  }
  CHECK(same_seed_hits == 0);
  CHECK(same_stream_hits == 0);
}

TEST_CASE("derive depends only on (seed, stream, index), not on consumption") {
  SeededRng fresh(99u, 3u);
  SeededRng consumed(99u, 3u);
  for (int i = 0; i < 500; ++i) consumed.next_u64();

  SeededRng child_fresh = fresh.derive(11u);
  SeededRng child_consumed = consumed.derive(11u);
  for (int i = 0; i < 100; ++i)
    CHECK(child_fresh.next_u64() == child_consumed.next_u64());

  CHECK(child_fresh.seed() == 99u);
  // Derived stream identity is a deterministic function of parent identity.
  CHECK(child_fresh.stream_index() == child_consumed.stream_index());
}

TEST_CASE("next_double lies in [0,1) and has the uniform mean") {
  SeededRng rng(2024u);
  const int N = 200000;
  double sum = 0.0;
  for (int i = 0; i < N; ++i) {
    double u = rng.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  double mean = sum / N;
  double se = std::sqrt(1.0 / 12.0 / N);
  CHECK(std::abs(mean - 0.5) < 5.0 * se);
}

TEST_CASE("next_gaussian has standard-normal mean and variance") {
  SeededRng rng(7u);
  const int N = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < N; ++i) {
    double z = rng.next_gaussian();
    sum += z;
    sum_sq += z * z;
  }
  double mean = sum / N;
  double var = sum_sq / N - mean * mean;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(N)));
  CHECK(std::abs(var - 1.0) < 5.0 * std::sqrt(2.0 / N));

  SeededRng rng2(7u);
  double shifted = rng2.next_gaussian(10.0, 2.0);
  SeededRng rng3(7u);
  CHECK(shifted == doctest::Approx(10.0 + 2.0 * rng3.next_gaussian()));
}

TEST_CASE("next_below is bounded and close to uniform") {
  SeededRng rng(5u);
  const std::uint64_t bound = 7;
  const int N = 70000;
  std::vector<int> counts(bound, 0);
  for (int i = 0; i < N; ++i) {
    std::uint64_t v = rng.next_below(bound);
    REQUIRE(v < bound);
    ++counts[static_cast<std::size_t>(v)];
  }
  double expected = static_cast<double>(N) / bound;
  double se = std::sqrt(expected * (1.0 - 1.0 / bound));
  for (int c : counts) CHECK(std::abs(c - expected) < 5.0 * se);
}

TEST_CASE("next_bernoulli respects the degenerate probabilities") {
  SeededRng rng(1u);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(rng.next_bernoulli(0.0));
    CHECK(rng.next_bernoulli(1.0));
  }
}

TEST_CASE("shuffle produces a deterministic permutation") {
  std::vector<int> v(25);
  for (int i = 0; i < 25; ++i) v[i] = i;
  SeededRng rng(31337u);
  rng.shuffle(v);

  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 25; ++i) CHECK(sorted[i] == i);

  std::vector<int> w(25);
  for (int i = 0; i < 25; ++i) w[i] = i;
  SeededRng rng2(31337u);
  rng2.shuffle(w);
  CHECK(v == w);

  // A different seed should move at least one element differently.
  std::vector<int> u(25);
  for (int i = 0; i < 25; ++i) u[i] = i;
  SeededRng rng3(31338u);
  rng3.shuffle(u);
  CHECK(u != v);
}
