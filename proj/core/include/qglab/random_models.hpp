#pragma once

#include <cstdint>
#include <optional>

#include "qglab/graph.hpp"
#include "qglab/operator_system.hpp"

namespace qglab {

// Validated parameter bundle for the random model samplers.
struct ModelConfig {
  int n = 0;
  std::optional<int> d;       // quantum/classical dimension or degree
  std::optional<double> p;    // edge/basis-element probability
  std::optional<int> r;       // classical regularity
  std::uint64_t seed = 0;
  int trials = 1;

  void validate() const;      // throws ParameterOutOfRange
};

// QG(n, d): span{1, X_1..X_d} for d independent traceless GUE draws.
// Draw k uses the derived stream k; a draw whose Gram-Schmidt residual falls
// below the rank tolerance is redrawn from stream k + attempt * max(d, 1)
// (redraw_count, if given, accumulates the number of redraws).
OperatorSystem sample_qg_nd(int n, int d, SeededRng& rng, int* redraw_count = nullptr);

// QG(n, p): d ~ Binomial(n^2 - 1, p) via explicit Bernoulli sums on the
// derived stream 0, then QG(n, d) on the derived stream 1.
OperatorSystem sample_qg_np(int n, double p, SeededRng& rng, int* d_out = nullptr,
                            int* redraw_count = nullptr);

// G(n, p): each of the n(n-1)/2 pairs independently with probability p,
// visited in row-major order.
Graph sample_gnp(int n, double p, SeededRng& rng);

// G(n, r): uniform simple r-regular graph by the configuration model (random
// perfect matching of vertex half-edges, rejecting loops and multi-edges).
// Throws ExhaustedRetries after max_retries rejected matchings; requires
// 0 <= r < n and even n r.
Graph sample_gnr(int n, int r, SeededRng& rng, int max_retries = 1000,
                 int* retries_out = nullptr);

}  // namespace qglab
