#include "qglab/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qglab {

void ModelConfig::validate() const {
  if (n < 1) throw ParameterOutOfRange("ModelConfig: n must be positive");
  if (trials < 1) throw ParameterOutOfRange("ModelConfig: trials must be positive");
  if (d && (*d < 0 || *d > n * n - 1)) {
    throw ParameterOutOfRange("ModelConfig: need 0 <= d <= n^2 - 1");
  }
  if (p && (*p < 0.0 || *p > 1.0 || !(*p == *p))) {
    throw ParameterOutOfRange("ModelConfig: need 0 <= p <= 1");
  }
  if (r && (*r < 0 || *r >= n)) {
    throw ParameterOutOfRange("ModelConfig: need 0 <= r < n");
  }
  if (r && (static_cast<long>(n) * *r) % 2 != 0) {
    throw ParameterOutOfRange("ModelConfig: n * r must be even");
  }
}

OperatorSystem sample_qg_nd(int n, int d, SeededRng& rng, int* redraw_count) {
  if (n < 1) throw ParameterOutOfRange("sample_qg_nd: n must be positive");
  if (d < 0 || d > n * n - 1) {
    throw ParameterOutOfRange("sample_qg_nd: need 0 <= d <= n^2 - 1");
  }
  if (redraw_count) *redraw_count = 0;

  OperatorSystem v;
  v.n = n;
  v.basis.push_back(ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n)));
  const std::uint64_t stride = static_cast<std::uint64_t>(std::max(d, 1));
  constexpr int kMaxAttempts = 64;
  for (int k = 0; k < d; ++k) {
    bool accepted = false;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      SeededRng draw = rng.derive(static_cast<std::uint64_t>(k) +
                                  static_cast<std::uint64_t>(attempt) * stride);
      ComplexMatrix x = sample_gue_traceless(n, draw);
      auto next = try_orthonormalize(std::move(x), v.basis, tol::rank_default);
      if (next) {
        v.basis.push_back(std::move(*next));
        accepted = true;
        if (redraw_count) *redraw_count += attempt;
        break;
      }
    }
    if (!accepted) {
      throw ExhaustedRetries("sample_qg_nd: draw " + std::to_string(k) +
                             " stayed dependent after redraws");
    }
  }
  return v;
}

OperatorSystem sample_qg_np(int n, double p, SeededRng& rng, int* d_out,
                            int* redraw_count) {
  if (n < 1) throw ParameterOutOfRange("sample_qg_np: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterOutOfRange("sample_qg_np: need 0 <= p <= 1");
  }
  SeededRng coin = rng.derive(0);
  int d = 0;
  for (int k = 0; k < n * n - 1; ++k) {
    if (coin.next_bernoulli(p)) ++d;
  }
  if (d_out) *d_out = d;
  SeededRng body = rng.derive(1);
  return sample_qg_nd(n, d, body, redraw_count);
}

Graph sample_gnp(int n, double p, SeededRng& rng) {
  if (n < 1) throw ParameterOutOfRange("sample_gnp: n must be positive");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterOutOfRange("sample_gnp: need 0 <= p <= 1");
  }
  Graph g = Graph::empty(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.next_bernoulli(p)) {
        g.adjacency(i, j) = 1;
        g.adjacency(j, i) = 1;
      }
    }
  }
  return g;
}

Graph sample_gnr(int n, int r, SeededRng& rng, int max_retries, int* retries_out) {
  if (n < 1) throw ParameterOutOfRange("sample_gnr: n must be positive");
  if (r < 0 || r >= n) throw ParameterOutOfRange("sample_gnr: need 0 <= r < n");
  if ((static_cast<long>(n) * r) % 2 != 0) {
    throw ParameterOutOfRange("sample_gnr: n * r must be even");
  }
  if (retries_out) *retries_out = 0;
  if (r == 0) return Graph::empty(n);

  std::vector<int> points(static_cast<std::size_t>(n) * r);
  for (std::size_t t = 0; t < points.size(); ++t) points[t] = static_cast<int>(t / r);

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    std::vector<int> stubs = points;
    rng.shuffle(stubs);
    Graph g = Graph::empty(n);
    bool simple = true;
    for (std::size_t t = 0; t + 1 < stubs.size(); t += 2) {
      const int u = stubs[t], v = stubs[t + 1];
      if (u == v || g.adjacency(u, v) != 0) {
        simple = false;
        break;
      }
      g.adjacency(u, v) = 1;
      g.adjacency(v, u) = 1;
    }
    if (simple) return g;
    if (retries_out) ++*retries_out;
  }
  throw ExhaustedRetries("sample_gnr: no simple matching in " +
                         std::to_string(max_retries) + " attempts");
}

}  // namespace qglab
