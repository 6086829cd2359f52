#include "qglab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "qglab/errors.hpp"

namespace qglab {

// ---------------------------------------------------------------------------
// Eigenvector support certificates
// ---------------------------------------------------------------------------

double eigenvector_zero_tol(const ComplexMatrix& eigenvectors) {
  if (eigenvectors.size() == 0) return 0.0;
  return tol::zero_coord_rel * eigenvectors.cwiseAbs().maxCoeff();
}

ThicknessReport thickness_check(const ComplexMatrix& eigenvectors, double zero_tol) {
  const int rows = static_cast<int>(eigenvectors.rows());
  const int cols = static_cast<int>(eigenvectors.cols());
  std::vector<std::vector<bool>> support(cols, std::vector<bool>(rows, false));
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      support[c][r] = std::abs(eigenvectors(r, c)) >= zero_tol;
    }
  }
  for (int a = 0; a < cols; ++a) {
    for (int b = a + 1; b < cols; ++b) {
      bool overlap = false;
      for (int r = 0; r < rows && !overlap; ++r) {
        overlap = support[a][r] && support[b][r];
      }
      if (!overlap) return ThicknessReport{false, std::make_pair(a, b)};
    }
  }
  return ThicknessReport{true, std::nullopt};
}

bool no_zero_coordinates(const ComplexMatrix& eigenvectors, double zero_tol) {
  for (int c = 0; c < eigenvectors.cols(); ++c) {
    for (int r = 0; r < eigenvectors.rows(); ++r) {
      if (std::abs(eigenvectors(r, c)) < zero_tol) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Distance profiles
// ---------------------------------------------------------------------------

namespace {

// BFS distances from s; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const Graph& g, int s) {
  std::vector<int> dist(static_cast<std::size_t>(g.n), -1);
  std::vector<int> frontier{s};
  dist[static_cast<std::size_t>(s)] = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int v = 0; v < g.n; ++v) {
        if (g.adjacency(u, v) != 0 && dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  return dist;
}

}  // namespace

std::vector<std::vector<int>> distance_profiles(const Graph& g) {
  std::vector<std::vector<int>> profiles(static_cast<std::size_t>(g.n));
  int max_dist = 0;
  for (int s = 0; s < g.n; ++s) {
    std::vector<int> dist = bfs_distances(g, s);
    for (int v = 0; v < g.n; ++v) {
      const int d = dist[static_cast<std::size_t>(v)];
      if (d <= 0) continue;
      auto& profile = profiles[static_cast<std::size_t>(s)];
      if (static_cast<int>(profile.size()) < d) profile.resize(static_cast<std::size_t>(d), 0);
      ++profile[static_cast<std::size_t>(d - 1)];
      max_dist = std::max(max_dist, d);
    }
  }
  for (auto& profile : profiles) profile.resize(static_cast<std::size_t>(max_dist), 0);
  return profiles;
}

bool distinct_profiles(const std::vector<std::vector<int>>& profiles) {
  for (std::size_t a = 0; a < profiles.size(); ++a) {
    for (std::size_t b = a + 1; b < profiles.size(); ++b) {
      if (profiles[a] == profiles[b]) return false;
    }
  }
  return true;
}

Eig adjacency_spectrum(const Graph& g) {
  return eig_hermitian(g.adjacency.cast<double>().cast<Complex>());
}

// ---------------------------------------------------------------------------
// Exact classical automorphism search
// ---------------------------------------------------------------------------

namespace {

// Initial vertex colors from automorphism-invariant data: degree, distance
// profile and (when numerically safe) quantized eigenvector magnitudes at
// simple, well-separated eigenvalues.  Simple eigenvalues have eigenvectors
// unique up to phase, so the magnitude pattern is preserved by any graph
// automorphism; a wide gap floor and a guard band around each quantization
// boundary keep floating-point error from ever splitting a genuine orbit.
std::vector<int> initial_colors(const Graph& g) {
  const int n = g.n;
  const auto profiles = distance_profiles(g);

  constexpr double kQuantum = 1e-6;        // quantization step for magnitudes
  constexpr double kGuard = 1e-9;          // minimum distance to a boundary
  constexpr double kGapFloorRel = 1e-4;    // eigenvalue separation for "simple"

  std::vector<std::vector<long long>> spectral(static_cast<std::size_t>(n));
  bool use_spectral = n > 0;
  if (use_spectral) {
    const Eig eig = adjacency_spectrum(g);
    const double spread = n > 1 ? eig.values(n - 1) - eig.values(0) : 0.0;
    const double gap_floor = kGapFloorRel * std::max(1.0, spread);
    const double inf = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n && use_spectral; ++k) {
      const double lo = k == 0 ? inf : eig.values(k) - eig.values(k - 1);
      const double hi = k == n - 1 ? inf : eig.values(k + 1) - eig.values(k);
      if (std::min(lo, hi) <= gap_floor) continue;
      for (int x = 0; x < n; ++x) {
        const double scaled = std::abs(eig.vectors(x, k)) / kQuantum;
        const double bucket = std::nearbyint(scaled);
        if (std::abs(scaled - bucket) > 0.5 - kGuard / kQuantum) {
          use_spectral = false;
          break;
        }
        spectral[static_cast<std::size_t>(x)].push_back(static_cast<long long>(bucket));
      }
    }
  }
  if (!use_spectral) {
    for (auto& s : spectral) s.clear();
  } else {
    for (auto& s : spectral) std::sort(s.begin(), s.end());
  }

  using Key = std::pair<std::vector<int>, std::vector<long long>>;
  std::map<Key, int> ids;
  std::vector<Key> keys(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    std::vector<int> exact{g.degree(x)};
    exact.insert(exact.end(), profiles[static_cast<std::size_t>(x)].begin(),
                 profiles[static_cast<std::size_t>(x)].end());
    keys[static_cast<std::size_t>(x)] = Key{std::move(exact), spectral[static_cast<std::size_t>(x)]};
    ids.emplace(keys[static_cast<std::size_t>(x)], 0);
  }
  int next = 0;
  for (auto& kv : ids) kv.second = next++;
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) colors[static_cast<std::size_t>(x)] = ids[keys[static_cast<std::size_t>(x)]];
  return colors;
}

// One-step-at-a-time Weisfeiler-Leman refinement applied to a source and a
// target coloring in lockstep, with a shared signature -> color dictionary.
// Returns false when the two sides stop having equal color histograms (then
// no color-preserving bijection, hence no automorphism consistent with the
// individualizations so far, can exist).
bool refine_pair(const Graph& g, std::vector<int>& src, std::vector<int>& tgt) {
  const int n = g.n;
  int prev_count = -1;
  while (true) {
    using Sig = std::pair<int, std::vector<int>>;
    std::vector<Sig> ssig(static_cast<std::size_t>(n)), tsig(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      std::vector<int> ns, nt;
      for (int y = 0; y < n; ++y) {
        if (g.adjacency(x, y) != 0) {
          ns.push_back(src[static_cast<std::size_t>(y)]);
          nt.push_back(tgt[static_cast<std::size_t>(y)]);
        }
      }
      std::sort(ns.begin(), ns.end());
      std::sort(nt.begin(), nt.end());
      ssig[static_cast<std::size_t>(x)] = Sig{src[static_cast<std::size_t>(x)], std::move(ns)};
      tsig[static_cast<std::size_t>(x)] = Sig{tgt[static_cast<std::size_t>(x)], std::move(nt)};
    }
    std::map<Sig, int> ids;
    for (const auto& s : ssig) ids.emplace(s, 0);
    for (const auto& s : tsig) ids.emplace(s, 0);
    int count = 0;
    for (auto& kv : ids) kv.second = count++;
    std::vector<int> hist_src(static_cast<std::size_t>(count), 0);
    std::vector<int> hist_tgt(static_cast<std::size_t>(count), 0);
    for (int x = 0; x < n; ++x) {
      src[static_cast<std::size_t>(x)] = ids[ssig[static_cast<std::size_t>(x)]];
      tgt[static_cast<std::size_t>(x)] = ids[tsig[static_cast<std::size_t>(x)]];
      ++hist_src[static_cast<std::size_t>(src[static_cast<std::size_t>(x)])];
      ++hist_tgt[static_cast<std::size_t>(tgt[static_cast<std::size_t>(x)])];
    }
    if (hist_src != hist_tgt) return false;
    if (count == prev_count) return true;  // partition stopped refining
    prev_count = count;
  }
}

struct AutSearcher {
  const Graph& g;
  long long budget = 0;
  long long nodes = 0;
  bool exhausted = false;

  bool is_exact_automorphism(const std::vector<int>& phi) const {
    for (int x = 0; x < g.n; ++x) {
      for (int y = x + 1; y < g.n; ++y) {
        if (g.adjacency(x, y) !=
            g.adjacency(phi[static_cast<std::size_t>(x)], phi[static_cast<std::size_t>(y)])) {
          return false;
        }
      }
    }
    return true;
  }

  // True iff a verified non-identity automorphism exists in this subtree.
  bool search(std::vector<int> src, std::vector<int> tgt) {
    if (exhausted) return false;
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    if (!refine_pair(g, src, tgt)) return false;
    const int n = g.n;
    int num_colors = 0;
    for (int c : src) num_colors = std::max(num_colors, c + 1);
    std::vector<int> cell_size(static_cast<std::size_t>(num_colors), 0);
    for (int c : src) ++cell_size[static_cast<std::size_t>(c)];
    int branch_color = -1, best = std::numeric_limits<int>::max();
    for (int c = 0; c < num_colors; ++c) {
      const int s = cell_size[static_cast<std::size_t>(c)];
      if (s > 1 && s < best) {
        best = s;
        branch_color = c;
      }
    }
    if (branch_color < 0) {
      // Discrete matched coloring: the forced map sends the source vertex of
      // each color to the target vertex of the same color.
      std::vector<int> vertex_of_color(static_cast<std::size_t>(num_colors), -1);
      for (int x = 0; x < n; ++x) vertex_of_color[static_cast<std::size_t>(src[static_cast<std::size_t>(x)])] = x;
      std::vector<int> phi(static_cast<std::size_t>(n), -1);
      bool identity = true;
      for (int y = 0; y < n; ++y) {
        const int x = vertex_of_color[static_cast<std::size_t>(tgt[static_cast<std::size_t>(y)])];
        phi[static_cast<std::size_t>(x)] = y;
        identity = identity && x == y;
      }
      return !identity && is_exact_automorphism(phi);
    }
    int u = -1;
    for (int x = 0; x < n; ++x) {
      if (src[static_cast<std::size_t>(x)] == branch_color) {
        u = x;
        break;
      }
    }
    for (int w = 0; w < n; ++w) {
      if (tgt[static_cast<std::size_t>(w)] != branch_color) continue;
      std::vector<int> src_child = src, tgt_child = tgt;
      src_child[static_cast<std::size_t>(u)] = num_colors;  // fresh matched color
      tgt_child[static_cast<std::size_t>(w)] = num_colors;
      if (search(std::move(src_child), std::move(tgt_child))) return true;
      if (exhausted) return false;
    }
    return false;
  }
};

}  // namespace

AutVerdict classical_aut_trivial(const Graph& g, long long budget) {
  if (g.n <= 1) return AutVerdict::Trivial;
  std::vector<int> colors = initial_colors(g);
  AutSearcher searcher{g, budget};
  const bool found = searcher.search(colors, colors);
  if (found) return AutVerdict::Nontrivial;
  if (searcher.exhausted) return AutVerdict::Unknown;
  return AutVerdict::Trivial;
}

// ---------------------------------------------------------------------------
// Quantum rigidity certificate
// ---------------------------------------------------------------------------

RigidityCertificate quantum_rigidity_certificate(const Graph& g, double gap_tol,
                                                 long long aut_budget) {
  RigidityCertificate cert;
  const Eig eig = adjacency_spectrum(g);
  cert.spectrum_simple = simple_spectrum(eig.values, gap_tol);
  const double zero_tol = eigenvector_zero_tol(eig.vectors);
  cert.thick = thickness_check(eig.vectors, zero_tol).thick;
  cert.no_zero_coordinates = no_zero_coordinates(eig.vectors, zero_tol);
  cert.distance_profiles_distinct = distinct_profiles(distance_profiles(g));
  cert.classical_aut = classical_aut_trivial(g, aut_budget);
  if ((cert.spectrum_simple && cert.thick && cert.classical_aut == AutVerdict::Trivial) ||
      cert.distance_profiles_distinct) {
    cert.verdict = RigidityVerdict::QuantumTrivial;
  } else if (cert.spectrum_simple && cert.thick) {
    cert.verdict = RigidityVerdict::ClassicalTwoGroup;
  } else {
    cert.verdict = RigidityVerdict::Inconclusive;
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Godsil-McKay switching
// ---------------------------------------------------------------------------

GmPair gm_switch(const Graph& gamma, std::vector<int> vprime) {
  const int n = gamma.n;
  if (n <= 0 || n % 2 != 0) {
    throw BadPartition("gm_switch: vertex count must be even and positive");
  }
  for (int v = 1; v < n; ++v) {
    if (gamma.degree(v) != gamma.degree(0)) {
      throw NotRegular("gm_switch: base graph degrees are not all equal");
    }
  }
  const int m = n / 2;
  std::sort(vprime.begin(), vprime.end());
  if (static_cast<int>(vprime.size()) != m) {
    throw BadPartition("gm_switch: need exactly n/2 chosen vertices, got " +
                       std::to_string(vprime.size()));
  }
  for (std::size_t i = 0; i < vprime.size(); ++i) {
    if (vprime[i] < 0 || vprime[i] >= n) {
      throw BadPartition("gm_switch: vertex index out of range");
    }
    if (i > 0 && vprime[i] == vprime[i - 1]) {
      throw BadPartition("gm_switch: duplicate vertex in the chosen half");
    }
  }
  std::vector<bool> chosen(static_cast<std::size_t>(n), false);
  for (int v : vprime) chosen[static_cast<std::size_t>(v)] = true;
  std::vector<int> vsecond;
  vsecond.reserve(static_cast<std::size_t>(m));
  for (int v = 0; v < n; ++v) {
    if (!chosen[static_cast<std::size_t>(v)]) vsecond.push_back(v);
  }
  const auto extend = [&](const std::vector<int>& side) {
    Graph h = Graph::empty(n + 1);
    h.adjacency.topLeftCorner(n, n) = gamma.adjacency;
    for (int v : side) {
      h.adjacency(v, n) = 1;
      h.adjacency(n, v) = 1;
    }
    return h;
  };
  GmPair pair;
  pair.gamma_prime = extend(vprime);
  pair.gamma_second = extend(vsecond);
  pair.vprime = std::move(vprime);
  pair.vsecond = std::move(vsecond);
  pair.apex = n;
  return pair;
}

std::vector<BigInt> char_poly_integer(const Graph& g) {
  const int n = g.n;
  std::vector<BigInt> poly{BigInt(1)};
  // Berkowitz recurrence: extend the characteristic polynomial of the leading
  // (r-1)x(r-1) principal submatrix to the r x r one by multiplying with a
  // Toeplitz matrix whose column is built from the Krylov products R A^k S of
  // the bordering row R and column S.  Division-free, so exact over integers.
  for (int r = 1; r <= n; ++r) {
    std::vector<BigInt> column(static_cast<std::size_t>(r) + 1);
    column[0] = 1;
    column[1] = -BigInt(g.adjacency(r - 1, r - 1));
    std::vector<BigInt> krylov(static_cast<std::size_t>(r) - 1);
    for (int i = 0; i + 1 < r; ++i) krylov[static_cast<std::size_t>(i)] = g.adjacency(i, r - 1);
    for (int k = 2; k <= r; ++k) {
      BigInt dot = 0;
      for (int i = 0; i + 1 < r; ++i) {
        dot += BigInt(g.adjacency(r - 1, i)) * krylov[static_cast<std::size_t>(i)];
      }
      column[static_cast<std::size_t>(k)] = -dot;
      if (k < r) {
        std::vector<BigInt> next(static_cast<std::size_t>(r) - 1);
        for (int i = 0; i + 1 < r; ++i) {
          BigInt acc = 0;
          for (int j = 0; j + 1 < r; ++j) {
            acc += BigInt(g.adjacency(i, j)) * krylov[static_cast<std::size_t>(j)];
          }
          next[static_cast<std::size_t>(i)] = std::move(acc);
        }
        krylov = std::move(next);
      }
    }
    std::vector<BigInt> extended(static_cast<std::size_t>(r) + 1);
    for (int i = 0; i <= r; ++i) {
      BigInt acc = 0;
      for (int j = 0; j <= std::min(i, r - 1); ++j) {
        acc += column[static_cast<std::size_t>(i - j)] * poly[static_cast<std::size_t>(j)];
      }
      extended[static_cast<std::size_t>(i)] = std::move(acc);
    }
    poly = std::move(extended);
  }
  return poly;
}

bool isospectral_check(const Graph& g1, const Graph& g2) {
  if (g1.n != g2.n) {
    throw DimensionMismatch("isospectral_check: vertex counts differ (" +
                            std::to_string(g1.n) + " vs " + std::to_string(g2.n) + ")");
  }
  return char_poly_integer(g1) == char_poly_integer(g2);
}

// ---------------------------------------------------------------------------
// Quantum isomorphism obstruction
// ---------------------------------------------------------------------------

ObstructionReport quantum_isomorphism_obstruction(const Graph& gamma,
                                                  std::vector<int> vprime) {
  const GmPair pair = gm_switch(gamma, std::move(vprime));
  ObstructionReport report;
  report.isospectral = isospectral_check(pair.gamma_prime, pair.gamma_second);
  const auto apex_is_unique_max = [&](const Graph& h) {
    const int apex_degree = h.degree(pair.apex);
    for (int v = 0; v < h.n; ++v) {
      if (v != pair.apex && h.degree(v) >= apex_degree) return false;
    }
    return true;
  };
  report.apex_unique_max_degree =
      apex_is_unique_max(pair.gamma_prime) && apex_is_unique_max(pair.gamma_second);
  const RigidityCertificate base = quantum_rigidity_certificate(gamma);
  report.base_profiles_distinct = base.distance_profiles_distinct;
  report.base_quantum_trivial = base.verdict == RigidityVerdict::QuantumTrivial;
  report.partitions_differ = pair.vprime != pair.vsecond;
  report.verdict = report.apex_unique_max_degree && report.base_quantum_trivial &&
                           report.partitions_differ
                       ? ObstructionVerdict::NotQuantumIsomorphic
                       : ObstructionVerdict::Inconclusive;
  return report;
}

}  // namespace qglab
