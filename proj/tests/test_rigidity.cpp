#include <cmath>
#include <vector>

#include "doctest.h"
#include "qglab/errors.hpp"
#include "qglab/random_models.hpp"
#include "qglab/rigidity.hpp"

using namespace qglab;

namespace {

Graph petersen_graph() {
  return Graph::from_edges(10, {{0, 1},
                                {1, 2},
                                {2, 3},
                                {3, 4},
                                {4, 0},
                                {5, 7},
                                {7, 9},
                                {9, 6},
                                {6, 8},
                                {8, 5},
                                {0, 5},
                                {1, 6},
                                {2, 7},
                                {3, 8},
                                {4, 9}});
}

// Asymmetric tree: path 0-1-2-3-4-5 with an extra leaf 6 on vertex 2. All
// seven distance profiles are pairwise distinct.
Graph spider_tree() {
  return Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {2, 6}});
}

// Exact determinant by cofactor expansion over BigInt (test oracle; fine for
// n <= 9).
BigInt det_cofactor(const std::vector<std::vector<BigInt>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  BigInt out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0) continue;
    std::vector<std::vector<BigInt>> minor(n - 1, std::vector<BigInt>(n - 1));
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    BigInt term = m[0][j] * det_cofactor(minor);
    out += (j % 2 == 0) ? term : -term;
  }
  return out;
}

// det(x 1 - A) at an integer point, straight from the definition.
BigInt char_poly_at(const Graph& g, long long x) {
  std::vector<std::vector<BigInt>> m(g.n, std::vector<BigInt>(g.n));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      m[i][j] = (i == j ? BigInt(x) : BigInt(0)) - BigInt(g.adjacency(i, j));
  return det_cofactor(m);
}

BigInt eval_poly(const std::vector<BigInt>& coeffs, long long x) {
  BigInt out = 0;
  for (const BigInt& c : coeffs) out = out * x + c;
  return out;
}

}  // namespace

TEST_CASE("thickness and zero-coordinate checks on hand-built eigenvectors") {
  ComplexMatrix block(4, 4);
  const double s = 1.0 / std::sqrt(2.0);
  block.setZero();
  block.col(0) << s, s, 0, 0;
  block.col(1) << s, -s, 0, 0;
  block.col(2) << 0, 0, s, s;
  block.col(3) << 0, 0, s, -s;
  double tol = eigenvector_zero_tol(block);
  CHECK(tol == doctest::Approx(1e-8 * s));
  ThicknessReport rep = thickness_check(block, tol);
  CHECK_FALSE(rep.thick);
  REQUIRE(rep.witness.has_value());
  auto [a, b] = *rep.witness;
  // The witness columns really have disjoint support.
  for (int i = 0; i < 4; ++i)
    CHECK((std::abs(block(i, a)) < tol || std::abs(block(i, b)) < tol));
  CHECK_FALSE(no_zero_coordinates(block, tol));
}

TEST_CASE("the path on three vertices is thick but has a zero coordinate") {
  Eig e = adjacency_spectrum(path_graph(3));
  CHECK(e.values(0) == doctest::Approx(-std::sqrt(2.0)));
  CHECK(e.values(1) == doctest::Approx(0.0));
  CHECK(e.values(2) == doctest::Approx(std::sqrt(2.0)));
  double tol = eigenvector_zero_tol(e.vectors);
  CHECK(thickness_check(e.vectors, tol).thick);
  CHECK_FALSE(no_zero_coordinates(e.vectors, tol));  // middle of the 0-vector
}

TEST_CASE("the single edge has thick eigenvectors with no zero coordinates") {
  Eig e = adjacency_spectrum(Graph::from_edges(2, {{0, 1}}));
  double tol = eigenvector_zero_tol(e.vectors);
  CHECK(thickness_check(e.vectors, tol).thick);
  CHECK(no_zero_coordinates(e.vectors, tol));
}

TEST_CASE("distance profiles match the closed forms") {
  auto c4 = distance_profiles(cycle_graph(4));
  for (const auto& p : c4) CHECK(p == std::vector<int>{2, 1});
  CHECK_FALSE(distinct_profiles(c4));

  Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  auto sp = distance_profiles(star);
  CHECK(sp[0] == std::vector<int>{3, 0});
  for (int leaf : {1, 2, 3}) CHECK(sp[leaf] == std::vector<int>{1, 2});
  CHECK_FALSE(distinct_profiles(sp));

  // Unreachable vertices are not counted.
  auto disc = distance_profiles(Graph::from_edges(4, {{0, 1}, {2, 3}}));
  for (const auto& p : disc) CHECK(p == std::vector<int>{1});
}

TEST_CASE("the spider tree has pairwise distinct profiles") {
  auto profs = distance_profiles(spider_tree());
  CHECK(profs[0] == std::vector<int>{1, 1, 2, 1, 1});
  CHECK(profs[1] == std::vector<int>{2, 2, 1, 1, 0});
  CHECK(profs[2] == std::vector<int>{3, 2, 1, 0, 0});
  CHECK(profs[3] == std::vector<int>{2, 3, 1, 0, 0});
  CHECK(profs[4] == std::vector<int>{2, 1, 2, 1, 0});
  CHECK(profs[5] == std::vector<int>{1, 1, 1, 2, 1});
  CHECK(profs[6] == std::vector<int>{1, 2, 2, 1, 0});
  CHECK(distinct_profiles(profs));
}

TEST_CASE("classical_aut_trivial decides the frozen instances") {
  CHECK(classical_aut_trivial(complete_graph(4)) == AutVerdict::Nontrivial);
  CHECK(classical_aut_trivial(path_graph(4)) == AutVerdict::Nontrivial);
  CHECK(classical_aut_trivial(cycle_graph(5)) == AutVerdict::Nontrivial);
  CHECK(classical_aut_trivial(spider_tree()) == AutVerdict::Trivial);
  // Vertex-transitive and strongly regular: refinement alone cannot split it,
  // the branching search still finds one of its 120 automorphisms.
  CHECK(classical_aut_trivial(petersen_graph()) == AutVerdict::Nontrivial);
}

TEST_CASE("classical_aut_trivial respects the node budget") {
  CHECK(classical_aut_trivial(petersen_graph(), 1) == AutVerdict::Unknown);
  CHECK(classical_aut_trivial(complete_graph(4), 0) == AutVerdict::Unknown);
}

TEST_CASE("automorphism search is consistent with distinct profiles") {
  // Distinct profiles force triviality; check consistency on random cubic
  // graphs large enough for a mix of outcomes.
  SeededRng rng(606u);
  for (int t = 0; t < 6; ++t) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(t));
    Graph g = sample_gnr(24, 3, local);
    auto profs = distance_profiles(g);
    if (distinct_profiles(profs)) {
      CHECK(classical_aut_trivial(g) == AutVerdict::Trivial);
    }
  }
}

TEST_CASE("rigidity certificates on the frozen small graphs") {
  RigidityCertificate spider = quantum_rigidity_certificate(spider_tree());
  CHECK(spider.spectrum_simple);
  CHECK(spider.thick);
  CHECK_FALSE(spider.no_zero_coordinates);
  CHECK(spider.distance_profiles_distinct);
  CHECK(spider.classical_aut == AutVerdict::Trivial);
  CHECK(spider.verdict == RigidityVerdict::QuantumTrivial);

  RigidityCertificate p3 = quantum_rigidity_certificate(path_graph(3));
  CHECK(p3.spectrum_simple);
  CHECK(p3.thick);
  CHECK(p3.classical_aut == AutVerdict::Nontrivial);
  CHECK(p3.verdict == RigidityVerdict::ClassicalTwoGroup);

  RigidityCertificate k2 =
      quantum_rigidity_certificate(Graph::from_edges(2, {{0, 1}}));
  CHECK(k2.spectrum_simple);
  CHECK(k2.thick);
  CHECK(k2.no_zero_coordinates);
  CHECK(k2.verdict == RigidityVerdict::ClassicalTwoGroup);

  RigidityCertificate c5 = quantum_rigidity_certificate(cycle_graph(5));
  CHECK_FALSE(c5.spectrum_simple);
  CHECK(c5.verdict == RigidityVerdict::Inconclusive);
}

TEST_CASE("a dense random graph is certified quantum-trivial") {
  SeededRng rng(1u);
  Graph g = sample_gnp(30, 0.5, rng);
  RigidityCertificate cert = quantum_rigidity_certificate(g);
  CHECK(cert.spectrum_simple);
  CHECK(cert.thick);
  CHECK(cert.classical_aut == AutVerdict::Trivial);
  CHECK(cert.verdict == RigidityVerdict::QuantumTrivial);
}

TEST_CASE("certificate verdicts always follow from their ingredients") {
  SeededRng rng(77u);
  std::vector<Graph> zoo = {path_graph(3), cycle_graph(5), spider_tree(),
                            complete_graph(4)};
  for (int t = 0; t < 4; ++t) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(t));
    zoo.push_back(sample_gnp(12, 0.4, local));
  }
  for (const Graph& g : zoo) {
    RigidityCertificate c = quantum_rigidity_certificate(g);
    bool chain = c.spectrum_simple && c.thick && c.classical_aut == AutVerdict::Trivial;
    if (c.verdict == RigidityVerdict::QuantumTrivial) {
      CHECK((chain || c.distance_profiles_distinct));
    } else if (c.verdict == RigidityVerdict::ClassicalTwoGroup) {
      CHECK(c.spectrum_simple);
      CHECK(c.thick);
      CHECK_FALSE(c.distance_profiles_distinct);
    }
  }
}

TEST_CASE("gm_switch builds the two apex graphs over complementary halves") {
  GmPair pair = gm_switch(cycle_graph(4), {0, 1});
  CHECK(pair.apex == 4);
  CHECK(pair.vprime == std::vector<int>{0, 1});
  CHECK(pair.vsecond == std::vector<int>{2, 3});

  REQUIRE(pair.gamma_prime.n == 5);
  REQUIRE(pair.gamma_second.n == 5);
  // The base graph is untouched.
  CHECK(pair.gamma_prime.adjacency.topLeftCorner(4, 4) == cycle_graph(4).adjacency);
  CHECK(pair.gamma_second.adjacency.topLeftCorner(4, 4) == cycle_graph(4).adjacency);
  // Apex adjacency rows.
  for (int v = 0; v < 4; ++v) {
    CHECK(pair.gamma_prime.has_edge(4, v) == (v < 2));
    CHECK(pair.gamma_second.has_edge(4, v) == (v >= 2));
  }
  validate_graph(pair.gamma_prime);
  validate_graph(pair.gamma_second);
  CHECK(isospectral_check(pair.gamma_prime, pair.gamma_second));
}

TEST_CASE("gm_switch validates its input") {
  CHECK_THROWS_AS(gm_switch(path_graph(4), {0, 1}), NotRegular);
  CHECK_THROWS_AS(gm_switch(cycle_graph(4), {0}), BadPartition);       // wrong size
  CHECK_THROWS_AS(gm_switch(cycle_graph(4), {0, 0}), BadPartition);    // duplicate
  CHECK_THROWS_AS(gm_switch(cycle_graph(4), {0, 7}), BadPartition);    // out of range
  CHECK_THROWS_AS(gm_switch(cycle_graph(5), {0, 1}), BadPartition);    // odd order
}

TEST_CASE("char_poly_integer matches the closed forms") {
  auto k2 = char_poly_integer(Graph::from_edges(2, {{0, 1}}));
  CHECK(k2 == std::vector<BigInt>{1, 0, -1});
  auto p3 = char_poly_integer(path_graph(3));
  CHECK(p3 == std::vector<BigInt>{1, 0, -2, 0});
  auto c4 = char_poly_integer(cycle_graph(4));
  CHECK(c4 == std::vector<BigInt>{1, 0, -4, 0, 0});
  auto k3 = char_poly_integer(complete_graph(3));
  CHECK(k3 == std::vector<BigInt>{1, 0, -3, -2});
}

TEST_CASE("char_poly_integer agrees with the cofactor determinant oracle") {
  SeededRng rng(17u);
  std::vector<Graph> graphs = {complete_graph(5), petersen_graph()};
  for (int t = 0; t < 6; ++t) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(t));
    graphs.push_back(sample_gnp(4 + t, 0.5, local));
  }
  for (const Graph& g : graphs) {
    auto coeffs = char_poly_integer(g);
    REQUIRE(static_cast<int>(coeffs.size()) == g.n + 1);
    CHECK(coeffs[0] == 1);
    // x^{n-1} coefficient is -Tr(A) = 0, x^{n-2} coefficient is -#edges.
    CHECK(coeffs[1] == 0);
    if (g.n >= 2) CHECK(coeffs[2] == -BigInt(g.edge_count()));
    for (long long x : {-3LL, -1LL, 0LL, 2LL, 5LL}) {
      if (g.n > 9) break;  // keep the O(n!) oracle cheap
      CHECK(eval_poly(coeffs, x) == char_poly_at(g, x));
    }
  }
}

TEST_CASE("isospectral_check distinguishes spectra and validates input") {
  CHECK_FALSE(isospectral_check(complete_graph(3), path_graph(3)));
  CHECK(isospectral_check(cycle_graph(4), cycle_graph(4)));
  CHECK_THROWS_AS(isospectral_check(complete_graph(3), complete_graph(4)),
                  DimensionMismatch);
}

TEST_CASE("obstruction on the 4-cycle is inconclusive") {
  ObstructionReport rep = quantum_isomorphism_obstruction(cycle_graph(4), {0, 1});
  CHECK(rep.isospectral);
  CHECK_FALSE(rep.apex_unique_max_degree);  // apex degree 2 < switched degree 3
  CHECK_FALSE(rep.base_quantum_trivial);    // C_4 is highly symmetric
  CHECK(rep.partitions_differ);
  CHECK(rep.verdict == ObstructionVerdict::Inconclusive);
}

TEST_CASE("obstruction certifies a frozen cubic instance") {
  SeededRng rng(2u);
  Graph g = sample_gnr(20, 3, rng);
  std::vector<int> half;
  for (int i = 0; i < 10; ++i) half.push_back(i);
  ObstructionReport rep = quantum_isomorphism_obstruction(g, half);
  CHECK(rep.isospectral);
  CHECK(rep.apex_unique_max_degree);  // apex degree 10 vs base degrees <= 4
  CHECK(rep.base_quantum_trivial);
  CHECK(rep.partitions_differ);
  CHECK(rep.verdict == ObstructionVerdict::NotQuantumIsomorphic);
}

TEST_CASE("obstruction stays inconclusive when the base is not certified") {
  SeededRng rng(1u);  // this cubic sample is not certified quantum-trivial
  Graph g = sample_gnr(20, 3, rng);
  std::vector<int> half;
  for (int i = 0; i < 10; ++i) half.push_back(i);
  ObstructionReport rep = quantum_isomorphism_obstruction(g, half);
  CHECK(rep.isospectral);
  CHECK(rep.apex_unique_max_degree);
  CHECK_FALSE(rep.base_quantum_trivial);
  CHECK(rep.verdict == ObstructionVerdict::Inconclusive);
}
