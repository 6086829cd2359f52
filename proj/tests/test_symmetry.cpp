#include <cmath>
#include <vector>

#include "doctest.h"
#include "qglab/errors.hpp"
#include "qglab/random_models.hpp"
#include "qglab/symmetry.hpp"
#include "test_helpers.hpp"

using namespace qglab;
using qglab::testing::dist;
using qglab::testing::permutation_matrix;
using qglab::testing::random_hermitian;
using qglab::testing::random_unitary;

namespace {

// For V = span{1, X} the stabilizer is the traceless skew-Hermitian commutant
// of X: block u(m_k) per eigenvalue cluster, so dim = sum m_k^2 - 1.
int commutant_dim_oracle(const ComplexMatrix& x) {
  Eig e = eig_hermitian(x);
  const double spread = e.values(e.values.size() - 1) - e.values(0);
  const double cut = tol::gap * std::max(1.0, spread);
  int dim = -1;
  int run = 1;
  for (int i = 1; i <= e.values.size(); ++i) {
    if (i < e.values.size() && e.values(i) - e.values(i - 1) <= cut) {
      ++run;
    } else {
      dim += run * run;
      run = 1;
    }
  }
  return dim;
}

}  // namespace

TEST_CASE("stabilizer basis elements are traceless skew-Hermitian and stabilize") {
  SeededRng rng(41u);
  OperatorSystem v = sample_qg_nd(4, 1, rng);
  StabilizerAlgebra s = stabilizer_lie_algebra(v);
  REQUIRE(s.dim() == 3);
  for (const auto& h : s.basis) {
    CHECK(std::abs(h.trace()) < 1e-10);
    CHECK(dist(h, -h.adjoint()) < 1e-10);
    // [H, B_j] stays inside V for every basis element.
    for (const auto& b : v.basis) {
      ComplexMatrix c = h * b - b * h;
      CHECK((c - project(v, c)).norm() < 1e-8);
    }
  }
  // Orthonormal with respect to Re Tr(A* B).
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      double g = trace_inner(s.basis[i], s.basis[j]).real();
      CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
}

TEST_CASE("single-generator stabilizers match the eigenspace commutant") {
  SeededRng rng(4242u);
  for (int t = 0; t < 30; ++t) {
    int n = 3 + static_cast<int>(t % 3);
    SeededRng local = rng.derive(static_cast<std::uint64_t>(t));
    OperatorSystem v = sample_qg_nd(n, 1, local);
    StabilizerAlgebra s = stabilizer_lie_algebra(v);
    CHECK(s.dim() == commutant_dim_oracle(v.basis[1]));
    CHECK(s.dim() == n - 1);  // GUE generators have simple spectrum
    CHECK(is_abelian(s));
  }
}

TEST_CASE("a degenerate generator produces the nonabelian block commutant") {
  ComplexMatrix x = ComplexMatrix::Zero(3, 3);
  x(0, 0) = 1.0;
  x(1, 1) = 1.0;
  x(2, 2) = -2.0;
  OperatorSystem v = from_generators(3, {x});
  StabilizerAlgebra s = stabilizer_lie_algebra(v);
  CHECK(s.dim() == 4);  // u(2) + u(1), traceless: 2^2 + 1 - 1
  CHECK(s.dim() == commutant_dim_oracle(v.basis[1]));
  CHECK_FALSE(is_abelian(s));
}

TEST_CASE("stabilizer dimensions at the extreme dimensions are exact") {
  SeededRng rng(77u);
  for (int n : {3, 4, 5}) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(n));

    StabilizerAlgebra bottom = stabilizer_lie_algebra(sample_qg_nd(n, 0, local));
    CHECK(bottom.dim() == n * n - 1);  // every traceless H stabilizes span{1}
    CHECK(std::isinf(bottom.gap_ratio));

    StabilizerAlgebra top =
        stabilizer_lie_algebra(sample_qg_nd(n, n * n - 1, local));
    CHECK(top.dim() == 0);  // V = M_n leaves only scalars

    StabilizerAlgebra d1 = stabilizer_lie_algebra(sample_qg_nd(n, 1, local));
    CHECK(d1.dim() == n - 1);
    CHECK(is_abelian(d1));

    StabilizerAlgebra codim =
        stabilizer_lie_algebra(sample_qg_nd(n, n * n - 2, local));
    CHECK(codim.dim() == n - 1);
    CHECK(is_abelian(codim));
  }
}

TEST_CASE("span{1} has the full nonabelian stabilizer") {
  OperatorSystem v = from_generators(3, {});
  StabilizerAlgebra s = stabilizer_lie_algebra(v);
  CHECK(s.dim() == 8);
  CHECK_FALSE(is_abelian(s));  // su(3)
}

TEST_CASE("generic mid-range systems have trivial stabilizer with a clean cut") {
  SeededRng rng(1001u);
  for (int t = 0; t < 10; ++t) {
    SeededRng local = rng.derive(static_cast<std::uint64_t>(t));
    OperatorSystem v = sample_qg_nd(4, 5 + (t % 5), local);
    StabilizerAlgebra s = stabilizer_lie_algebra(v);
    CHECK(s.dim() == 0);
    CHECK(s.gap_ratio > 1e4);
  }
}

TEST_CASE("stabilizer dimension is invariant under orthogonal complement") {
  SeededRng rng(303u);
  for (int t = 0; t < 8; ++t) {
    int n = 3 + (t % 2);
    SeededRng local = rng.derive(static_cast<std::uint64_t>(t));
    int d = 1 + static_cast<int>(local.next_below(n * n - 2));
    OperatorSystem v = sample_qg_nd(n, d, local);
    OperatorSystem w = orthogonal_complement_system(v);
    CHECK(stabilizer_lie_algebra(v).dim() == stabilizer_lie_algebra(w).dim());
  }
}

TEST_CASE("graph systems carry exactly the diagonal phase torus") {
  for (auto [g, expected] : std::vector<std::pair<Graph, int>>{
           {cycle_graph(4), 3},
           {path_graph(3), 2},
           {Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}), 3},
           {cycle_graph(5), 4}}) {
    OperatorSystem v = from_graph(g);
    StabilizerAlgebra s = stabilizer_lie_algebra(v);
    CHECK(s.dim() == expected);
    CHECK(is_abelian(s));
  }
}

TEST_CASE("degree_commutant_check measures commutation with the degree matrix") {
  // Star graph: D = diag(16, 8, 8, 8).
  OperatorSystem v = from_graph(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
  ComplexMatrix swap_leaves = permutation_matrix({0, 2, 1, 3});
  CHECK(degree_commutant_check(v, swap_leaves) < 1e-12);
  ComplexMatrix shift = permutation_matrix({1, 2, 3, 0});
  CHECK(degree_commutant_check(v, shift) > 1.0);

  ComplexMatrix not_unitary = 2.0 * ComplexMatrix::Identity(4, 4);
  CHECK_THROWS_AS(degree_commutant_check(v, not_unitary), NotUnitary);
}

TEST_CASE("verify_automorphism agrees between the span and adjacency forms") {
  SeededRng rng(55u);
  OperatorSystem v = sample_qg_nd(3, 4, rng);
  for (int t = 0; t < 5; ++t) {
    ComplexMatrix u = random_unitary(3, rng);
    AutomorphismResiduals r = verify_automorphism(v, u);
    CHECK(std::abs(r.span_residual_sq - r.adjacency_residual_sq) <
          1e-10 * std::max(1.0, r.span_residual_sq));
    CHECK(r.span_residual_sq > 1e-4);  // a random unitary is far from Aut(V)
  }
  CHECK_THROWS_AS(verify_automorphism(v, 0.5 * ComplexMatrix::Identity(3, 3)),
                  NotUnitary);
}

TEST_CASE("graph symmetries are automorphisms of the graph system") {
  OperatorSystem v = from_graph(cycle_graph(4));
  ComplexMatrix rot = permutation_matrix({1, 2, 3, 0});
  AutomorphismResiduals r = verify_automorphism(v, rot);
  CHECK(r.span_residual_sq < 1e-18);
  CHECK(r.adjacency_residual_sq < 1e-18);

  // A non-symmetry of the path is rejected by the residual.
  OperatorSystem p = from_graph(path_graph(4));
  ComplexMatrix bad = permutation_matrix({1, 0, 2, 3});
  CHECK(verify_automorphism(p, bad).span_residual_sq > 0.1);
}

TEST_CASE("diagonal_phase_solver on the diagonal subalgebra is a free torus") {
  OperatorSystem v = from_relation(Eigen::MatrixXi::Identity(3, 3));
  DiagonalPhaseGroup g = diagonal_phase_solver(v);
  CHECK(g.torus_rank == 2);
  CHECK(g.discrete_generators.empty());
  CHECK_FALSE(g.trivial());
}

TEST_CASE("diagonal_phase_solver finds the sign group of span{1, f_12}") {
  OperatorSystem v = from_generators(2, {hermitian_basis_f(1, 2, 2)});
  DiagonalPhaseGroup g = diagonal_phase_solver(v);
  CHECK(g.torus_rank == 0);
  REQUIRE(g.discrete_generators.size() == 1);
  const RealVector& s = g.discrete_generators[0];
  CHECK(s(0) * s(1) == doctest::Approx(-1.0));  // relative sign flip
}

TEST_CASE("diagonal_phase_solver handles a shared-sign two-pair element") {
  ComplexMatrix y = hermitian_basis_f(1, 2, 3) + hermitian_basis_f(1, 3, 3);
  OperatorSystem v = from_generators(3, {y});
  DiagonalPhaseGroup g = diagonal_phase_solver(v);
  CHECK(g.torus_rank == 0);
  REQUIRE(g.discrete_generators.size() == 1);
  const RealVector& s = g.discrete_generators[0];
  CHECK(s(0) * s(1) == doctest::Approx(-1.0));
  CHECK(s(1) * s(2) == doctest::Approx(1.0));
}

TEST_CASE("diagonal_phase_solver reports a free torus on graph systems") {
  DiagonalPhaseGroup g = diagonal_phase_solver(from_graph(cycle_graph(4)));
  CHECK(g.torus_rank == 3);
  CHECK(g.discrete_generators.empty());
}

TEST_CASE("diagonal_phase_solver is trivial on the explicit rigid tuple") {
  SeededRng rng(9u);
  DiagonalPhaseGroup g = diagonal_phase_solver(explicit_rigid_tuple(7, 8, rng));
  CHECK(g.trivial());
  SeededRng rng6(9u);
  DiagonalPhaseGroup g6 = diagonal_phase_solver(explicit_rigid_tuple(6, 8, rng6));
  CHECK(g6.trivial());
}

TEST_CASE("diagonal_phase_solver rejects mixed diagonal/off-diagonal elements") {
  ComplexMatrix mixed = hermitian_basis_f(1, 2, 2);
  mixed(0, 0) = 1.0;
  mixed(1, 1) = -1.0;
  OperatorSystem v = from_generators(2, {mixed});
  CHECK_THROWS_AS(diagonal_phase_solver(v), UnsupportedPattern);
}

TEST_CASE("discrete_aut_search flags full stabilizers") {
  SeededRng rng(71u);
  AutSearchReport all = discrete_aut_search(from_graph(complete_graph(2)), 2, rng);
  CHECK(all.full_stabilizer);
  SeededRng rng2(71u);
  AutSearchReport scalar_only = discrete_aut_search(from_generators(3, {}), 2, rng2);
  CHECK(scalar_only.full_stabilizer);
}

TEST_CASE("discrete_aut_search finds nonscalar symmetries of the 4-cycle system") {
  SeededRng rng(123u);
  OperatorSystem v = from_graph(cycle_graph(4));
  AutSearchReport report = discrete_aut_search(v, 6, rng);
  CHECK_FALSE(report.full_stabilizer);
  CHECK(report.nonscalar_found());
  REQUIRE_FALSE(report.candidates.empty());
  for (const auto& c : report.candidates) {
    CHECK(c.residual < 1e-10);
    CHECK(verify_automorphism(v, c.u).span_residual_sq < 1e-8);
  }
}

TEST_CASE("discrete_aut_search finds only scalars on the rigid tuple") {
  SeededRng system_rng(15u);
  OperatorSystem v = explicit_rigid_tuple(7, 8, system_rng);
  SeededRng rng(16u);
  AutSearchReport report = discrete_aut_search(v, 6, rng);
  CHECK_FALSE(report.full_stabilizer);
  CHECK_FALSE(report.nonscalar_found());
  CHECK(report.restarts == 6);
  CHECK(report.converged_fraction > 0.0);
}

TEST_CASE("discrete_aut_search is deterministic across worker counts") {
  OperatorSystem v = from_graph(path_graph(3));
  SeededRng a(5u), b(5u);
  AutSearchReport r1 = discrete_aut_search(v, 4, a, 1e-10, 1);
  AutSearchReport r4 = discrete_aut_search(v, 4, b, 1e-10, 4);
  REQUIRE(r1.candidates.size() == r4.candidates.size());
  for (std::size_t i = 0; i < r1.candidates.size(); ++i) {
    CHECK(dist(r1.candidates[i].u, r4.candidates[i].u) == 0.0);
  }
  CHECK(r1.converged_fraction == r4.converged_fraction);
}
