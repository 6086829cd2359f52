#pragma once

#include <vector>

#include "qglab/operator_system.hpp"

namespace qglab {

// Lie algebra of the stabilizer {U in PSU(n) : U V U* = V}: traceless
// skew-Hermitian H with [H, V] contained in V, computed as the SVD kernel of
// the real-linear system {(I - P_V)([H, B_j]) = 0 over the traceless basis
// elements B_j}.
//
// Numerical rank rule: sigma counts as zero iff
//   sigma < max(rows, n^2 - 1) * sigma_max * rank_rel  (strict).
// Degenerate edges follow from the rule itself: with no equations (dim V = 1)
// the kernel is the whole space; with an all-zero/noise constraint matrix
// (V = M_n) no sigma clears the strict cut, the system counts as full rank and
// the kernel is empty. The retained singular values expose such degeneracies.
struct StabilizerAlgebra {
  int n = 0;
  std::vector<ComplexMatrix> basis;      // orthonormal, traceless, skew-Hermitian
  std::vector<double> singular_values;   // descending (diagnostics of the rank cut)
  double rank_threshold = 0.0;
  // Smallest kept sigma over largest dropped sigma; over the threshold itself
  // when nothing was dropped; +inf when nothing was kept.
  double gap_ratio = 0.0;

  int dim() const { return static_cast<int>(basis.size()); }
};

StabilizerAlgebra stabilizer_lie_algebra(const OperatorSystem& v,
                                         double rank_rel = tol::rank_rel);

// All pairwise commutators below tolerance in Frobenius norm.
bool is_abelian(const StabilizerAlgebra& s, double tolerance = 1e-8);

// || U D - D U ||_F for the degree matrix D of V; every automorphism commutes
// with D. Throws NotUnitary when ||U* U - 1||_F > unitary_tol.
double degree_commutant_check(const OperatorSystem& v, const ComplexMatrix& u,
                              double unitary_tol = 1e-8);

// Group of diagonal unitaries preserving V, modulo scalars: a torus of the
// reported rank times the 2-group generated by the +-1 diagonal sign vectors.
struct DiagonalPhaseGroup {
  int torus_rank = 0;
  std::vector<RealVector> discrete_generators;  // entries +-1

  bool trivial() const { return torus_rank == 0 && discrete_generators.empty(); }
};

// Requires a basis in which only diagonal unitaries are automorphism
// candidates (e.g. the eigenbasis of a simple-spectrum degree matrix).
// Propagates the entrywise constraints u_i conj(u_j) (B_k)_ij over the
// combined support pattern: basis elements must split into pure-diagonal and
// pure-off-diagonal parts, and each off-diagonal support block must reduce to
// single-element blocks (shared +-1 sign across the block's entries) or full
// matrix-unit pair blocks (no constraint); the phase system is then solved
// over the support graph (continuous part) and GF(2) (sign part).  Throws
// UnsupportedPattern when the basis does not reduce; callers fall back to
// discrete_aut_search.
DiagonalPhaseGroup diagonal_phase_solver(const OperatorSystem& v);

struct AutCandidate {
  ComplexMatrix u;                    // phase-canonicalized representative
  double residual = 0.0;              // sum_j ||(I - P_V)(U B_j U*)||^2
  double distance_from_scalars = 0.0; // min over phases of ||U - e^{i phi} 1||_F
};

struct AutSearchReport {
  std::vector<AutCandidate> candidates;  // residual < search_tol, deduplicated,
                                         // sorted by (residual, lexicographic U)
  int restarts = 0;
  double converged_fraction = 0.0;
  // True when the objective vanishes at random probe points, i.e. every
  // unitary is an automorphism (V = M_n or span{1}).
  bool full_stabilizer = false;

  bool nonscalar_found(double scalar_tol = 1e-6) const;
};

// Multistart projected gradient descent for f(U) = sum_j ||(I-P_V)(U B_j U*)||^2
// over the unitary group (QR retraction, step halving; stop at gradient norm
// < 1e-12 or 500 iterations). Deterministic for fixed (seed, stream) and any
// worker count.
AutSearchReport discrete_aut_search(const OperatorSystem& v, int restarts,
                                    SeededRng& rng, double search_tol = 1e-10,
                                    unsigned workers = 1);

struct AutomorphismResiduals {
  // sum_j ||(I - P_V)(U B_j U*)||^2 over the stored basis.
  double span_residual_sq = 0.0;
  // ||U* A(x) U - A(U* x U)||^2 as a superoperator, scaled by 1/(2 n^2); the
  // two forms agree exactly up to rounding.
  double adjacency_residual_sq = 0.0;
};

// Throws NotUnitary when ||U* U - 1||_F > unitary_tol.
AutomorphismResiduals verify_automorphism(const OperatorSystem& v,
                                          const ComplexMatrix& u,
                                          double unitary_tol = 1e-8);

}  // namespace qglab
