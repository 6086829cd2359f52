#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "qglab/errors.hpp"
#include "qglab/rng.hpp"

namespace qglab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Pinned tolerances. Every check in the library routes through these values;
// they are deliberately constants rather than knobs so that reported results
// mean the same thing everywhere.
namespace tol {
// Algebraic identities that should hold to machine precision.
inline constexpr double num = 1e-12;
// Hermiticity: ||X - X*||_F <= herm_rel * ||X||_F.
inline constexpr double herm_rel = 1e-10;
// Eigenvalue comparisons.
inline constexpr double eig = 1e-9;
// Spectral gap / distinctness threshold, relative to max(1, spread).
inline constexpr double gap = 1e-8;
// Residual bound for the multiplication/CP/symmetry laws.
inline constexpr double law = 1e-9;
// SVD rank cut: sigma counts as zero when sigma < max(rows, cols) * sigma_max * rank_rel.
inline constexpr double rank_rel = 1e-10;
// Eigenvector coordinate counts as zero below zero_coord_rel * max |coordinate|.
inline constexpr double zero_coord_rel = 1e-8;
// Default Gram-Schmidt residual floor.
inline constexpr double rank_default = 1e-8;
}  // namespace tol

// Hilbert-Schmidt inner product Tr(A* B), conjugate-linear in the first slot.
Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b);

// Normalized trace functional tau(x) = n Tr(x), so tau(1) = n^2.
Complex tau(const ComplexMatrix& x);

double frobenius_norm(const ComplexMatrix& x);

bool is_hermitian(const ComplexMatrix& x, double rel_tol = tol::herm_rel);

// X - (Tr X / n) * 1.
ComplexMatrix make_traceless(const ComplexMatrix& x);

// One modified-Gram-Schmidt sweep plus one re-orthogonalization pass of v
// against an already orthonormal list; returns the normalized residual, or
// nullopt when the residual norm falls below tol_rank.
std::optional<ComplexMatrix> try_orthonormalize(
    ComplexMatrix v, const std::vector<ComplexMatrix>& basis, double tol_rank);

// Orthonormalizes the tuple in order (modified Gram-Schmidt with one
// re-orthogonalization pass). Throws LinearlyDependent when a vector's
// residual norm drops below tol_rank, DimensionMismatch on ragged input.
std::vector<ComplexMatrix> gram_schmidt(const std::vector<ComplexMatrix>& tuple,
                                        double tol_rank = tol::rank_default);

// Hermitian matrix-unit combinations, 1-indexed, i != j:
//   i < j:  (e_ij + e_ji) / sqrt(2)
//   i > j:  (i / sqrt(2)) (e_ij - e_ji)
// Unit Frobenius norm; f^2 = (e_ii + e_jj) / 2.
ComplexMatrix hermitian_basis_f(int i, int j, int n);

// The n-1 orthonormal traceless diagonal matrices
//   d_k = diag(1, ..., 1, -k, 0, ..., 0) / sqrt(k (k + 1)),  k = 1..n-1.
std::vector<ComplexMatrix> diag_traceless_basis(int n);

// Orthonormal basis of the traceless Hermitian space, size n^2 - 1, in the
// fixed order: for each pair i < j (lexicographic) f_ij then f_ji, followed by
// diag_traceless_basis.
std::vector<ComplexMatrix> traceless_hermitian_basis(int n);

// Real coordinates of a traceless Hermitian matrix in
// traceless_hermitian_basis(n); inverse of coords_to_traceless_hermitian.
RealVector traceless_hermitian_coords(const ComplexMatrix& x);
ComplexMatrix coords_to_traceless_hermitian(const RealVector& coords, int n);

// Traceless GUE draw for the density exp(-Tr X^2): diagonal entries
// N(0, 1/2), real and imaginary parts of off-diagonal entries N(0, 1/4),
// sampled in the fixed order (diagonal ascending, then upper triangle
// row-major), conjugate-filled and projected traceless.
ComplexMatrix sample_gue_traceless(int n, SeededRng& rng);

struct Eig {
  RealVector values;        // ascending
  ComplexMatrix vectors;    // columns, orthonormal, aligned with values
};

// Hermitian eigendecomposition; throws NotHermitian when
// ||X - X*||_F > herm_rel * ||X||_F.
Eig eig_hermitian(const ComplexMatrix& x);

// True when every consecutive gap of the ascending list exceeds
// gap_tol * max(1, spread).
bool simple_spectrum(const RealVector& ascending_values, double gap_tol = tol::gap);

}  // namespace qglab
