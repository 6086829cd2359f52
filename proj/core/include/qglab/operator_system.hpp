#pragma once

#include <vector>

#include "qglab/graph.hpp"
#include "qglab/matrix.hpp"

namespace qglab {

// Self-adjoint unital subspace V of M_n, stored as an orthonormal (w.r.t.
// Tr(A*B)) Hermitian basis with basis[0] = 1/sqrt(n) and every later element
// traceless.  The real span of the basis is V's Hermitian part; its complex
// span is V itself.
struct OperatorSystem {
  int n = 0;
  std::vector<ComplexMatrix> basis;

  int dim() const { return static_cast<int>(basis.size()); }
};

// Throws when the stored basis violates the invariants above (used by the
// JSON loader and available to tests).
void validate_operator_system(const OperatorSystem& v, double tolerance = 1e-8);

// Builds span{1, gens...}: tracelessizes the generators, drops the ones that
// tracelessize to (near) zero, prepends 1/sqrt(n), Gram-Schmidts the rest.
// Throws NotHermitian for non-Hermitian generators, LinearlyDependent when a
// nonzero generator is dependent on its predecessors.
OperatorSystem from_generators(int n, const std::vector<ComplexMatrix>& generators,
                               double tol_rank = tol::rank_default);

// Operator system of a reflexive symmetric 0/1 relation: the span of the
// matrix units e_ij over related pairs. Throws NotReflexive / NotSymmetric.
OperatorSystem from_relation(const Eigen::MatrixXi& relation);

// Same, for a simple graph: reflexive loops are added here, on conversion.
OperatorSystem from_graph(const Graph& g);

// Orthogonal projection onto V (complex span): P x = sum_i A_i Tr(A_i* x).
ComplexMatrix project(const OperatorSystem& v, const ComplexMatrix& x);

// ||x - project(v, x)||_F <= tolerance.
bool contains(const OperatorSystem& v, const ComplexMatrix& x,
              double tolerance = 1e-8);

// Column-stacking vectorization: vec(X)(i + n j) = X(i, j).
ComplexVector vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexVector& v, int n);

// Kronecker product; (A kron B)(a n2 + c, b n2 + d) = A(a,b) B(c,d).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Linear map M_n -> M_n carried both as the n^2 x n^2 matrix acting on
// column-stacked vectorizations and as the Choi matrix
//   choi_form = (1/n) sum_ij T(e_ij) (x) e_ij
// (Kronecker form; for a quantum adjacency matrix this is exactly the
// projection onto V viewed inside M_n (x) M_n^op, so it is idempotent and
// self-adjoint as an ordinary matrix).  The two forms are related by the
// reshuffle choi(a n + c, b n + d) = matrix(a + n b, c + n d) / n.
struct Superoperator {
  int n = 0;
  ComplexMatrix matrix_form;
  ComplexMatrix choi_form;

  ComplexMatrix apply(const ComplexMatrix& x) const;

  static Superoperator from_matrix_form(int n, ComplexMatrix matrix_form);
};

ComplexMatrix choi_from_matrix_form(int n, const ComplexMatrix& matrix_form);
ComplexMatrix matrix_form_from_choi(int n, const ComplexMatrix& choi);

// Matrix of the comultiplication adjoint m*: M_n -> M_n (x) M_n,
//   m*(e_ij) = (1/n) sum_k e_ik (x) e_kj,
// with column-stacked bases on both sides (n^4 x n^2).
ComplexMatrix mult_adjoint_matrix(int n);

// Matrix of multiplication m: M_n (x) M_n -> M_n, m(a (x) b) = a b (n^2 x n^4).
ComplexMatrix mult_matrix(int n);

// Quantum adjacency matrix of V: A(x) = n sum_i A_i x A_i* over the full
// orthonormal basis (identity element included).
Superoperator quantum_adjacency(const OperatorSystem& v);

// Same construction from a raw Hermitian family (not necessarily a unital
// system); used to probe the laws on non-examples.
Superoperator adjacency_from_hermitian_family(int n,
                                              const std::vector<ComplexMatrix>& family);

// Relative residual || m (A (x) A) m* - A || / || A ||, evaluated via
// L(e_ij) = (1/n) sum_k A(e_ik) A(e_kj).
double check_idempotent_law(const Superoperator& a);

// Minimal eigenvalue of the Hermitian part of choi_form (>= -tol for a
// completely positive map).
double check_cp(const Superoperator& a);

// Self-adjointness w.r.t. the tau inner product, computed as
// || M - M* ||_F / max(1, ||M||_F) on matrix_form.
double check_symmetric(const Superoperator& a);

// || m (A (x) id) m* (1) - 1 ||_F = || (1/n) sum_ik A(e_ik) e_ki - 1 ||_F.
double check_reflexive(const Superoperator& a);

// D = A(1) = n sum_i A_i^2; positive semidefinite with Tr(D)/n = dim V.
ComplexMatrix degree_matrix(const OperatorSystem& v);

// span{1} + (orthogonal complement of V's traceless part inside the traceless
// Hermitian space); dim = n^2 - dim V + 1.
OperatorSystem orthogonal_complement_system(const OperatorSystem& v);

// k orthonormal traceless diagonal matrices u_1..u_k such that
// lambda + n sum_j u_j^2 has all-distinct diagonal entries, found by rejection
// sampling (throws ExhaustedRetries after max_retries attempts).
// Requires 1 <= k <= n - 2.
std::vector<ComplexMatrix> diag_tuple_for_simple_spectrum(int n, int k,
                                                          const RealVector& lambda,
                                                          SeededRng& rng,
                                                          int max_retries = 100);

// Deterministic d-tuple system with trivial automorphism group: the seed
// matrices
//   n >= 7: X1 = sum f_{2i,2i+1}, X2 = sum f_{2i-1,2i}, Y = f_14 + f_25 + f_37
//   n == 6: X1 = f_12 + f_34 + f_56, X2 = f_23 + f_45 + f_16, Y = f_15 + f_36
// filled with unused f_ij (lexicographic, avoiding entries the seeds touch)
// and min(n-2, d-3) diagonal matrices from diag_tuple_for_simple_spectrum.
// For d beyond the direct fill capacity n^2-2n-3 the system is built as the
// orthogonal complement of the direct tuple for n^2-1-d.  The degree matrix
// is diagonal with simple spectrum.  Requires n >= 6 and 4 <= d <= n^2 - 5.
OperatorSystem explicit_rigid_tuple(int n, int d, SeededRng& rng);

}  // namespace qglab
