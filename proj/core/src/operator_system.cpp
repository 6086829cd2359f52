#include "qglab/operator_system.hpp"

#include <cmath>
#include <string>

namespace qglab {

namespace {

ComplexMatrix identity_over_sqrt_n(int n) {
  return ComplexMatrix::Identity(n, n) / std::sqrt(static_cast<double>(n));
}

ComplexMatrix matrix_unit(int n, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

void validate_operator_system(const OperatorSystem& v, double tolerance) {
  if (v.n < 1) throw ParameterOutOfRange("OperatorSystem: n must be positive");
  if (v.basis.empty()) throw Error("OperatorSystem: basis must contain 1/sqrt(n)");
  if (v.dim() > v.n * v.n) throw Error("OperatorSystem: dim exceeds n^2");
  for (const auto& b : v.basis) {
    if (b.rows() != v.n || b.cols() != v.n) {
      throw DimensionMismatch("OperatorSystem: basis element has wrong shape");
    }
    if (!is_hermitian(b, tolerance)) {
      throw NotHermitian("OperatorSystem: basis element is not Hermitian");
    }
  }
  if ((v.basis[0] - identity_over_sqrt_n(v.n)).norm() > tolerance) {
    throw Error("OperatorSystem: basis[0] must equal 1/sqrt(n)");
  }
  for (std::size_t a = 0; a < v.basis.size(); ++a) {
    if (a > 0 && std::abs(v.basis[a].trace()) > tolerance) {
      throw Error("OperatorSystem: basis element " + std::to_string(a) +
                  " is not traceless");
    }
    for (std::size_t b = a; b < v.basis.size(); ++b) {
      const Complex g = trace_inner(v.basis[a], v.basis[b]);
      const double expected = (a == b) ? 1.0 : 0.0;
      if (std::abs(g - expected) > tolerance) {
        throw Error("OperatorSystem: basis is not orthonormal at pair (" +
                    std::to_string(a) + ", " + std::to_string(b) + ")");
      }
    }
  }
}

OperatorSystem from_generators(int n, const std::vector<ComplexMatrix>& generators,
                               double tol_rank) {
  if (n < 1) throw ParameterOutOfRange("from_generators: n must be positive");
  OperatorSystem v;
  v.n = n;
  v.basis.push_back(identity_over_sqrt_n(n));
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    if (g.rows() != n || g.cols() != n) {
      throw DimensionMismatch("from_generators: generator " + std::to_string(k) +
                              " has wrong shape");
    }
    if (!is_hermitian(g)) {
      throw NotHermitian("from_generators: generator " + std::to_string(k) +
                         " is not Hermitian");
    }
    ComplexMatrix t = make_traceless(g);
    if (t.norm() < tol_rank) continue;  // scalar part only; already spanned by 1
    auto next = try_orthonormalize(std::move(t), v.basis, tol_rank);
    if (!next) {
      throw LinearlyDependent("from_generators: generator " + std::to_string(k) +
                              " is dependent on earlier generators");
    }
    v.basis.push_back(std::move(*next));
  }
  return v;
}

OperatorSystem from_relation(const Eigen::MatrixXi& relation) {
  const int n = static_cast<int>(relation.rows());
  if (relation.cols() != n || n < 1) {
    throw DimensionMismatch("from_relation: relation must be square");
  }
  for (int i = 0; i < n; ++i) {
    if (relation(i, i) != 1) {
      throw NotReflexive("from_relation: missing loop at vertex " + std::to_string(i + 1));
    }
    for (int j = 0; j < n; ++j) {
      const int r = relation(i, j);
      if (r != 0 && r != 1) {
        throw ParameterOutOfRange("from_relation: entries must be 0/1");
      }
      if (r != relation(j, i)) {
        throw NotSymmetric("from_relation: relation is not symmetric");
      }
    }
  }
  OperatorSystem v;
  v.n = n;
  v.basis.push_back(identity_over_sqrt_n(n));
  for (auto& d : diag_traceless_basis(n)) v.basis.push_back(std::move(d));
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      if (relation(i - 1, j - 1) != 0) {
        v.basis.push_back(hermitian_basis_f(i, j, n));
        v.basis.push_back(hermitian_basis_f(j, i, n));
      }
    }
  }
  return v;
}

OperatorSystem from_graph(const Graph& g) {
  validate_graph(g);
  Eigen::MatrixXi relation = g.adjacency;
  relation.diagonal().setOnes();
  return from_relation(relation);
}

ComplexMatrix project(const OperatorSystem& v, const ComplexMatrix& x) {
  if (x.rows() != v.n || x.cols() != v.n) {
    throw DimensionMismatch("project: matrix shape does not match the system");
  }
  ComplexMatrix out = ComplexMatrix::Zero(v.n, v.n);
  for (const auto& b : v.basis) out += trace_inner(b, x) * b;
  return out;
}

bool contains(const OperatorSystem& v, const ComplexMatrix& x, double tolerance) {
  return (x - project(v, x)).norm() <= tolerance;
}

ComplexVector vec(const ComplexMatrix& x) {
  return Eigen::Map<const ComplexVector>(x.data(), x.size());
}

ComplexMatrix unvec(const ComplexVector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionMismatch("unvec: vector length is not n^2");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix Superoperator::apply(const ComplexMatrix& x) const {
  if (x.rows() != n || x.cols() != n) {
    throw DimensionMismatch("Superoperator::apply: matrix shape mismatch");
  }
  return unvec(matrix_form * vec(x), n);
}

Superoperator Superoperator::from_matrix_form(int n, ComplexMatrix matrix_form) {
  if (matrix_form.rows() != static_cast<Eigen::Index>(n) * n ||
      matrix_form.cols() != static_cast<Eigen::Index>(n) * n) {
    throw DimensionMismatch("Superoperator: matrix_form must be n^2 x n^2");
  }
  Superoperator s;
  s.n = n;
  s.choi_form = choi_from_matrix_form(n, matrix_form);
  s.matrix_form = std::move(matrix_form);
  return s;
}

ComplexMatrix choi_from_matrix_form(int n, const ComplexMatrix& m) {
  ComplexMatrix c(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  const double inv_n = 1.0 / n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d)
          c(a * n + cc, b * n + d) = inv_n * m(a + n * b, cc + n * d);
  return c;
}

ComplexMatrix matrix_form_from_choi(int n, const ComplexMatrix& choi) {
  ComplexMatrix m(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d)
          m(a + n * b, cc + n * d) = static_cast<double>(n) * choi(a * n + cc, b * n + d);
  return m;
}

ComplexMatrix mult_adjoint_matrix(int n) {
  ComplexMatrix out = ComplexMatrix::Zero(
      static_cast<Eigen::Index>(n) * n * n * n, static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ComplexMatrix image = ComplexMatrix::Zero(static_cast<Eigen::Index>(n) * n,
                                                static_cast<Eigen::Index>(n) * n);
      for (int k = 0; k < n; ++k) {
        image += kron(matrix_unit(n, i, k), matrix_unit(n, k, j));
      }
      out.col(i + n * j) = vec(image) / static_cast<double>(n);
    }
  }
  return out;
}

ComplexMatrix mult_matrix(int n) {
  ComplexMatrix out = ComplexMatrix::Zero(
      static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n * n * n);
  // m(e_ab (x) e_cd) = e_ab e_cd = delta_bc e_ad; column index is the
  // vectorization of the Kronecker matrix e_ab (x) e_cd.
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int cc = 0; cc < n; ++cc)
        for (int d = 0; d < n; ++d) {
          if (b != cc) continue;
          const Eigen::Index row = a * n + cc;           // row of the n^2 Kron matrix
          const Eigen::Index col = b * n + d;            // col of the n^2 Kron matrix
          const Eigen::Index kron_vec_index = row + static_cast<Eigen::Index>(n) * n * col;
          out(a + n * d, kron_vec_index) += 1.0;
        }
  return out;
}

Superoperator quantum_adjacency(const OperatorSystem& v) {
  return adjacency_from_hermitian_family(v.n, v.basis);
}

Superoperator adjacency_from_hermitian_family(int n,
                                              const std::vector<ComplexMatrix>& family) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(n) * n,
                                        static_cast<Eigen::Index>(n) * n);
  for (const auto& a : family) {
    if (a.rows() != n || a.cols() != n) {
      throw DimensionMismatch("adjacency_from_hermitian_family: wrong shape");
    }
    // x -> A x A* has matrix (conj A) (x) A for column-stacked vec.
    m += kron(a.conjugate(), a);
  }
  return Superoperator::from_matrix_form(n, static_cast<double>(n) * m);
}

double check_idempotent_law(const Superoperator& a) {
  const int n = a.n;
  // Cache A(e_ij) once.
  std::vector<ComplexMatrix> image(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      image[i + static_cast<std::size_t>(n) * j] = a.apply(matrix_unit(n, i, j));
  ComplexMatrix law = ComplexMatrix::Zero(a.matrix_form.rows(), a.matrix_form.cols());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      ComplexMatrix out = ComplexMatrix::Zero(n, n);
      for (int k = 0; k < n; ++k) {
        out += image[i + static_cast<std::size_t>(n) * k] *
               image[k + static_cast<std::size_t>(n) * j];
      }
      law.col(i + n * j) = vec(out) / static_cast<double>(n);
    }
  }
  const double scale = a.matrix_form.norm();
  if (scale == 0.0) return law.norm();
  return (law - a.matrix_form).norm() / scale;
}

double check_cp(const Superoperator& a) {
  const ComplexMatrix herm = 0.5 * (a.choi_form + a.choi_form.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(herm);
  if (solver.info() != Eigen::Success) throw Error("check_cp: eigensolver failed");
  return solver.eigenvalues()(0);
}

double check_symmetric(const Superoperator& a) {
  const double scale = std::max(1.0, a.matrix_form.norm());
  return (a.matrix_form - a.matrix_form.adjoint()).norm() / scale;
}

double check_reflexive(const Superoperator& a) {
  const int n = a.n;
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      acc += a.apply(matrix_unit(n, i, k)) * matrix_unit(n, k, i);
    }
  }
  acc /= static_cast<double>(n);
  return (acc - ComplexMatrix::Identity(n, n)).norm();
}

ComplexMatrix degree_matrix(const OperatorSystem& v) {
  ComplexMatrix d = ComplexMatrix::Zero(v.n, v.n);
  for (const auto& b : v.basis) d += b * b;
  return static_cast<double>(v.n) * d;
}

OperatorSystem orthogonal_complement_system(const OperatorSystem& v) {
  const int n = v.n;
  const Eigen::Index full = static_cast<Eigen::Index>(n) * n - 1;
  const int d = v.dim() - 1;
  OperatorSystem out;
  out.n = n;
  out.basis.push_back(identity_over_sqrt_n(n));
  if (d == 0) {
    for (auto& b : traceless_hermitian_basis(n)) out.basis.push_back(std::move(b));
    return out;
  }
  RealMatrix rows(d, full);
  for (int j = 0; j < d; ++j) {
    rows.row(j) = traceless_hermitian_coords(v.basis[j + 1]).transpose();
  }
  // The rows are orthonormal, so the singular values are all 1 and the last
  // full - d right singular vectors are an exact orthonormal kernel basis.
  Eigen::JacobiSVD<RealMatrix> svd(rows, Eigen::ComputeFullV);
  const auto& vmat = svd.matrixV();
  for (Eigen::Index c = d; c < full; ++c) {
    out.basis.push_back(coords_to_traceless_hermitian(vmat.col(c), n));
  }
  return out;
}

std::vector<ComplexMatrix> diag_tuple_for_simple_spectrum(int n, int k,
                                                          const RealVector& lambda,
                                                          SeededRng& rng,
                                                          int max_retries) {
  if (n < 3 || k < 1 || k > n - 2) {
    throw ParameterOutOfRange("diag_tuple_for_simple_spectrum: need 1 <= k <= n-2");
  }
  if (lambda.size() != n) {
    throw DimensionMismatch("diag_tuple_for_simple_spectrum: lambda must have n entries");
  }
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    SeededRng draw = rng.derive(static_cast<std::uint64_t>(attempt));
    std::vector<RealVector> vecs;
    bool degenerate = false;
    for (int j = 0; j < k && !degenerate; ++j) {
      RealVector u(n);
      for (int i = 0; i < n; ++i) u(i) = draw.next_gaussian();
      u.array() -= u.mean();  // traceless
      // Gram-Schmidt against the accepted diagonals (trace inner product on
      // real diagonals is the Euclidean dot product).
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& w : vecs) u -= w.dot(u) * w;
      }
      if (u.norm() < tol::rank_default) {
        degenerate = true;
        break;
      }
      vecs.push_back(u / u.norm());
    }
    if (degenerate) continue;
    RealVector mu = lambda;
    for (const auto& u : vecs) mu += static_cast<double>(n) * u.cwiseProduct(u);
    RealVector sorted = mu;
    std::sort(sorted.begin(), sorted.end());
    if (!simple_spectrum(sorted, tol::gap)) continue;
    std::vector<ComplexMatrix> out;
    out.reserve(k);
    for (const auto& u : vecs) {
      out.push_back(u.cast<Complex>().asDiagonal());
    }
    return out;
  }
  throw ExhaustedRetries("diag_tuple_for_simple_spectrum: no admissible tuple in " +
                         std::to_string(max_retries) + " attempts");
}

namespace {

// Seed matrices and the unordered pairs whose entries they occupy.
struct RigidSeeds {
  std::vector<ComplexMatrix> matrices;
  std::vector<std::pair<int, int>> used_pairs;  // 1-indexed, i < j
};

RigidSeeds rigid_seeds(int n) {
  RigidSeeds s;
  auto add_sum = [&](const std::vector<std::pair<int, int>>& pairs) {
    ComplexMatrix x = ComplexMatrix::Zero(n, n);
    for (auto [i, j] : pairs) {
      x += hermitian_basis_f(i, j, n);
      s.used_pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
    s.matrices.push_back(std::move(x));
  };
  if (n == 6) {
    add_sum({{1, 2}, {3, 4}, {5, 6}});  // X1
    add_sum({{2, 3}, {4, 5}, {1, 6}});  // X2
    add_sum({{1, 5}, {3, 6}});          // Y
  } else {
    std::vector<std::pair<int, int>> x1;
    for (int i = 1; 2 * i + 1 <= n; ++i) x1.emplace_back(2 * i, 2 * i + 1);
    add_sum(x1);
    std::vector<std::pair<int, int>> x2;
    for (int i = 1; 2 * i <= n; ++i) x2.emplace_back(2 * i - 1, 2 * i);
    add_sum(x2);
    add_sum({{1, 4}, {2, 5}, {3, 7}});  // Y
  }
  return s;
}

OperatorSystem explicit_rigid_tuple_direct(int n, int d, SeededRng& rng) {
  RigidSeeds seeds = rigid_seeds(n);
  const int k = std::min(n - 2, d - 3);
  const int extra = d - 3 - k;

  auto used = [&](int i, int j) {
    const auto p = std::make_pair(std::min(i, j), std::max(i, j));
    for (const auto& q : seeds.used_pairs)
      if (q == p) return true;
    return false;
  };

  std::vector<ComplexMatrix> generators = seeds.matrices;
  int remaining = extra;
  for (int i = 1; i <= n && remaining > 0; ++i) {
    for (int j = 1; j <= n && remaining > 0; ++j) {
      if (i == j || used(i, j)) continue;
      generators.push_back(hermitian_basis_f(i, j, n));
      --remaining;
    }
  }
  if (remaining > 0) {
    throw ParameterOutOfRange("explicit_rigid_tuple: d exceeds direct fill capacity");
  }

  OperatorSystem partial = from_generators(n, generators);
  const RealVector lambda = degree_matrix(partial).diagonal().real();
  for (auto& u : diag_tuple_for_simple_spectrum(n, k, lambda, rng)) {
    generators.push_back(std::move(u));
  }
  return from_generators(n, generators);
}

}  // namespace

OperatorSystem explicit_rigid_tuple(int n, int d, SeededRng& rng) {
  if (n < 6) throw ParameterOutOfRange("explicit_rigid_tuple: need n >= 6");
  if (d < 4 || d > n * n - 5) {
    throw ParameterOutOfRange("explicit_rigid_tuple: need 4 <= d <= n^2 - 5");
  }
  const int direct_cap = n * n - 2 * n - 3;
  if (d <= direct_cap) return explicit_rigid_tuple_direct(n, d, rng);
  // Large d: dual construction. The complement of a diagonal-degree system
  // has degree matrix (n^2 + 1) 1 - D (again diagonal, simple spectrum) and
  // the same stabilizer, so rigidity transfers.
  return orthogonal_complement_system(explicit_rigid_tuple_direct(n, n * n - 1 - d, rng));
}

}  // namespace qglab
