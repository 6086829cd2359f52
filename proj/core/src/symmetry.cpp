#include "qglab/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "qglab/parallel.hpp"

namespace qglab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<ComplexMatrix> skew_basis(int n) {
  auto herm = traceless_hermitian_basis(n);
  for (auto& e : herm) e *= Complex(0.0, 1.0);
  return herm;
}

}  // namespace

StabilizerAlgebra stabilizer_lie_algebra(const OperatorSystem& v, double rank_rel) {
  validate_operator_system(v);
  const int n = v.n;
  const Eigen::Index full = static_cast<Eigen::Index>(n) * n - 1;
  const int d = v.dim() - 1;

  StabilizerAlgebra s;
  s.n = n;
  if (d == 0) {
    // No equations: every traceless skew-Hermitian direction stabilizes.
    s.basis = skew_basis(n);
    s.gap_ratio = kInf;
    return s;
  }

  const auto herm = traceless_hermitian_basis(n);
  RealMatrix sys(static_cast<Eigen::Index>(d) * full, full);
  for (Eigen::Index a = 0; a < full; ++a) {
    const ComplexMatrix h = Complex(0.0, 1.0) * herm[a];
    for (int j = 1; j <= d; ++j) {
      const ComplexMatrix c = h * v.basis[j] - v.basis[j] * h;
      const ComplexMatrix r = c - project(v, c);
      sys.block((j - 1) * full, a, full, 1) = traceless_hermitian_coords(r);
    }
  }

  Eigen::JacobiSVD<RealMatrix> svd(sys, Eigen::ComputeFullV);
  const RealVector sigma = svd.singularValues();
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  const double threshold =
      static_cast<double>(std::max<Eigen::Index>(sys.rows(), full)) * sigma_max * rank_rel;
  s.rank_threshold = threshold;
  s.singular_values.assign(sigma.begin(), sigma.end());

  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    if (!(sigma(k) < threshold)) ++rank;
  }

  if (rank == 0) {
    s.gap_ratio = kInf;
  } else if (rank == sigma.size()) {
    s.gap_ratio = threshold > 0.0 ? sigma(rank - 1) / threshold : kInf;
  } else {
    s.gap_ratio = sigma(rank) > 0.0 ? sigma(rank - 1) / sigma(rank) : kInf;
  }

  const auto& kernel = svd.matrixV();
  for (Eigen::Index c = rank; c < full; ++c) {
    s.basis.push_back(Complex(0.0, 1.0) *
                      coords_to_traceless_hermitian(kernel.col(c), n));
  }
  return s;
}

bool is_abelian(const StabilizerAlgebra& s, double tolerance) {
  for (std::size_t a = 0; a < s.basis.size(); ++a) {
    for (std::size_t b = a + 1; b < s.basis.size(); ++b) {
      if ((s.basis[a] * s.basis[b] - s.basis[b] * s.basis[a]).norm() >= tolerance) {
        return false;
      }
    }
  }
  return true;
}

double degree_commutant_check(const OperatorSystem& v, const ComplexMatrix& u,
                              double unitary_tol) {
  if (u.rows() != v.n || u.cols() != v.n) {
    throw DimensionMismatch("degree_commutant_check: unitary has wrong shape");
  }
  if ((u.adjoint() * u - ComplexMatrix::Identity(v.n, v.n)).norm() > unitary_tol) {
    throw NotUnitary("degree_commutant_check: matrix is not unitary");
  }
  const ComplexMatrix d = degree_matrix(v);
  return (u * d - d * u).norm();
}

namespace {

// ---- GF(2) helpers -------------------------------------------------------

using Gf2Row = std::vector<std::uint8_t>;

// Basis of the homogeneous solution space of rows * x = 0.
std::vector<Gf2Row> gf2_nullspace(std::vector<Gf2Row> rows, std::size_t nvars) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < nvars && r < rows.size(); ++col) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && rows[i][col]) {
        for (std::size_t cc = 0; cc < nvars; ++cc) rows[i][cc] ^= rows[r][cc];
      }
    }
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(nvars, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Gf2Row> basis;
  for (std::size_t free_col = 0; free_col < nvars; ++free_col) {
    if (is_pivot[free_col]) continue;
    Gf2Row sol(nvars, 0);
    sol[free_col] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) {
      sol[pivot_col[k]] = rows[k][free_col];
    }
    basis.push_back(std::move(sol));
  }
  return basis;
}

// Representatives of span(vectors) modulo span(mods).
std::vector<Gf2Row> gf2_quotient_basis(const std::vector<Gf2Row>& vectors,
                                       const std::vector<Gf2Row>& mods,
                                       std::size_t nvars) {
  std::vector<Gf2Row> echelon;        // reduced rows accumulated so far
  std::vector<std::size_t> pivots;
  auto reduce = [&](Gf2Row row) {
    for (std::size_t k = 0; k < echelon.size(); ++k) {
      if (row[pivots[k]]) {
        for (std::size_t c = 0; c < nvars; ++c) row[c] ^= echelon[k][c];
      }
    }
    return row;
  };
  auto insert = [&](Gf2Row row) -> bool {
    row = reduce(std::move(row));
    std::size_t lead = nvars;
    for (std::size_t c = 0; c < nvars; ++c) {
      if (row[c]) {
        lead = c;
        break;
      }
    }
    if (lead == nvars) return false;
    echelon.push_back(std::move(row));
    pivots.push_back(lead);
    return true;
  };
  for (const auto& m : mods) insert(m);
  std::vector<Gf2Row> out;
  for (const auto& vec : vectors) {
    Gf2Row reduced = reduce(vec);
    if (insert(reduced)) out.push_back(std::move(reduced));
  }
  return out;
}

// ---- union-find ----------------------------------------------------------

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Orthonormalizes a real span, dropping near-dependent vectors.
std::vector<ComplexMatrix> span_basis(const std::vector<ComplexMatrix>& vectors) {
  std::vector<ComplexMatrix> out;
  for (const auto& x : vectors) {
    auto next = try_orthonormalize(x, out, tol::rank_default);
    if (next) out.push_back(std::move(*next));
  }
  return out;
}

}  // namespace

DiagonalPhaseGroup diagonal_phase_solver(const OperatorSystem& v) {
  validate_operator_system(v);
  const int n = v.n;
  const int d = v.dim() - 1;

  // Split every traceless basis element into diagonal and off-diagonal parts;
  // conjugation by a diagonal unitary preserves both subspaces, so the span
  // splits exactly when dim(diag span) + dim(offdiag span) = d. If it does
  // not, span preservation could not be read off entrywise.
  std::vector<ComplexMatrix> diag_parts, off_parts;
  for (int j = 1; j <= d; ++j) {
    ComplexMatrix dd = ComplexMatrix(v.basis[j].diagonal().asDiagonal());
    ComplexMatrix oo = v.basis[j] - dd;
    if (dd.norm() > tol::rank_default) diag_parts.push_back(std::move(dd));
    if (oo.norm() > tol::rank_default) off_parts.push_back(std::move(oo));
  }
  const auto diag_basis = span_basis(diag_parts);
  const auto off_basis = span_basis(off_parts);
  if (static_cast<int>(diag_basis.size() + off_basis.size()) != d) {
    throw UnsupportedPattern(
        "diagonal_phase_solver: basis does not split into diagonal and "
        "off-diagonal parts");
  }

  // Support pairs of each off-diagonal element, and pair blocks (connected
  // classes of pairs that co-occur inside some element).
  std::map<std::pair<int, int>, int> pair_id;
  std::vector<std::pair<int, int>> pairs;  // id -> (i, j), i < j, 0-indexed
  std::vector<std::vector<int>> supports(off_basis.size());
  for (std::size_t k = 0; k < off_basis.size(); ++k) {
    const auto& o = off_basis[k];
    const double cutoff = 1e-8 * o.cwiseAbs().maxCoeff();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (std::abs(o(i, j)) > cutoff) {
          auto key = std::make_pair(i, j);
          auto it = pair_id.find(key);
          if (it == pair_id.end()) {
            it = pair_id.emplace(key, static_cast<int>(pairs.size())).first;
            pairs.push_back(key);
          }
          supports[k].push_back(it->second);
        }
      }
    }
  }
  UnionFind pair_blocks(static_cast<int>(pairs.size()));
  for (const auto& supp : supports) {
    for (std::size_t t = 1; t < supp.size(); ++t) pair_blocks.unite(supp[0], supp[t]);
  }

  std::map<int, std::vector<int>> block_elems;   // block root -> element ids
  std::map<int, std::vector<int>> block_pairs;   // block root -> pair ids
  for (std::size_t k = 0; k < off_basis.size(); ++k) {
    block_elems[pair_blocks.find(supports[k][0])].push_back(static_cast<int>(k));
  }
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    block_pairs[pair_blocks.find(static_cast<int>(p))].push_back(static_cast<int>(p));
  }

  // Each constraint fixes u_i conj(u_j) to one shared +-1 sign across a set
  // of pairs (the support of a single basis element).
  std::vector<std::vector<int>> sign_constraints;  // lists of pair ids
  for (const auto& [root, elems] : block_elems) {
    const auto& bp = block_pairs[root];
    if (elems.size() == 1) {
      sign_constraints.push_back(supports[elems[0]]);
      continue;
    }
    if (elems.size() == 2 * bp.size()) {
      continue;  // the whole pair space: any diagonal conjugation preserves it
    }
    // Try to split the block pair-by-pair: the per-pair projections must sum
    // to the block dimension, and then each pair carries either the full
    // 2-dimensional pair space (no constraint) or a single line (one sign).
    std::size_t total = 0;
    std::vector<int> line_pairs;
    for (int p : bp) {
      auto [i, j] = pairs[p];
      std::vector<ComplexMatrix> projections;
      for (int e : elems) {
        ComplexMatrix proj = ComplexMatrix::Zero(n, n);
        proj(i, j) = off_basis[e](i, j);
        proj(j, i) = off_basis[e](j, i);
        if (proj.norm() > tol::rank_default) projections.push_back(std::move(proj));
      }
      const std::size_t rank = span_basis(projections).size();
      total += rank;
      if (rank == 1) line_pairs.push_back(p);
      if (rank > 2) throw UnsupportedPattern("diagonal_phase_solver: impossible pair rank");
    }
    if (total != elems.size()) {
      throw UnsupportedPattern(
          "diagonal_phase_solver: off-diagonal block does not reduce to "
          "entrywise phase constraints");
    }
    for (int p : line_pairs) sign_constraints.push_back({p});
  }

  // Continuous part: one circle of phases per connected component of the
  // vertex graph drawn by the sign constraints, minus the global scalar.
  UnionFind vertex_comps(n);
  for (const auto& constraint : sign_constraints) {
    for (int p : constraint) {
      vertex_comps.unite(pairs[p].first, pairs[p].second);
    }
  }
  std::map<int, std::vector<int>> components;
  for (int i = 0; i < n; ++i) components[vertex_comps.find(i)].push_back(i);

  DiagonalPhaseGroup group;
  group.torus_rank = static_cast<int>(components.size()) - 1;

  // Sign part over GF(2): variables are vertex signs sigma_i plus one shared
  // sign gamma_k per constraint; each pair {i,j} of constraint k imposes
  // sigma_i + sigma_j + gamma_k = 0.
  const std::size_t nvars = static_cast<std::size_t>(n) + sign_constraints.size();
  std::vector<Gf2Row> equations;
  for (std::size_t k = 0; k < sign_constraints.size(); ++k) {
    for (int p : sign_constraints[k]) {
      Gf2Row row(nvars, 0);
      row[pairs[p].first] ^= 1;
      row[pairs[p].second] ^= 1;
      row[n + k] ^= 1;
      equations.push_back(std::move(row));
    }
  }
  auto solutions = gf2_nullspace(std::move(equations), nvars);

  // Per-component global flips are one-parameter-subgroup endpoints (they sit
  // inside the torus), so quotient them out of the discrete part.
  std::vector<Gf2Row> sigma_solutions;
  for (const auto& sol : solutions) {
    sigma_solutions.emplace_back(sol.begin(), sol.begin() + n);
  }
  std::vector<Gf2Row> component_flips;
  for (const auto& [root, verts] : components) {
    Gf2Row flip(n, 0);
    for (int i : verts) flip[i] = 1;
    component_flips.push_back(std::move(flip));
  }
  for (const auto& gen : gf2_quotient_basis(sigma_solutions, component_flips, n)) {
    RealVector signs(n);
    for (int i = 0; i < n; ++i) signs(i) = gen[i] ? -1.0 : 1.0;
    ComplexMatrix u = signs.cast<Complex>().asDiagonal();
    const auto residuals = verify_automorphism(v, u);
    if (residuals.span_residual_sq > 1e-12) {
      throw UnsupportedPattern(
          "diagonal_phase_solver: solved sign pattern failed verification");
    }
    group.discrete_generators.push_back(std::move(signs));
  }
  return group;
}

namespace {

ComplexMatrix qr_unitary(const ComplexMatrix& m) {
  Eigen::HouseholderQR<ComplexMatrix> qr(m);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
  // Make the factorization canonical (R diagonal positive) so the retraction
  // is a deterministic function of its input.
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const Complex r = qr.matrixQR()(k, k);
    const double a = std::abs(r);
    if (a > 0.0) q.col(k) *= r / a;
  }
  return q;
}

ComplexMatrix random_unitary(int n, SeededRng& rng) {
  ComplexMatrix g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      g(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    }
  }
  return qr_unitary(g);
}

double span_objective(const OperatorSystem& v, const ComplexMatrix& u,
                      std::vector<ComplexMatrix>* residuals) {
  double f = 0.0;
  if (residuals) residuals->clear();
  const ComplexMatrix uh = u.adjoint();
  for (int j = 1; j < v.dim(); ++j) {
    ComplexMatrix r = u * v.basis[j] * uh;
    r -= project(v, r);
    f += r.squaredNorm();
    if (residuals) residuals->push_back(std::move(r));
  }
  return f;
}

double scalar_distance(const ComplexMatrix& u) {
  const double n = static_cast<double>(u.rows());
  return std::sqrt(std::max(0.0, 2.0 * n - 2.0 * std::abs(u.trace())));
}

ComplexMatrix canonical_phase(ComplexMatrix u) {
  Complex z = u.trace();
  if (std::abs(z) < 1e-8) {
    Eigen::Index r = 0, c = 0;
    u.cwiseAbs().maxCoeff(&r, &c);
    z = u(r, c);
  }
  return u * std::conj(z / std::abs(z));
}

struct RestartOutcome {
  ComplexMatrix u;
  double residual = 0.0;
  bool converged = false;
};

RestartOutcome run_descent(const OperatorSystem& v, SeededRng rng, double search_tol) {
  constexpr int kMaxIters = 500;
  constexpr double kGradStop = 1e-12;

  ComplexMatrix u = random_unitary(v.n, rng);
  std::vector<ComplexMatrix> residuals;
  double f = span_objective(v, u, &residuals);
  double trial_step = 1.0;
  bool converged = false;

  for (int iter = 0; iter < kMaxIters; ++iter) {
    ComplexMatrix grad = ComplexMatrix::Zero(v.n, v.n);
    for (int j = 1; j < v.dim(); ++j) {
      grad += residuals[j - 1] * u * v.basis[j];
    }
    grad *= 4.0;
    const ComplexMatrix uhg = u.adjoint() * grad;
    const ComplexMatrix xi = u * (0.5 * (uhg - uhg.adjoint()));
    const double gnorm = xi.norm();
    if (gnorm < kGradStop) {
      converged = true;
      break;
    }
    double step = trial_step;
    bool improved = false;
    for (int halving = 0; halving < 60; ++halving) {
      ComplexMatrix cand = qr_unitary(u - step * xi);
      std::vector<ComplexMatrix> cand_residuals;
      const double fc = span_objective(v, cand, &cand_residuals);
      if (fc < f - 1e-4 * step * gnorm * gnorm) {
        u = std::move(cand);
        residuals = std::move(cand_residuals);
        f = fc;
        trial_step = step * 2.0;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) {
      // Step halving bottomed out: numerically stationary.
      converged = gnorm < 1e-6;
      break;
    }
  }
  (void)search_tol;
  return RestartOutcome{canonical_phase(u), f, converged};
}

}  // namespace

bool AutSearchReport::nonscalar_found(double scalar_tol) const {
  for (const auto& c : candidates) {
    if (c.distance_from_scalars > scalar_tol) return true;
  }
  return false;
}

AutSearchReport discrete_aut_search(const OperatorSystem& v, int restarts,
                                    SeededRng& rng, double search_tol,
                                    unsigned workers) {
  validate_operator_system(v);
  if (restarts < 1) throw ParameterOutOfRange("discrete_aut_search: restarts must be >= 1");

  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(static_cast<std::size_t>(restarts), workers, [&](std::size_t r) {
    outcomes[r] = run_descent(v, rng.derive(r), search_tol);
  });

  AutSearchReport report;
  report.restarts = restarts;
  int converged = 0;
  for (const auto& o : outcomes) converged += o.converged ? 1 : 0;
  report.converged_fraction = static_cast<double>(converged) / restarts;

  std::vector<AutCandidate> kept;
  for (const auto& o : outcomes) {
    if (o.residual < search_tol) {
      kept.push_back(AutCandidate{o.u, o.residual, scalar_distance(o.u)});
    }
  }
  // Deterministic merge: sort by (residual, lexicographic entries), then drop
  // duplicates that agree modulo a scalar phase.
  std::sort(kept.begin(), kept.end(), [](const AutCandidate& a, const AutCandidate& b) {
    if (a.residual != b.residual) return a.residual < b.residual;
    for (Eigen::Index k = 0; k < a.u.size(); ++k) {
      const Complex x = a.u(k), y = b.u(k);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
  });
  const double nn = static_cast<double>(v.n);
  for (const auto& c : kept) {
    bool duplicate = false;
    for (const auto& existing : report.candidates) {
      const double dist_sq = 2.0 * nn - 2.0 * std::abs((existing.u.adjoint() * c.u).trace());
      if (dist_sq < 1e-8) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) report.candidates.push_back(c);
  }

  // Probe a few deterministic unitaries: if the objective vanishes everywhere
  // the whole group stabilizes V.
  bool everywhere_zero = true;
  for (int probe = 0; probe < 3; ++probe) {
    SeededRng probe_rng = rng.derive(0x66756c6cULL + probe);
    ComplexMatrix u = random_unitary(v.n, probe_rng);
    if (span_objective(v, u, nullptr) >= search_tol) {
      everywhere_zero = false;
      break;
    }
  }
  report.full_stabilizer = everywhere_zero;
  return report;
}

AutomorphismResiduals verify_automorphism(const OperatorSystem& v,
                                          const ComplexMatrix& u,
                                          double unitary_tol) {
  if (u.rows() != v.n || u.cols() != v.n) {
    throw DimensionMismatch("verify_automorphism: unitary has wrong shape");
  }
  if ((u.adjoint() * u - ComplexMatrix::Identity(v.n, v.n)).norm() > unitary_tol) {
    throw NotUnitary("verify_automorphism: matrix is not unitary");
  }
  AutomorphismResiduals out;
  out.span_residual_sq = span_objective(v, u, nullptr);

  const Superoperator a = quantum_adjacency(v);
  // Matrix of x -> U* x U on column-stacked vectorizations.
  const ComplexMatrix conj_by_u_adj = kron(u.transpose(), u.adjoint());
  const ComplexMatrix lhs = conj_by_u_adj * a.matrix_form;  // U* A(x) U
  const ComplexMatrix rhs = a.matrix_form * conj_by_u_adj;  // A(U* x U)
  const double raw = (lhs - rhs).norm();
  out.adjacency_residual_sq = raw * raw / (2.0 * v.n * v.n);
  return out;
}

}  // namespace qglab
