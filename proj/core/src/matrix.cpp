#include "qglab/matrix.hpp"

#include <cmath>

namespace qglab {

Complex trace_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("trace_inner: operand shapes differ");
  }
  return (a.conjugate().cwiseProduct(b)).sum();
}

Complex tau(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw DimensionMismatch("tau: matrix must be square");
  return static_cast<double>(x.rows()) * x.trace();
}

double frobenius_norm(const ComplexMatrix& x) { return x.norm(); }

bool is_hermitian(const ComplexMatrix& x, double rel_tol) {
  if (x.rows() != x.cols()) return false;
  return (x - x.adjoint()).norm() <= rel_tol * x.norm();
}

ComplexMatrix make_traceless(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) {
    throw DimensionMismatch("make_traceless: matrix must be square");
  }
  const auto n = x.rows();
  return x - (x.trace() / static_cast<double>(n)) *
                 ComplexMatrix::Identity(n, n);
}

std::optional<ComplexMatrix> try_orthonormalize(
    ComplexMatrix v, const std::vector<ComplexMatrix>& basis, double tol_rank) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      v -= trace_inner(b, v) * b;
    }
  }
  const double norm = v.norm();
  if (norm < tol_rank) return std::nullopt;
  return ComplexMatrix(v / norm);
}

std::vector<ComplexMatrix> gram_schmidt(const std::vector<ComplexMatrix>& tuple,
                                        double tol_rank) {
  std::vector<ComplexMatrix> out;
  out.reserve(tuple.size());
  for (std::size_t k = 0; k < tuple.size(); ++k) {
    if (tuple[k].rows() != tuple[0].rows() || tuple[k].cols() != tuple[0].cols()) {
      throw DimensionMismatch("gram_schmidt: tuple elements have mixed shapes");
    }
    auto next = try_orthonormalize(tuple[k], out, tol_rank);
    if (!next) {
      throw LinearlyDependent("gram_schmidt: vector " + std::to_string(k) +
                              " has residual norm below tolerance");
    }
    out.push_back(std::move(*next));
  }
  return out;
}

ComplexMatrix hermitian_basis_f(int i, int j, int n) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw ParameterOutOfRange("hermitian_basis_f: need 1 <= i,j <= n, i != j");
  }
  ComplexMatrix f = ComplexMatrix::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  if (i < j) {
    f(i - 1, j - 1) = Complex(s, 0.0);
    f(j - 1, i - 1) = Complex(s, 0.0);
  } else {
    f(i - 1, j - 1) = Complex(0.0, s);
    f(j - 1, i - 1) = Complex(0.0, -s);
  }
  return f;
}

std::vector<ComplexMatrix> diag_traceless_basis(int n) {
  if (n < 1) throw ParameterOutOfRange("diag_traceless_basis: n must be positive");
  std::vector<ComplexMatrix> out;
  out.reserve(n - 1);
  for (int k = 1; k < n; ++k) {
    ComplexMatrix d = ComplexMatrix::Zero(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) d(i, i) = scale;
    d(k, k) = -static_cast<double>(k) * scale;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<ComplexMatrix> traceless_hermitian_basis(int n) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(n) * n - 1);
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      out.push_back(hermitian_basis_f(i, j, n));
      out.push_back(hermitian_basis_f(j, i, n));
    }
  }
  for (auto& d : diag_traceless_basis(n)) out.push_back(std::move(d));
  return out;
}

RealVector traceless_hermitian_coords(const ComplexMatrix& x) {
  const int n = static_cast<int>(x.rows());
  const double s = std::sqrt(2.0);
  RealVector coords(static_cast<Eigen::Index>(n) * n - 1);
  Eigen::Index a = 0;
  // <f_ij, x> and <f_ji, x> written out entrywise; avoids building the basis.
  // Note <f_ji, x> = -sqrt(2) Im x_ij with the sign convention of
  // hermitian_basis_f(j, i, n).
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      coords(a++) = s * x(i, j).real();
      coords(a++) = -s * x(i, j).imag();
    }
  }
  for (int k = 1; k < n; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    double acc = 0.0;
    for (int i = 0; i < k; ++i) acc += x(i, i).real();
    coords(a++) = scale * (acc - k * x(k, k).real());
  }
  return coords;
}

ComplexMatrix coords_to_traceless_hermitian(const RealVector& coords, int n) {
  if (coords.size() != static_cast<Eigen::Index>(n) * n - 1) {
    throw DimensionMismatch("coords_to_traceless_hermitian: wrong coordinate count");
  }
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::Index a = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double re = coords(a++) * s;
      const double im = -(coords(a++) * s);
      x(i, j) = Complex(re, im);
      x(j, i) = Complex(re, -im);
    }
  }
  for (int k = 1; k < n; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    const double c = coords(a++);
    for (int i = 0; i < k; ++i) x(i, i) += c * scale;
    x(k, k) -= c * static_cast<double>(k) * scale;
  }
  return x;
}

ComplexMatrix sample_gue_traceless(int n, SeededRng& rng) {
  if (n < 1) throw ParameterOutOfRange("sample_gue_traceless: n must be positive");
  ComplexMatrix x(n, n);
  const double diag_sd = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i) {
    x(i, i) = Complex(rng.next_gaussian(0.0, diag_sd), 0.0);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double re = rng.next_gaussian(0.0, 0.5);
      const double im = rng.next_gaussian(0.0, 0.5);
      x(i, j) = Complex(re, im);
      x(j, i) = Complex(re, -im);
    }
  }
  return make_traceless(x);
}

Eig eig_hermitian(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) {
    throw DimensionMismatch("eig_hermitian: matrix must be square");
  }
  if (!is_hermitian(x)) {
    throw NotHermitian("eig_hermitian: ||X - X*|| exceeds tolerance");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(x);
  if (solver.info() != Eigen::Success) {
    throw Error("eig_hermitian: eigensolver failed to converge");
  }
  return Eig{solver.eigenvalues(), solver.eigenvectors()};
}

bool simple_spectrum(const RealVector& ascending_values, double gap_tol) {
  const auto m = ascending_values.size();
  if (m <= 1) return true;
  const double spread = ascending_values(m - 1) - ascending_values(0);
  const double threshold = gap_tol * std::max(1.0, spread);
  for (Eigen::Index k = 0; k + 1 < m; ++k) {
    if (ascending_values(k + 1) - ascending_values(k) <= threshold) return false;
  }
  return true;
}

}  // namespace qglab
