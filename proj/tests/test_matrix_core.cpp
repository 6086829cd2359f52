#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "qglab/errors.hpp"
#include "qglab/matrix.hpp"
#include "test_helpers.hpp"

using namespace qglab;
using qglab::testing::dist;
using qglab::testing::random_hermitian;

namespace {
const Complex kI(0.0, 1.0);
}

TEST_CASE("trace_inner is conjugate-linear in the first slot") {
  SeededRng rng(1u);
  ComplexMatrix a = random_hermitian(3, rng);
  ComplexMatrix b = random_hermitian(3, rng);
  Complex lhs = trace_inner(kI * a, b);
  Complex rhs = -kI * trace_inner(a, b);
  CHECK(std::abs(lhs - rhs) < 1e-12);
  CHECK(std::abs(trace_inner(a, kI * b) - kI * trace_inner(a, b)) < 1e-12);
}

TEST_CASE("tau is the trace scaled by n") {
  ComplexMatrix id = ComplexMatrix::Identity(4, 4);
  CHECK(std::abs(tau(id) - Complex(16.0, 0.0)) < 1e-12);
  ComplexMatrix e00 = ComplexMatrix::Zero(3, 3);
  e00(0, 0) = 1.0;
  CHECK(std::abs(tau(e00) - Complex(3.0, 0.0)) < 1e-12);
}

TEST_CASE("hermitian_basis_f matches its closed form") {
  const double s = 1.0 / std::sqrt(2.0);

  ComplexMatrix f12 = hermitian_basis_f(1, 2, 2);
  ComplexMatrix expected_f12 = ComplexMatrix::Zero(2, 2);
  expected_f12(0, 1) = s;
  expected_f12(1, 0) = s;
  CHECK(dist(f12, expected_f12) < 1e-15);

  ComplexMatrix f21 = hermitian_basis_f(2, 1, 2);
  ComplexMatrix expected_f21 = ComplexMatrix::Zero(2, 2);
  expected_f21(1, 0) = kI * s;
  expected_f21(0, 1) = -kI * s;
  CHECK(dist(f21, expected_f21) < 1e-15);

  // Orthogonal unit vectors with f^2 = (e_ii + e_jj)/2.
  CHECK(std::abs(trace_inner(f12, f21)) < 1e-15);
  CHECK(std::abs(trace_inner(f12, f12) - Complex(1, 0)) < 1e-15);
  ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  CHECK(dist(f12 * f12, half) < 1e-15);
  CHECK(dist(f21 * f21, half) < 1e-15);

  // Eigenvalues of f12 are +-1/sqrt(2).
  Eig e = eig_hermitian(f12);
  CHECK(e.values(0) == doctest::Approx(-s).epsilon(1e-12));
  CHECK(e.values(1) == doctest::Approx(s).epsilon(1e-12));
}

TEST_CASE("traceless_hermitian_basis is an orthonormal traceless basis") {
  for (int n : {2, 3, 4}) {
    auto basis = traceless_hermitian_basis(n);
    REQUIRE(static_cast<int>(basis.size()) == n * n - 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      CHECK(std::abs(basis[i].trace()) < 1e-14);
      CHECK(is_hermitian(basis[i]));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        Complex g = trace_inner(basis[i], basis[j]);
        CHECK(std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-13);
      }
    }
  }
}

TEST_CASE("diag_traceless_basis matches the d_k closed form") {
  auto basis = diag_traceless_basis(3);
  REQUIRE(basis.size() == 2);
  ComplexMatrix d1 = ComplexMatrix::Zero(3, 3);
  d1(0, 0) = 1.0 / std::sqrt(2.0);
  d1(1, 1) = -1.0 / std::sqrt(2.0);
  CHECK(dist(basis[0], d1) < 1e-15);
  ComplexMatrix d2 = ComplexMatrix::Zero(3, 3);
  d2(0, 0) = 1.0 / std::sqrt(6.0);
  d2(1, 1) = 1.0 / std::sqrt(6.0);
  d2(2, 2) = -2.0 / std::sqrt(6.0);
  CHECK(dist(basis[1], d2) < 1e-15);
}

TEST_CASE("coordinates round-trip through the traceless basis") {
  SeededRng rng(17u);
  for (int n : {2, 3, 4}) {
    ComplexMatrix x = make_traceless(random_hermitian(n, rng));
    RealVector c = traceless_hermitian_coords(x);
    REQUIRE(c.size() == n * n - 1);
    ComplexMatrix back = coords_to_traceless_hermitian(c, n);
    CHECK(dist(back, x) < 1e-12);
    // Norm is preserved (orthonormal coordinates).
    CHECK(c.norm() == doctest::Approx(x.norm()).epsilon(1e-10));
  }
}

TEST_CASE("coordinates agree with inner products against the declared basis") {
  // Each coordinate must equal <b_a, x> for b_a = traceless_hermitian_basis[a],
  // so that coefficient vectors and basis indexing are interchangeable.
  SeededRng rng(18u);
  for (int n : {2, 3, 4}) {
    auto basis = traceless_hermitian_basis(n);
    ComplexMatrix x = make_traceless(random_hermitian(n, rng));
    RealVector c = traceless_hermitian_coords(x);
    REQUIRE(c.size() == static_cast<Eigen::Index>(basis.size()));
    for (std::size_t a = 0; a < basis.size(); ++a) {
      Complex ip = trace_inner(basis[a], x);
      CHECK(std::abs(ip.imag()) < 1e-12);
      CHECK(c(static_cast<Eigen::Index>(a)) == doctest::Approx(ip.real()).epsilon(1e-10));
    }
    // And expanding a coefficient vector reproduces the same combination.
    RealVector coeffs(c.size());
    for (Eigen::Index a = 0; a < coeffs.size(); ++a) {
      coeffs(a) = rng.next_gaussian(0.0, 1.0);
    }
    ComplexMatrix combo = ComplexMatrix::Zero(n, n);
    for (std::size_t a = 0; a < basis.size(); ++a) {
      combo += coeffs(static_cast<Eigen::Index>(a)) * basis[a];
    }
    CHECK(dist(coords_to_traceless_hermitian(coeffs, n), combo) < 1e-12);
  }
}

TEST_CASE("make_traceless subtracts the normalized trace") {
  ComplexMatrix e11 = ComplexMatrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  ComplexMatrix t = make_traceless(e11);
  CHECK(t(0, 0) == Complex(0.5, 0.0));
  CHECK(t(1, 1) == Complex(-0.5, 0.0));
  CHECK(std::abs(t.trace()) < 1e-16);
}

TEST_CASE("gue sampler is Hermitian, traceless, with the pinned moments") {
  SeededRng rng(2024u);
  const int n = 3;
  const int N = 4000;
  double sum_tr_sq = 0.0;
  double sum_re = 0.0, sum_re_sq = 0.0;
  for (int t = 0; t < N; ++t) {
    ComplexMatrix x = sample_gue_traceless(n, rng);
    REQUIRE(is_hermitian(x));
    REQUIRE(std::abs(x.trace()) < 1e-13);
    sum_tr_sq += (x * x).trace().real();
    double re = x(0, 1).real();
    sum_re += re;
    sum_re_sq += re * re;
  }
  // E Tr X^2 = (n^2 - 1)/2 for the traceless projection of exp(-Tr X^2).
  double mean_tr_sq = sum_tr_sq / N;
  CHECK(std::abs(mean_tr_sq - (n * n - 1) / 2.0) < 0.3);
  // Off-diagonal real parts are N(0, 1/4), untouched by the projection.
  double mean_re = sum_re / N;
  double var_re = sum_re_sq / N - mean_re * mean_re;
  CHECK(std::abs(var_re - 0.25) < 0.03);
}

TEST_CASE("gue sampler is reproducible per (seed, stream)") {
  SeededRng a(5u, 2u);
  SeededRng b(5u, 2u);
  CHECK(dist(sample_gue_traceless(4, a), sample_gue_traceless(4, b)) == 0.0);
  SeededRng c(5u, 3u);
  CHECK(dist(sample_gue_traceless(4, a), sample_gue_traceless(4, c)) > 0.0);
}

TEST_CASE("eig_hermitian returns ascending values and orthonormal columns") {
  ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  Eig e = eig_hermitian(z);
  CHECK(e.values(0) == doctest::Approx(-1.0));
  CHECK(e.values(1) == doctest::Approx(1.0));
  CHECK(dist(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(2, 2)) < 1e-12);
  // Reconstruction.
  ComplexMatrix rec =
      e.vectors * e.values.asDiagonal().toDenseMatrix().cast<Complex>() * e.vectors.adjoint();
  CHECK(dist(rec, z) < 1e-12);
}

TEST_CASE("eig_hermitian rejects non-Hermitian input") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;  // missing the conjugate entry
  CHECK_THROWS_AS(eig_hermitian(bad), NotHermitian);
}

TEST_CASE("simple_spectrum applies the relative gap rule") {
  RealVector v3(3);
  v3 << 0.0, 1.0, 2.0;
  CHECK(simple_spectrum(v3));

  RealVector repeated(3);
  repeated << 0.0, 0.0, 1.0;
  CHECK_FALSE(simple_spectrum(repeated));

  RealVector tight(3);
  tight << 0.0, 5e-9, 1.0;  // below the 1e-8 * max(1, spread) cut
  CHECK_FALSE(simple_spectrum(tight));

  RealVector open(3);
  open << 0.0, 2e-8, 1.0;
  CHECK(simple_spectrum(open));

  // Spread scaling: tolerance grows with the spectral range.
  RealVector wide(3);
  wide << 0.0, 5e-7, 100.0;
  CHECK_FALSE(simple_spectrum(wide));

  RealVector single(1);
  single << 3.0;
  CHECK(simple_spectrum(single));
}

TEST_CASE("try_orthonormalize returns the normalized residual or nullopt") {
  auto basis = diag_traceless_basis(3);
  // A vector already in the span collapses.
  CHECK_FALSE(try_orthonormalize(0.7 * basis[0] - 0.1 * basis[1], basis,
                                 tol::rank_default)
                  .has_value());
  // An orthogonal direction survives and is normalized.
  ComplexMatrix f = hermitian_basis_f(1, 2, 3);
  auto kept = try_orthonormalize(5.0 * f, basis, tol::rank_default);
  REQUIRE(kept.has_value());
  CHECK(dist(*kept, f) < 1e-12);
}

TEST_CASE("gram_schmidt orthonormalizes and flags dependent or ragged input") {
  SeededRng rng(3u);
  std::vector<ComplexMatrix> tuple;
  for (int i = 0; i < 4; ++i) tuple.push_back(random_hermitian(3, rng));
  auto ortho = gram_schmidt(tuple);
  REQUIRE(ortho.size() == 4);
  for (std::size_t i = 0; i < ortho.size(); ++i)
    for (std::size_t j = 0; j < ortho.size(); ++j) {
      Complex g = trace_inner(ortho[i], ortho[j]);
      CHECK(std::abs(g - (i == j ? Complex(1, 0) : Complex(0, 0))) < 1e-12);
    }

  auto dependent = tuple;
  dependent.push_back(0.25 * tuple[0] - tuple[2]);
  CHECK_THROWS_AS(gram_schmidt(dependent), LinearlyDependent);

  std::vector<ComplexMatrix> ragged = {ComplexMatrix::Identity(2, 2),
                                       ComplexMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(gram_schmidt(ragged), DimensionMismatch);
}
