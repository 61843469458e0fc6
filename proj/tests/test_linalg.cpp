#include "nakano/linalg.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace nakano::linalg;

namespace {

std::mt19937 rng(12345);

Complex rand_c() {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  return {d(rng), d(rng)};
}

CMatrix random_matrix(std::size_t n) {
  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rand_c();
  return a;
}

HermitianMatrix random_hermitian(std::size_t n) { return hermitize(random_matrix(n)).first; }

HermitianMatrix random_spd(std::size_t n) {
  CMatrix a = random_matrix(n);
  CMatrix g = a.adjoint() * a;
  for (std::size_t i = 0; i < n; ++i) g(i, i) += 0.5;  // keep well conditioned
  return hermitize(g).first;
}

// Determinant by cofactor expansion, dim <= 4 (independent of eigensolver).
Complex det_small(const CMatrix& a) {
  const std::size_t n = a.rows();
  if (n == 1) return a(0, 0);
  Complex acc = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    CMatrix minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      std::size_t jj = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == c) continue;
        minor(i - 1, jj++) = a(i, j);
      }
    }
    const double sign = (c % 2 == 0) ? 1.0 : -1.0;
    acc += sign * a(0, c) * det_small(minor);
  }
  return acc;
}

}  // namespace

TEST_CASE("hermitize on simple inputs") {
  auto [h, asym] = hermitize(CMatrix::identity(3));
  CHECK(asym == 0.0);
  CHECK(h.m(0, 0) == Complex(1.0, 0.0));

  CMatrix a(2, 2);
  a(0, 1) = 1.0;
  auto [h2, asym2] = hermitize(a);
  CHECK(h2.m(0, 1) == Complex(0.5, 0.0));
  CHECK(h2.m(1, 0) == Complex(0.5, 0.0));
  CHECK(asym2 == doctest::Approx(0.5));

  CMatrix nonsquare(2, 3);
  CHECK_THROWS_AS(hermitize(nonsquare), std::invalid_argument);
}

TEST_CASE("hermitize matches entrywise (A+A*)/2 oracle") {
  const CMatrix a = random_matrix(2);
  auto [h, asym] = hermitize(a);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      const Complex expect = 0.5 * (a(i, j) + std::conj(a(j, i)));
      CHECK(std::abs(h.m(i, j) - expect) < 1e-15);
      CHECK(asym >= 0.5 * std::abs(a(i, j) - std::conj(a(j, i))) - 1e-15);
    }
}

TEST_CASE("eigvalsh on trivial matrices") {
  auto rep = eigvalsh(hermitize(CMatrix::identity(4)).first);
  for (double v : rep.eigenvalues) CHECK(v == doctest::Approx(1.0));

  CMatrix d(2, 2);
  d(0, 0) = -2.0;
  d(1, 1) = 1.0;
  rep = eigvalsh(hermitize(d).first);
  CHECK(rep.eigenvalues[0] == doctest::Approx(-2.0));
  CHECK(rep.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(rep.min == rep.eigenvalues.front());
  CHECK(rep.max == rep.eigenvalues.back());
}

TEST_CASE("eigvalsh matches the 2x2 characteristic polynomial oracle") {
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_hermitian(2);
    const double a = h.m(0, 0).real();
    const double d = h.m(1, 1).real();
    const double b2 = std::norm(h.m(0, 1));
    const double disc = std::sqrt((a + d) * (a + d) - 4.0 * (a * d - b2));
    const double lo = 0.5 * (a + d - disc);
    const double hi = 0.5 * (a + d + disc);
    const auto rep = eigvalsh(h);
    CHECK(rep.eigenvalues[0] == doctest::Approx(lo).epsilon(1e-10));
    CHECK(rep.eigenvalues[1] == doctest::Approx(hi).epsilon(1e-10));
    CHECK(rep.residual <= 1e-10);
  }
}

TEST_CASE("eigenvalue sum equals trace") {
  for (std::size_t n : {3, 5, 9, 17}) {
    const auto h = random_hermitian(n);
    const auto rep = eigvalsh(h);
    double sum = 0.0;
    for (double v : rep.eigenvalues) sum += v;
    CHECK(sum == doctest::Approx(h.trace_real()).epsilon(1e-10));
    CHECK(rep.residual <= 1e-10);
  }
}

TEST_CASE("eigvalsh invariant under unitary conjugation") {
  const auto h = random_hermitian(5);
  // Eigenvectors of an unrelated random Hermitian form a unitary matrix.
  const auto [unused, u] = eigh(random_hermitian(5));
  const auto conj = hermitize(u.adjoint() * h.m * u).first;
  const auto r1 = eigvalsh(h);
  const auto r2 = eigvalsh(conj);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(r1.eigenvalues[i] == doctest::Approx(r2.eigenvalues[i]).epsilon(1e-9));
}

TEST_CASE("pd_verdict thresholds") {
  CHECK(pd_verdict(hermitize(CMatrix::identity(3)).first, 1e-6) == PdVerdict::POSITIVE_DEFINITE);
  CHECK(pd_verdict(hermitize(CMatrix(2, 2)).first, 1e-6) ==
        PdVerdict::SEMIDEFINITE_WITHIN_MARGIN);
  CMatrix d(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -1.0;
  CHECK(pd_verdict(hermitize(d).first, 1e-6) == PdVerdict::INDEFINITE);
  CHECK_THROWS_AS(pd_verdict(hermitize(d).first, -1.0), std::invalid_argument);
}

TEST_CASE("positive definite implies positive leading principal minors") {
  for (std::size_t n : {2, 3, 4}) {
    const auto h = random_spd(n);
    REQUIRE(pd_verdict(h, 1e-9) == PdVerdict::POSITIVE_DEFINITE);
    for (std::size_t lead = 1; lead <= n; ++lead) {
      CMatrix sub(lead, lead);
      for (std::size_t i = 0; i < lead; ++i)
        for (std::size_t j = 0; j < lead; ++j) sub(i, j) = h.m(i, j);
      CHECK(det_small(sub).real() > 0.0);
      CHECK(std::abs(det_small(sub).imag()) < 1e-10);
    }
  }
}

TEST_CASE("inv_sqrt") {
  const auto id = hermitize(CMatrix::identity(3)).first;
  CHECK((inv_sqrt(id) - CMatrix::identity(3)).frobenius_norm() < 1e-12);

  CMatrix d(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 9.0;
  const auto s = inv_sqrt(hermitize(d).first);
  CHECK(s(0, 0).real() == doctest::Approx(0.5));
  CHECK(s(1, 1).real() == doctest::Approx(1.0 / 3.0));

  const auto h = random_spd(3);
  const auto root = inv_sqrt(h);
  CHECK((root * h.m * root - CMatrix::identity(3)).frobenius_norm() < 1e-10);

  CMatrix ind(2, 2);
  ind(0, 0) = 1.0;
  ind(1, 1) = -1.0;
  CHECK_THROWS_AS(inv_sqrt(hermitize(ind).first), std::domain_error);
}

TEST_CASE("inverse") {
  const auto h = random_spd(4);
  const auto hinv = inverse(h);
  CHECK((hinv * h.m - CMatrix::identity(4)).frobenius_norm() < 1e-10);
}
