#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "core/banded.hpp"

using namespace tgsl;

namespace {

// Dense residual check helper for tridiagonal systems.
double tridiag_residual(const std::vector<double>& a, const std::vector<double>& b,
                        const std::vector<double>& c, const std::vector<double>& x,
                        const std::vector<double>& rhs) {
  const std::size_t n = b.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = b[i] * x[i] - rhs[i];
    if (i > 0) {
      r += a[i] * x[i - 1];
    }
    if (i + 1 < n) {
      r += c[i] * x[i + 1];
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace

TEST_CASE("Thomas solve on a diagonally dominant system") {
  const int n = 200;
  std::vector<double> a(n, -1.0), b(n, 4.0), c(n, -1.0), rhs(n);
  a[0] = 0.0;
  c[n - 1] = 0.0;
  std::mt19937 gen(7);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int i = 0; i < n; ++i) {
    rhs[i] = U(gen);
  }
  const std::vector<double> x = tridiag_solve(a, b, c, rhs);
  CHECK(tridiag_residual(a, b, c, x, rhs) < 1e-13);
}

TEST_CASE("pivoted tridiagonal solve on an indefinite system") {
  const int n = 150;
  std::vector<double> a(n), b(n), c(n), rhs(n);
  std::mt19937 gen(11);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int i = 0; i < n; ++i) {
    a[i] = (i > 0) ? U(gen) : 0.0;
    b[i] = 0.1 * U(gen);  // weak diagonal forces pivoting
    c[i] = (i + 1 < n) ? U(gen) : 0.0;
    rhs[i] = U(gen);
  }
  const std::vector<double> x = tridiag_solve_pivot(a, b, c, rhs);
  CHECK(tridiag_residual(a, b, c, x, rhs) < 1e-9);
}

TEST_CASE("Sturm bisection reproduces the discrete Neumann Laplacian spectrum") {
  // -u'' on (0,1), FD with Neumann ends, n nodes: exact discrete eigenvalues
  // are (4/h^2) sin^2(k pi h / 2) for the P1/lumped symmetrized pencil.
  const int n = 60;
  const double h = 1.0 / (n - 1);
  SymTridiag T;
  T.d.assign(n, 2.0 / (h * h));
  T.e.assign(n - 1, -1.0 / (h * h));
  T.e[0] = -std::sqrt(2.0) / (h * h);
  T.e[n - 2] = -std::sqrt(2.0) / (h * h);
  for (int k = 0; k < 5; ++k) {
    const double expected = (4.0 / (h * h)) * std::pow(std::sin(0.5 * M_PI * k * h), 2);
    CHECK(eigenvalue_k(T, k) == doctest::Approx(expected).epsilon(1e-10).scale(1.0));
  }
  // Ground state is the constant; eigenvector recovers it after unweighting.
  double lam = eigenvalue_k(T, 0);
  std::vector<double> v = eigenvector(T, &lam);
  CHECK(std::abs(lam) < 1e-9);
  CHECK(std::abs(v[5] / v[6] - 1.0) < 1e-8);
}

TEST_CASE("banded LU matches dense elimination on random systems") {
  const int n = 120, kl = 4, ku = 4;
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  BandMatrix A(n, kl, ku);
  std::vector<std::vector<double>> D(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(0, i - kl); j <= std::min(n - 1, i + ku); ++j) {
      const double v = U(gen) + (i == j ? 2.0 : 0.0);
      A.set(i, j, v);
      D[i][j] = v;
    }
  }
  std::vector<double> rhs(n);
  for (int i = 0; i < n; ++i) {
    rhs[i] = U(gen);
  }
  REQUIRE(A.factor());
  const std::vector<double> x = A.solve(rhs);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    double r = -rhs[i];
    for (int j = 0; j < n; ++j) {
      r += D[i][j] * x[j];
    }
    worst = std::max(worst, std::abs(r));
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("banded LU handles systems that require pivoting") {
  BandMatrix A(4, 1, 1);
  // Zero on the first pivot: fails without row exchanges.
  A.set(0, 0, 0.0);
  A.set(0, 1, 1.0);
  A.set(1, 0, 1.0);
  A.set(1, 1, 0.0);
  A.set(1, 2, 2.0);
  A.set(2, 1, 3.0);
  A.set(2, 2, 1.0);
  A.set(2, 3, 1.0);
  A.set(3, 2, 1.0);
  A.set(3, 3, 2.0);
  REQUIRE(A.factor());
  const std::vector<double> x = A.solve({1.0, 2.0, 3.0, 4.0});
  // Verify by substitution.
  CHECK(x[1] == doctest::Approx(1.0));                      // row 0
  CHECK(x[0] + 2.0 * x[2] == doctest::Approx(2.0));         // row 1
  CHECK(3.0 * x[1] + x[2] + x[3] == doctest::Approx(3.0));  // row 2
  CHECK(x[2] + 2.0 * x[3] == doctest::Approx(4.0));         // row 3
}
