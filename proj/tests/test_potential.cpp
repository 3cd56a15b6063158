#include <doctest.h>

#include <cmath>

#include "core/potential.hpp"
#include "core/quadrature.hpp"

using namespace tgsl;

TEST_CASE("potential derivatives at reference points") {
  CHECK(potential_f(1.0) == 0.0);
  CHECK(potential_f(-1.0) == 0.0);
  CHECK(potential_f(0.0) == 1.0);
  CHECK(potential_df(1.0) == 0.0);
  CHECK(potential_d2f(1.0) == 8.0);
  CHECK(potential_d2f(-1.0) == 8.0);
  CHECK(potential_d2f(0.0) == -4.0);
  CHECK(potential_d3f(0.5) == 12.0);
}

TEST_CASE("profile solves the standing-wave equation to 1e-12") {
  const int n = 10000;
  double worst_ode = 0.0, worst_grad = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = -20.0 + 40.0 * i / (n - 1);
    worst_ode = std::max(worst_ode, std::abs(theta_pp(z) - potential_df(theta(z))));
    worst_grad = std::max(worst_grad,
                          std::abs(theta_p(z) - std::sqrt(2.0 * potential_f(theta(z)))));
  }
  CHECK(worst_ode < 1e-12);
  CHECK(worst_grad < 1e-12);
  CHECK(theta(0.0) == 0.0);
  CHECK(theta(1e3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("profile decays exponentially with rate sqrt(2)") {
  // Near z ~ 12 the quantity 1 - theta sits at a few ulp of 1, so allow a
  // little rounding headroom on top of the analytic constant 2.
  for (double z = 2.0; z <= 12.0; z += 1.0) {
    CHECK(std::abs(1.0 - theta(z)) <=
          2.0 * std::exp(-2.0 * std::sqrt(2.0) * z) + 4e-16);
    CHECK(theta_p(z) <=
          4.0 * std::sqrt(2.0) * std::exp(-2.0 * std::sqrt(2.0) * z) + 1e-15);
  }
}

TEST_CASE("surface tension equals 4 sqrt(2)/3 and its integral identities") {
  const double S = surface_tension();
  CHECK(S == doctest::Approx(4.0 * std::sqrt(2.0) / 3.0).epsilon(1e-12));
  // S = int (theta')^2 dz = 2 int f(theta) dz over the line.
  const double s1 = integrate([](double z) { double t = theta_p(z); return t * t; },
                              -30.0, 30.0, 1e-13);
  const double s2 = 2.0 * integrate([](double z) { return potential_f(theta(z)); },
                                    -30.0, 30.0, 1e-13);
  CHECK(s1 == doctest::Approx(S).epsilon(1e-10));
  CHECK(s2 == doctest::Approx(S).epsilon(1e-10));
}

TEST_CASE("mollifier shape, symmetry, and moments") {
  CHECK(mollifier(-1.0) == 0.0);
  CHECK(mollifier(-5.0) == 0.0);
  CHECK(mollifier(1.0) == 1.0);
  CHECK(mollifier(7.0) == 1.0);
  CHECK(mollifier(0.0) == doctest::Approx(0.5).epsilon(1e-13));
  for (double z = -0.9; z < 0.95; z += 0.1) {
    CHECK(mollifier(z) + mollifier(-z) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mollifier(z + 0.05) > mollifier(z));  // strictly increasing inside
  }
  // int eta' = 1, int z eta' = 0, int eta theta' = 1 (symmetric profile).
  const double i0 = integrate([](double z) { return mollifier_p(z); }, -1.0, 1.0, 1e-13);
  const double i1 = integrate([](double z) { return z * mollifier_p(z); }, -1.0, 1.0, 1e-13);
  const double i2 = integrate([](double z) { return mollifier(z) * theta_p(z); },
                              -20.0, 20.0, 1e-13);
  CHECK(i0 == doctest::Approx(1.0).epsilon(1e-11));
  CHECK(std::abs(i1) < 1e-12);
  CHECK(i2 == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("mollifier derivatives are consistent") {
  for (double z = -0.95; z < 1.0; z += 0.13) {
    const double h = 1e-5;
    const double fd1 = (mollifier(z + h) - mollifier(z - h)) / (2.0 * h);
    const double fd2 = (mollifier_p(z + h) - mollifier_p(z - h)) / (2.0 * h);
    CHECK(fd1 == doctest::Approx(mollifier_p(z)).epsilon(1e-7));
    CHECK(fd2 == doctest::Approx(mollifier_pp(z)).epsilon(1e-6));
  }
}

TEST_CASE("shifted tail switches") {
  const double M = 3.0;
  CHECK(mollifier_plus(M + 1.0, M) == 1.0);
  CHECK(mollifier_plus(M - 1.0, M) == 0.0);
  CHECK(mollifier_minus(-M - 1.0, M) == 1.0);
  CHECK(mollifier_minus(-M + 1.0, M) == 0.0);
  CHECK(mollifier_plus(0.0, M) == 0.0);
  CHECK(mollifier_minus(0.0, M) == 0.0);
}

TEST_CASE("cutoff plateaus and smooth transition") {
  CHECK(cutoff(0.0) == 1.0);
  CHECK(cutoff(0.5) == 1.0);
  CHECK(cutoff(-0.49) == 1.0);
  CHECK(cutoff(1.0) == 0.0);
  CHECK(cutoff(-1.3) == 0.0);
  CHECK(cutoff(0.75) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cutoff(0.6) > cutoff(0.7));
  CHECK(cutoff(-0.8) == doctest::Approx(cutoff(0.8)).epsilon(1e-13));
  for (double s = 0.55; s < 1.0; s += 0.08) {
    const double h = 1e-5;
    const double fd1 = (cutoff(s + h) - cutoff(s - h)) / (2.0 * h);
    const double fd2 = (cutoff_p(s + h) - cutoff_p(s - h)) / (2.0 * h);
    CHECK(fd1 == doctest::Approx(cutoff_p(s)).epsilon(1e-6));
    CHECK(fd2 == doctest::Approx(cutoff_pp(s)).epsilon(1e-5));
  }
}

TEST_CASE("quadrature oracle values") {
  CHECK(integrate([](double x) { return x * x * x; }, 0.0, 1.0) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
        doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
  // Corrected cumulative trapezoid is fourth order on smooth data.
  for (int n : {201, 401}) {
    const double h = 1.0 / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
      f[i] = std::exp(2.0 * i * h);
    }
    const std::vector<double> F = cumtrapz_corrected(f, h);
    const double exact = 0.5 * (std::exp(2.0) - 1.0);
    const double err = std::abs(F.back() - exact);
    CHECK(err < 1e-9 * exact);
  }
}
