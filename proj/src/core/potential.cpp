#include "core/potential.hpp"

#include <cmath>

#include "core/quadrature.hpp"

namespace tgsl {
namespace {

const double kSqrt2 = std::sqrt(2.0);

// Bump exp(-1/(1 - s^2)) on (-1,1), extended by zero.
double bump(double s) {
  if (std::abs(s) >= 1.0) {
    return 0.0;
  }
  return std::exp(-1.0 / (1.0 - s * s));
}

double bump_p(double s) {
  if (std::abs(s) >= 1.0) {
    return 0.0;
  }
  const double w = 1.0 - s * s;
  return bump(s) * (-2.0 * s / (w * w));
}

double bump_norm() {
  static const double n = integrate([](double s) { return bump(s); }, -1.0, 1.0, 1e-15);
  return n;
}

// Bump exp(-1/(t(1-t))) on (0,1), extended by zero; used by the cutoff.
double ubump(double t) {
  if (t <= 0.0 || t >= 1.0) {
    return 0.0;
  }
  return std::exp(-1.0 / (t * (1.0 - t)));
}

double ubump_p(double t) {
  if (t <= 0.0 || t >= 1.0) {
    return 0.0;
  }
  const double w = t * (1.0 - t);
  return ubump(t) * (1.0 - 2.0 * t) / (w * w);
}

double ubump_norm() {
  static const double n = integrate([](double t) { return ubump(t); }, 0.0, 1.0, 1e-15);
  return n;
}

// Normalized primitive of ubump: 0 at t<=0, 1 at t>=1.
double ubump_primitive(double t) {
  if (t <= 0.0) {
    return 0.0;
  }
  if (t >= 1.0) {
    return 1.0;
  }
  // Integrate over the shorter end for accuracy.
  if (t <= 0.5) {
    return integrate([](double s) { return ubump(s); }, 0.0, t, 1e-15) / ubump_norm();
  }
  return 1.0 - integrate([](double s) { return ubump(s); }, t, 1.0, 1e-15) / ubump_norm();
}

}  // namespace

double potential_f(double u) {
  const double w = u * u - 1.0;
  return w * w;
}

double potential_df(double u) { return 4.0 * u * (u * u - 1.0); }

double potential_d2f(double u) { return 12.0 * u * u - 4.0; }

double potential_d3f(double u) { return 24.0 * u; }

double theta(double z) { return std::tanh(kSqrt2 * z); }

double theta_p(double z) {
  const double t = theta(z);
  return kSqrt2 * (1.0 - t * t);
}

double theta_pp(double z) { return potential_df(theta(z)); }

double theta_ppp(double z) { return potential_d2f(theta(z)) * theta_p(z); }

double surface_tension() {
  static const double s = integrate(
      [](double u) { return std::sqrt(2.0 * potential_f(u)); }, -1.0, 1.0, 1e-14);
  return s;
}

double mollifier(double z) {
  if (z <= -1.0) {
    return 0.0;
  }
  if (z >= 1.0) {
    return 1.0;
  }
  if (z <= 0.0) {
    return integrate([](double s) { return bump(s); }, -1.0, z, 1e-15) / bump_norm();
  }
  // Use symmetry eta(z) = 1 - eta(-z) to keep the integration interval short.
  return 1.0 - integrate([](double s) { return bump(s); }, z, 1.0, 1e-15) / bump_norm();
}

double mollifier_p(double z) { return bump(z) / bump_norm(); }

double mollifier_pp(double z) { return bump_p(z) / bump_norm(); }

double mollifier_plus(double z, double M) { return mollifier(z - M); }

double mollifier_minus(double z, double M) { return mollifier(-M - z); }

double cutoff(double s) {
  const double a = std::abs(s);
  if (a <= 0.5) {
    return 1.0;
  }
  if (a >= 1.0) {
    return 0.0;
  }
  return 1.0 - ubump_primitive(2.0 * a - 1.0);
}

double cutoff_p(double s) {
  const double a = std::abs(s);
  if (a <= 0.5 || a >= 1.0) {
    return 0.0;
  }
  const double g = -2.0 * ubump(2.0 * a - 1.0) / ubump_norm();
  return (s < 0.0) ? -g : g;
}

double cutoff_pp(double s) {
  const double a = std::abs(s);
  if (a <= 0.5 || a >= 1.0) {
    return 0.0;
  }
  return -4.0 * ubump_p(2.0 * a - 1.0) / ubump_norm();
}

}  // namespace tgsl
