#include "core/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace tgsl {
namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss
// rule (standard QUADPACK constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct GkResult {
  double kronrod;
  double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  double fv[15];
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(c - hw * kXgk[j]);
    fv[14 - j] = f(c + hw * kXgk[j]);
  }
  fv[7] = f(c);
  double resk = kWgk[7] * fv[7];
  double resg = kWg[3] * fv[7];
  for (int j = 0; j < 7; ++j) {
    resk += kWgk[j] * (fv[j] + fv[14 - j]);
    if (j % 2 == 1) {
      resg += kWg[j / 2] * (fv[j] + fv[14 - j]);
    }
  }
  resk *= hw;
  resg *= hw;
  return {resk, std::abs(resk - resg)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double abstol, int depth) {
  GkResult r = gk15(f, a, b);
  if (r.err <= abstol || depth <= 0) {
    return r.kronrod;
  }
  const double c = 0.5 * (a + b);
  return integrate_rec(f, a, c, 0.5 * abstol, depth - 1) +
         integrate_rec(f, c, b, 0.5 * abstol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abstol, int max_depth) {
  if (a == b) {
    return 0.0;
  }
  return integrate_rec(f, a, b, abstol, max_depth);
}

double trapz(const std::vector<double>& f, double h) {
  if (f.size() < 2) {
    return 0.0;
  }
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    s += f[i];
  }
  return s * h;
}

double trapz(const std::vector<double>& x, const std::vector<double>& f) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    s += 0.5 * (x[i] - x[i - 1]) * (f[i] + f[i - 1]);
  }
  return s;
}

std::vector<double> cumtrapz_corrected(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  if (n < 5) {
    throw std::invalid_argument("cumtrapz_corrected: need at least 5 nodes");
  }
  // Slopes of f by second-order finite differences (one-sided at the ends);
  // the h^2/12 * (f'(x0) - f'(xi)) correction then makes the rule O(h^4).
  std::vector<double> fp(n);
  fp[0] = (-1.5 * f[0] + 2.0 * f[1] - 0.5 * f[2]) / h;
  fp[n - 1] = (1.5 * f[n - 1] - 2.0 * f[n - 2] + 0.5 * f[n - 3]) / h;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    fp[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
  }
  std::vector<double> out(n, 0.0);
  double acc = 0.0;
  const double c = h * h / 12.0;
  for (std::size_t i = 1; i < n; ++i) {
    acc += 0.5 * h * (f[i - 1] + f[i]);
    out[i] = acc + c * (fp[0] - fp[i]);
  }
  return out;
}

}  // namespace tgsl
