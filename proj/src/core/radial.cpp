#include "radial.hpp"

#include <cmath>
#include <cstddef>

#include "banded.hpp"
#include "errors.hpp"

namespace tgsl {

static double shell_volume(int dim, double a, double b) {
  // Integral of |r|^{dim-1} over [a, b]; handles intervals straddling 0.
  auto prim = [dim](double x) {
    return std::copysign(std::pow(std::abs(x), dim), x) / dim;
  };
  return prim(b) - prim(a);
}

RadialGeometry RadialGeometry::build(int dim, std::vector<double> r) {
  if (dim < 1) throw InvalidArgumentError("radial geometry: dim must be >= 1");
  const std::size_t n = r.size();
  if (n < 3) throw InvalidArgumentError("radial geometry: need at least 3 nodes");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(r[i] < r[i + 1]))
      throw InvalidArgumentError("radial geometry: nodes must increase strictly");
  RadialGeometry g;
  g.dim = dim;
  g.r = std::move(r);
  g.face.resize(n - 1);
  g.vol.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double m = 0.5 * (g.r[i] + g.r[i + 1]);
    g.face[i] = std::pow(std::abs(m), dim - 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double a = (i == 0) ? g.r[0] : 0.5 * (g.r[i - 1] + g.r[i]);
    const double b = (i + 1 == n) ? g.r[n - 1] : 0.5 * (g.r[i] + g.r[i + 1]);
    g.vol[i] = shell_volume(dim, a, b);
    if (!(g.vol[i] > 0.0))
      throw InvalidArgumentError("radial geometry: degenerate cell volume");
  }
  return g;
}

double RadialGeometry::total_volume() const {
  double s = 0.0;
  for (double v : vol) s += v;
  return s;
}

double RadialGeometry::integral(const std::vector<double>& f) const {
  if (f.size() != vol.size())
    throw InvalidArgumentError("radial integral: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < vol.size(); ++i) s += vol[i] * f[i];
  return s;
}

double RadialGeometry::mean(const std::vector<double>& f) const {
  return integral(f) / total_volume();
}

void neumann_laplacian_rows(const RadialGeometry& g, std::vector<double>* sub,
                            std::vector<double>* diag, std::vector<double>* sup) {
  const std::size_t n = g.r.size();
  // Solver-convention storage: all three vectors have length n, with
  // sub[i] = A(i, i-1) (sub[0] unused) and sup[i] = A(i, i+1) (sup[n-1]
  // unused), matching tridiag_solve.
  sub->assign(n, 0.0);
  diag->assign(n, 0.0);
  sup->assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double w = g.face[i] / (g.r[i + 1] - g.r[i]);
    // Flux through face i couples nodes i and i+1.
    (*diag)[i] += w / g.vol[i];
    (*sup)[i] -= w / g.vol[i];
    (*diag)[i + 1] += w / g.vol[i + 1];
    (*sub)[i + 1] -= w / g.vol[i + 1];
  }
}

std::vector<double> neumann_poisson_zero_mean(const RadialGeometry& g,
                                              const std::vector<double>& rhs) {
  const std::size_t n = g.r.size();
  if (rhs.size() != n) throw InvalidArgumentError("poisson: rhs size mismatch");
  std::vector<double> sub, diag, sup;
  neumann_laplacian_rows(g, &sub, &diag, &sup);
  // Compatible right-hand side, then pin the mean via a rank-one shift:
  // (-Lap + vol vol^T / |Omega|^2 * c) acting on a mean-zero solution equals
  // -Lap; adding the projector makes the matrix nonsingular.  Equivalent and
  // simpler here: replace the last row by the mean constraint after
  // symmetrizing.  We instead add a small multiple of the volume weights to
  // the diagonal via the standard trick of solving with one pinned node and
  // re-centering, which is exact for the compatible problem.
  const double mean_rhs = g.mean(rhs);
  std::vector<double> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = rhs[i] - mean_rhs;
  // Pin node 0: solve the (n-1)x(n-1) trailing system with psi[0] = 0.
  std::vector<double> d2(diag.begin() + 1, diag.end());
  std::vector<double> s2(sub.begin() + 1, sub.end());
  std::vector<double> u2(sup.begin() + 1, sup.end());
  std::vector<double> b2(b.begin() + 1, b.end());
  // Dropping row 0 loses its flux balance; restore symmetry of the trailing
  // block (the coupling of node 1 to node 0 vanishes since psi[0] = 0, but
  // node 1's diagonal keeps the face-0 term, which makes the block SPD).
  std::vector<double> x2 = tridiag_solve_pivot(s2, d2, u2, b2);
  std::vector<double> psi(n);
  psi[0] = 0.0;
  for (std::size_t i = 1; i < n; ++i) psi[i] = x2[i - 1];
  const double m = g.mean(psi);
  for (double& v : psi) v -= m;
  return psi;
}

std::vector<double> neumann_helmholtz(const RadialGeometry& g, double c,
                                      const std::vector<double>& rhs) {
  const std::size_t n = g.r.size();
  if (rhs.size() != n) throw InvalidArgumentError("helmholtz: rhs size mismatch");
  if (!(c > 0.0)) throw InvalidArgumentError("helmholtz: c must be positive");
  std::vector<double> sub, diag, sup;
  neumann_laplacian_rows(g, &sub, &diag, &sup);
  for (double& v : diag) v += c;
  return tridiag_solve(sub, diag, sup, rhs);
}

std::vector<double> dirichlet_poisson(const RadialGeometry& g,
                                      const std::vector<double>& rhs) {
  const std::size_t n = g.r.size();
  if (rhs.size() != n) throw InvalidArgumentError("poisson: rhs size mismatch");
  std::vector<double> sub, diag, sup;
  neumann_laplacian_rows(g, &sub, &diag, &sup);
  std::vector<double> b = rhs;
  // Dirichlet end rows.
  diag[0] = 1.0;
  sup[0] = 0.0;
  b[0] = 0.0;
  diag[n - 1] = 1.0;
  sub[n - 1] = 0.0;
  b[n - 1] = 0.0;
  return tridiag_solve_pivot(sub, diag, sup, b);
}

}  // namespace tgsl
