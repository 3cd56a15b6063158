#include "diffuse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "banded.hpp"
#include "errors.hpp"
#include "potential.hpp"
#include "radial.hpp"

namespace tgsl {
namespace {

// Tridiagonal action y = T x from row arrays.
void tri_apply(const std::vector<double>& sub, const std::vector<double>& diag,
               const std::vector<double>& sup, const std::vector<double>& x,
               std::vector<double>* y) {
  const std::size_t n = x.size();
  y->resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = diag[i] * x[i];
    if (i > 0) s += sub[i] * x[i - 1];
    if (i + 1 < n) s += sup[i] * x[i + 1];
    (*y)[i] = s;
  }
}

}  // namespace

double DiffuseResult::interface_position(std::size_t k) const {
  const std::vector<double>& u = snaps.at(k).u;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    if (u[i] == 0.0) return r[i];
    if (u[i] * u[i + 1] < 0.0) {
      const double w = u[i] / (u[i] - u[i + 1]);
      return r[i] + w * (r[i + 1] - r[i]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

DiffuseResult diffuse_run(const DiffuseConfig& cfg, std::vector<double> u,
                          std::vector<double> sg) {
  if (cfg.n < 5) throw InvalidArgumentError("phase-field solver: n too small");
  if (!(cfg.eps > 0.0 && cfg.dt > 0.0 && cfg.T > 0.0))
    throw InvalidArgumentError("phase-field solver: eps, dt, T must be positive");
  const std::size_t n = static_cast<std::size_t>(cfg.n);
  if (u.size() != n || sg.size() != n)
    throw InvalidArgumentError("phase-field solver: initial field size mismatch");

  DiffuseResult res;
  res.cfg = cfg;
  res.r.resize(n);
  const double h = (cfg.r_max - cfg.r_min) / (cfg.n - 1);
  for (std::size_t i = 0; i < n; ++i) res.r[i] = cfg.r_min + i * h;
  RadialGeometry g = RadialGeometry::build(cfg.dim, res.r);

  // L = -Lap rows (nodal form), A = (eps^2 L + kappa_s I) / eps.
  std::vector<double> ls, ld, lu;
  neumann_laplacian_rows(g, &ls, &ld, &lu);
  const double eps = cfg.eps;
  const double ks = cfg.kappa_s;
  std::vector<double> as(ls), ad(ld), au(lu);
  for (double& v : as) v *= eps;
  for (double& v : au) v *= eps;
  for (std::size_t i = 0; i < n; ++i) ad[i] = eps * ld[i] + ks / eps;

  // Interleaved unknowns x = (u_0, s_0, u_1, s_1, ...).  First block row:
  //   [I/dt + (L + c I) A - c I] u - 2 c sigma = u^n/dt - (L + c I) b,
  // second:
  //   c (I - A) u + [I/dt + L + 2 c I] sigma = sigma^n/dt + c b,
  // with c = 1 when reactions are on and c = 0 otherwise, and
  // b = (f'(u^n) - kappa_s u^n) / eps.
  const double c = cfg.reactions ? 1.0 : 0.0;
  const std::size_t N = 2 * n;
  BandMatrix M(N, 4, 4);
  auto col_in = [&](std::ptrdiff_t j) {
    return j >= 0 && j < static_cast<std::ptrdiff_t>(n);
  };
  auto l_at = [&](std::size_t i, std::ptrdiff_t j) -> double {
    const std::ptrdiff_t d = j - static_cast<std::ptrdiff_t>(i);
    if (d == 0) return ld[i];
    if (d == -1) return ls[i];
    if (d == 1) return lu[i];
    return 0.0;
  };
  auto a_at = [&](std::size_t i, std::ptrdiff_t j) -> double {
    const std::ptrdiff_t d = j - static_cast<std::ptrdiff_t>(i);
    if (d == 0) return ad[i];
    if (d == -1) return as[i];
    if (d == 1) return au[i];
    return 0.0;
  };
  for (std::size_t i = 0; i < n; ++i) {
    // (L + cI) A row i: sum over the tridiagonal band of L + cI.
    for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) - 2;
         j <= static_cast<std::ptrdiff_t>(i) + 2; ++j) {
      if (!col_in(j)) continue;
      double v = 0.0;
      for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - 1;
           k <= static_cast<std::ptrdiff_t>(i) + 1; ++k) {
        if (!col_in(k)) continue;
        double lik = l_at(i, k);
        if (k == static_cast<std::ptrdiff_t>(i)) lik += c;
        if (lik != 0.0) v += lik * a_at(static_cast<std::size_t>(k), j);
      }
      if (j == static_cast<std::ptrdiff_t>(i)) v += 1.0 / cfg.dt - c;
      if (v != 0.0) M.add(2 * i, 2 * static_cast<std::size_t>(j), v);
    }
    if (c != 0.0) M.add(2 * i, 2 * i + 1, -2.0 * c);
    // Second block row.
    if (c != 0.0) {
      for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) - 1;
           j <= static_cast<std::ptrdiff_t>(i) + 1; ++j) {
        if (!col_in(j)) continue;
        double v = -c * a_at(i, j);
        if (j == static_cast<std::ptrdiff_t>(i)) v += c;
        if (v != 0.0) M.add(2 * i + 1, 2 * static_cast<std::size_t>(j), v);
      }
    }
    for (std::ptrdiff_t j = static_cast<std::ptrdiff_t>(i) - 1;
         j <= static_cast<std::ptrdiff_t>(i) + 1; ++j) {
      if (!col_in(j)) continue;
      double v = l_at(i, j);
      if (j == static_cast<std::ptrdiff_t>(i)) v += 1.0 / cfg.dt + 2.0 * c;
      M.add(2 * i + 1, 2 * static_cast<std::size_t>(j) + 1, v);
    }
  }
  if (!M.factor()) throw NumericalError("phase-field solver: singular step matrix");

  auto chem_potential = [&](const std::vector<double>& uu,
                            const std::vector<double>& bb) {
    std::vector<double> mu;
    tri_apply(as, ad, au, uu, &mu);
    for (std::size_t i = 0; i < n; ++i) mu[i] += bb[i];
    return mu;
  };
  auto energy_of = [&](const std::vector<double>& uu) {
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double du = (uu[i + 1] - uu[i]) / h;
      e += g.face[i] * h * 0.5 * eps * du * du;
    }
    for (std::size_t i = 0; i < n; ++i)
      e += g.vol[i] * potential_f(uu[i]) / eps;
    return e;
  };
  auto mass_of = [&](const std::vector<double>& uu,
                     const std::vector<double>& ss) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m += g.vol[i] * (uu[i] + ss[i]);
    return m;
  };

  std::vector<double> b(n);
  auto fill_b = [&](const std::vector<double>& uu) {
    for (std::size_t i = 0; i < n; ++i)
      b[i] = (potential_df(uu[i]) - ks * uu[i]) / eps;
  };

  res.mass0 = mass_of(u, sg);
  fill_b(u);
  res.snaps.push_back({0.0, u, sg, chem_potential(u, b)});
  res.energy.push_back(energy_of(u));

  const long steps = static_cast<long>(std::llround(cfg.T / cfg.dt));
  std::vector<double> rhs(N), lb(n);
  for (long s = 1; s <= steps; ++s) {
    fill_b(u);
    tri_apply(ls, ld, lu, b, &lb);
    for (std::size_t i = 0; i < n; ++i) {
      rhs[2 * i] = u[i] / cfg.dt - lb[i] - c * b[i];
      rhs[2 * i + 1] = sg[i] / cfg.dt + c * b[i];
    }
    std::vector<double> x = M.solve(rhs);
    double umax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = x[2 * i];
      sg[i] = x[2 * i + 1];
      umax = std::max(umax, std::abs(u[i]));
      if (!std::isfinite(u[i]) || !std::isfinite(sg[i]))
        throw NumericalError("phase-field solver: non-finite field");
    }
    if (umax > cfg.blowup)
      throw NumericalError("phase-field solver: sup |u| exceeded the blow-up guard");
    res.mass_drift =
        std::max(res.mass_drift, std::abs(mass_of(u, sg) - res.mass0));
    if (s % cfg.store_every == 0 || s == steps) {
      const double t = s * cfg.dt;
      res.snaps.push_back({t, u, sg, chem_potential(u, b)});
      res.energy.push_back(energy_of(u));
    }
  }
  return res;
}

}  // namespace tgsl
