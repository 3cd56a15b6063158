#include "core/sharp.hpp"

#include <algorithm>
#include <cmath>

#include "core/banded.hpp"
#include "core/errors.hpp"
#include "core/potential.hpp"

namespace tgsl {
namespace {

// Geometry weights for the radial finite-volume discretization on one
// uniform sub-grid: face "areas" |r|^{dim-1} at midpoints and cell volumes
// (int |r|^{dim-1} dr over the cell; half cells at the ends).
struct FvSide {
  std::vector<double> face;  // size n-1, face between i and i+1
  std::vector<double> vol;   // size n
};

double cell_volume(int dim, double ra, double rb) {
  if (dim == 1) {
    return rb - ra;
  }
  // Cells never straddle r = 0, and r >= 0 for the ball.
  return (std::pow(rb, dim) - std::pow(ra, dim)) / dim;
}

FvSide fv_side(int dim, const std::vector<double>& r) {
  const std::size_t n = r.size();
  const double h = r[1] - r[0];
  FvSide g;
  g.face.resize(n - 1);
  g.vol.resize(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double rf = 0.5 * (r[i] + r[i + 1]);
    g.face[i] = (dim == 1) ? 1.0 : std::pow(rf, dim - 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double ra = (i == 0) ? r[0] : r[i] - 0.5 * h;
    const double rb = (i + 1 == n) ? r[n - 1] : r[i] + 0.5 * h;
    g.vol[i] = cell_volume(dim, ra, rb);
  }
  return g;
}

std::vector<double> uniform_grid(double a, double b, int n) {
  std::vector<double> r(n);
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) {
    r[i] = (i + 1 == n) ? b : a + i * h;
  }
  return r;
}

// One-sided elliptic solve of -Lap mu + mu = 2 sigma + source_sign with a
// Dirichlet value at the interface end and a natural (no-flux) outer end.
// `interface_last` = true when the interface is the last node (minus side).
std::vector<double> solve_mu_side(int dim, const std::vector<double>& r,
                                  const std::vector<double>& sigma, double source_sign,
                                  double mu_gamma, bool interface_last) {
  const int n = static_cast<int>(r.size());
  const double h = r[1] - r[0];
  const FvSide g = fv_side(dim, r);
  std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), rhs(n, 0.0);
  for (int i = 0; i < n; ++i) {
    b[i] = 1.0;
    rhs[i] = 2.0 * sigma[i] + source_sign;
    if (i > 0) {
      const double w = g.face[i - 1] / (h * g.vol[i]);
      a[i] -= w;
      b[i] += w;
    }
    if (i + 1 < n) {
      const double w = g.face[i] / (h * g.vol[i]);
      c[i] -= w;
      b[i] += w;
    }
  }
  const int id = interface_last ? n - 1 : 0;
  a[id] = c[id] = 0.0;
  b[id] = 1.0;
  rhs[id] = mu_gamma;
  return tridiag_solve(a, b, c, rhs);
}

// Second-order one-sided derivative at the interface node.
double dmu_at_interface(const std::vector<double>& f, double h, bool last) {
  const std::size_t n = f.size();
  if (last) {
    return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  }
  return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
}

}  // namespace

double eval_cubic_uniform(const std::vector<double>& f, double x0, double h, double x) {
  const int n = static_cast<int>(f.size());
  const double s = (x - x0) / h;
  int i0 = static_cast<int>(std::floor(s)) - 1;
  i0 = std::clamp(i0, 0, n - 4);
  const double t = s - i0;  // local coordinate; nodes at 0,1,2,3
  double out = 0.0;
  for (int j = 0; j < 4; ++j) {
    double lj = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k != j) {
        lj *= (t - k) / (j - k);
      }
    }
    out += lj * f[i0 + j];
  }
  return out;
}

namespace {

// Derivative of the cubic Lagrange interpolant at x.
double eval_cubic_uniform_d(const std::vector<double>& f, double x0, double h, double x) {
  const int n = static_cast<int>(f.size());
  const double s = (x - x0) / h;
  int i0 = static_cast<int>(std::floor(s)) - 1;
  i0 = std::clamp(i0, 0, n - 4);
  const double t = s - i0;
  double out = 0.0;
  for (int j = 0; j < 4; ++j) {
    double sum = 0.0;
    for (int m = 0; m < 4; ++m) {
      if (m == j) {
        continue;
      }
      double prod = 1.0;
      for (int k = 0; k < 4; ++k) {
        if (k != j && k != m) {
          prod *= (t - k);
        }
      }
      sum += prod;
    }
    double denom = 1.0;
    for (int k = 0; k < 4; ++k) {
      if (k != j) {
        denom *= (j - k);
      }
    }
    out += f[i0 + j] * sum / denom;
  }
  return out / h;
}

}  // namespace

double interface_curvature(int dim, double R) {
  return (dim == 1) ? 0.0 : -(dim - 1) / R;
}

double gibbs_thomson_coefficient() { return 0.5 * surface_tension(); }

void sharp_solve_mu(const SharpConfig& cfg, SharpState* st) {
  const double gt = (cfg.gibbs_thomson < 0.0) ? gibbs_thomson_coefficient()
                                              : cfg.gibbs_thomson;
  st->kappa = interface_curvature(cfg.dim, st->R);
  const double mu_gamma = gt * st->kappa;
  st->mum = solve_mu_side(cfg.dim, st->rm, st->sgm, -1.0, mu_gamma, /*interface_last=*/true);
  st->mup = solve_mu_side(cfg.dim, st->rp, st->sgp, +1.0, mu_gamma, /*interface_last=*/false);
  const double hm = st->rm[1] - st->rm[0];
  const double hp = st->rp[1] - st->rp[0];
  const double jump = dmu_at_interface(st->mup, hp, false) -
                      dmu_at_interface(st->mum, hm, true);
  st->V = -0.5 * jump;
}

namespace {

// Implicit Euler step of the sigma equation on the composite grid.  mu is
// the current chemical potential (already on the same grids).
void step_sigma(const SharpConfig& cfg, SharpState* st) {
  const int n = cfg.n_per_side;
  const int m = 2 * n - 1;  // composite unknowns, interface node shared
  const double hm = st->rm[1] - st->rm[0];
  const double hp = st->rp[1] - st->rp[0];
  const FvSide gm = fv_side(cfg.dim, st->rm);
  const FvSide gp = fv_side(cfg.dim, st->rp);

  auto grid_r = [&](int i) { return (i < n) ? st->rm[i] : st->rp[i - n + 1]; };
  auto face = [&](int i) {  // face between composite nodes i and i+1
    return (i < n - 1) ? gm.face[i] : gp.face[i - n + 1];
  };
  auto spacing = [&](int i) { return (i < n - 1) ? hm : hp; };
  auto volume = [&](int i) {
    if (i < n - 1) {
      return gm.vol[i];
    }
    if (i == n - 1) {
      return gm.vol[n - 1] + gp.vol[0];  // two half-cells at the interface
    }
    return gp.vol[i - n + 1];
  };
  auto mu_at = [&](int i) { return (i < n) ? st->mum[i] : st->mup[i - n + 1]; };
  auto sg_at = [&](int i) { return (i < n) ? st->sgm[i] : st->sgp[i - n + 1]; };

  std::vector<double> a(m, 0.0), b(m, 0.0), c(m, 0.0), rhs(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double vol = volume(i);
    b[i] = 1.0 / cfg.dt + 2.0;
    // Source mu - u with u = -1 on the minus side, +1 on the plus side; the
    // interface cell integrates both halves.
    double src;
    if (i < n - 1) {
      src = mu_at(i) + 1.0;
    } else if (i > n - 1) {
      src = mu_at(i) - 1.0;
    } else {
      src = mu_at(i) + (gm.vol[n - 1] - gp.vol[0]) / vol;
    }
    rhs[i] = sg_at(i) / cfg.dt + src;
    if (i > 0) {
      const double w = face(i - 1) / (spacing(i - 1) * vol);
      a[i] -= w;
      b[i] += w;
    }
    if (i + 1 < m) {
      const double w = face(i) / (spacing(i) * vol);
      c[i] -= w;
      b[i] += w;
    }
  }
  const std::vector<double> s = tridiag_solve(a, b, c, rhs);
  for (int i = 0; i < n; ++i) {
    st->sgm[i] = s[i];
  }
  for (int i = 0; i < n; ++i) {
    st->sgp[i] = s[n - 1 + i];
  }
}

// Remaps a one-sided field to a new sub-grid; queries beyond the old range
// use the edge cubic (smooth extension over the sliver swept by the front).
std::vector<double> remap(const std::vector<double>& old_r, const std::vector<double>& f,
                          const std::vector<double>& new_r) {
  const double h = old_r[1] - old_r[0];
  std::vector<double> out(new_r.size());
  for (std::size_t i = 0; i < new_r.size(); ++i) {
    out[i] = eval_cubic_uniform(f, old_r[0], h, new_r[i]);
  }
  return out;
}

}  // namespace

SharpTrajectory sharp_run(const SharpConfig& cfg) {
  if (cfg.n_per_side < 8 || cfg.dt <= 0.0 || cfg.T <= 0.0 ||
      cfg.R0 <= cfg.r_min || cfg.R0 >= cfg.r_max ||
      (cfg.dim != 1 && cfg.r_min != 0.0) || cfg.dim < 1 || cfg.dim > 3) {
    throw InvalidArgumentError("sharp_run: invalid configuration");
  }
  SharpTrajectory traj;
  traj.cfg = cfg;

  SharpState st;
  st.t = 0.0;
  st.R = cfg.R0;
  st.rm = uniform_grid(cfg.r_min, st.R, cfg.n_per_side);
  st.rp = uniform_grid(st.R, cfg.r_max, cfg.n_per_side);
  st.sgm.assign(cfg.n_per_side, cfg.sigma_init);
  st.sgp.assign(cfg.n_per_side, cfg.sigma_init);
  sharp_solve_mu(cfg, &st);
  traj.snaps.push_back(st);

  // Boundary guard band: two initial grid cells on each side.
  const double guard_m = 2.0 * (cfg.R0 - cfg.r_min) / (cfg.n_per_side - 1);
  const double guard_p = 2.0 * (cfg.r_max - cfg.R0) / (cfg.n_per_side - 1);

  const long nsteps = std::lround(cfg.T / cfg.dt);
  for (long step = 1; step <= nsteps; ++step) {
    // Move the front with the current velocity.
    const double Rnew = st.R + cfg.dt * st.V;
    if (Rnew - cfg.r_min < guard_m || cfg.r_max - Rnew < guard_p) {
      throw GeometryError("sharp_run: interface entered the boundary guard band");
    }
    SharpState nx;
    nx.t = step * cfg.dt;
    nx.R = Rnew;
    nx.rm = uniform_grid(cfg.r_min, Rnew, cfg.n_per_side);
    nx.rp = uniform_grid(Rnew, cfg.r_max, cfg.n_per_side);
    nx.sgm = remap(st.rm, st.sgm, nx.rm);
    nx.sgp = remap(st.rp, st.sgp, nx.rp);
    nx.mum = remap(st.rm, st.mum, nx.rm);
    nx.mup = remap(st.rp, st.mup, nx.rp);
    nx.V = st.V;
    nx.kappa = interface_curvature(cfg.dim, Rnew);
    step_sigma(cfg, &nx);
    sharp_solve_mu(cfg, &nx);
    for (double v : nx.mum) {
      if (!std::isfinite(v)) {
        throw NumericalError("sharp_run: non-finite field");
      }
    }
    st = nx;
    if (step % cfg.store_every == 0 || step == nsteps) {
      traj.snaps.push_back(st);
    }
  }
  return traj;
}

std::size_t SharpTrajectory::snap_before(double t) const {
  std::size_t lo = 0, hi = snaps.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (snaps[mid].t <= t) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

double SharpTrajectory::eval_on_snap(const SharpState& s, Field f, Side sd, double r,
                                     bool deriv) const {
  const std::vector<double>& grid = (sd == Side::minus) ? s.rm : s.rp;
  const std::vector<double>* fld = nullptr;
  if (f == Field::mu) {
    fld = (sd == Side::minus) ? &s.mum : &s.mup;
  } else {
    fld = (sd == Side::minus) ? &s.sgm : &s.sgp;
  }
  const double h = grid[1] - grid[0];
  return deriv ? eval_cubic_uniform_d(*fld, grid[0], h, r)
               : eval_cubic_uniform(*fld, grid[0], h, r);
}

double SharpTrajectory::eval(Field f, Side s, double t, double r) const {
  const std::size_t i = snap_before(t);
  if (i + 1 >= snaps.size()) {
    return eval_on_snap(snaps[i], f, s, r, false);
  }
  const double t0 = snaps[i].t, t1 = snaps[i + 1].t;
  const double w = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
  return (1.0 - w) * eval_on_snap(snaps[i], f, s, r, false) +
         w * eval_on_snap(snaps[i + 1], f, s, r, false);
}

double SharpTrajectory::eval_dr(Field f, Side s, double t, double r) const {
  const std::size_t i = snap_before(t);
  if (i + 1 >= snaps.size()) {
    return eval_on_snap(snaps[i], f, s, r, true);
  }
  const double t0 = snaps[i].t, t1 = snaps[i + 1].t;
  const double w = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
  return (1.0 - w) * eval_on_snap(snaps[i], f, s, r, true) +
         w * eval_on_snap(snaps[i + 1], f, s, r, true);
}

double SharpTrajectory::eval_dt(Field f, Side s, double t, double r) const {
  // Centered difference over one snapshot interval (one-sided at the ends).
  const std::size_t i = snap_before(t);
  const std::size_t last = snaps.size() - 1;
  const std::size_t i0 = (i == 0) ? 0 : i - 1;
  const std::size_t i1 = std::min(i + 1, last);
  if (i1 == i0) {
    return 0.0;
  }
  const double f0 = eval_on_snap(snaps[i0], f, s, r, false);
  const double f1 = eval_on_snap(snaps[i1], f, s, r, false);
  return (f1 - f0) / (snaps[i1].t - snaps[i0].t);
}

double SharpTrajectory::R_at(double t) const {
  const std::size_t i = snap_before(t);
  if (i + 1 >= snaps.size()) {
    return snaps[i].R;
  }
  const double t0 = snaps[i].t, t1 = snaps[i + 1].t;
  const double w = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
  return (1.0 - w) * snaps[i].R + w * snaps[i + 1].R;
}

double SharpTrajectory::V_at(double t) const {
  const std::size_t i = snap_before(t);
  if (i + 1 >= snaps.size()) {
    return snaps[i].V;
  }
  const double t0 = snaps[i].t, t1 = snaps[i + 1].t;
  const double w = std::clamp((t - t0) / (t1 - t0), 0.0, 1.0);
  return (1.0 - w) * snaps[i].V + w * snaps[i + 1].V;
}

}  // namespace tgsl
