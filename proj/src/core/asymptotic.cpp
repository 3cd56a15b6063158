#include "asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "banded.hpp"
#include "errors.hpp"
#include "potential.hpp"
#include "quadrature.hpp"

namespace tgsl {
namespace {

const double kSqrt2 = std::sqrt(2.0);

// theta'(z) evaluated through sech so the tails stay accurate far beyond the
// point where 1 - tanh^2 underflows to zero.
double thp_acc(double z) {
  const double c = std::cosh(kSqrt2 * z);
  return kSqrt2 / (c * c);
}

// 1 -+ theta(z) with full relative accuracy in the decaying tail.
double one_minus_theta(double z) {
  const double e = std::exp(-2.0 * kSqrt2 * z);
  return 2.0 * e / (1.0 + e);
}
double one_plus_theta(double z) { return one_minus_theta(-z); }

double tz(const std::vector<double>& f, double h) { return trapz(f, h); }

// Trapezoid of the pointwise product f * g.
double tz2(const std::vector<double>& f, const std::vector<double>& g, double h) {
  double s = 0.5 * (f.front() * g.front() + f.back() * g.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i] * g[i];
  return s * h;
}

double lap_d0(int dim, double r) {
  if (dim == 1) return 0.0;
  if (r <= 1e-12)
    throw GeometryError("inner station touches the coordinate origin");
  return static_cast<double>(dim - 1) / r;
}

// One-sided 3-point derivative at the last node of a uniform grid.
double deriv_end(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  return (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
}
// One-sided 3-point derivative at the first node.
double deriv_begin(const std::vector<double>& f, double h) {
  return (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
}

}  // namespace

double smooth_quotient(const std::function<double(double)>& N, double r,
                       double R, double h_switch) {
  const double d = r - R;
  if (std::abs(d) >= h_switch) return N(r) / d;
  const double np = (N(R + h_switch) - N(R - h_switch)) / (2.0 * h_switch);
  const double npp =
      (N(R + h_switch) - 2.0 * N(R) + N(R - h_switch)) / (h_switch * h_switch);
  return np + 0.5 * d * npp;
}

AsymptoticBuilder::AsymptoticBuilder(const SharpTrajectory& traj,
                                     AsymptoticConfig cfg)
    : traj_(&traj), cfg_(cfg) {
  if (traj.snaps.size() < 2)
    throw InvalidArgumentError("construction needs at least two snapshots");
  if (cfg_.order != 0 && cfg_.order != 1)
    throw InvalidArgumentError("construction order must be 0 or 1");
  if (cfg_.nz < 9 || cfg_.nz % 2 == 0)
    throw InvalidArgumentError("stretched grid size must be odd and >= 9");
  if (!(cfg_.zmax > 2.0))
    throw InvalidArgumentError("stretched grid must extend beyond |z| = 2");

  // Blend half-width: keep the whole tube strictly inside the domain.
  double dist = 1e300;
  for (const SharpState& s : traj.snaps) {
    dist = std::min(dist, s.R - traj.cfg.r_min);
    dist = std::min(dist, traj.cfg.r_max - s.R);
  }
  if (cfg_.delta > 0.0) {
    delta_ = cfg_.delta;
    if (delta_ >= dist)
      throw GeometryError("blend width reaches the fixed boundary");
  } else {
    delta_ = std::min(0.2, cfg_.boundary_margin * dist);
  }

  hz_ = 2.0 * cfg_.zmax / (cfg_.nz - 1);
  z_.resize(cfg_.nz);
  for (int i = 0; i < cfg_.nz; ++i) z_[i] = -cfg_.zmax + i * hz_;

  // Discrete profile constants on the z-grid (used consistently in the
  // solvability integrals).
  std::vector<double> thp(cfg_.nz), eta(cfg_.nz), etap(cfg_.nz);
  for (int i = 0; i < cfg_.nz; ++i) {
    thp[i] = thp_acc(z_[i]);
    eta[i] = mollifier(z_[i]);
    etap[i] = mollifier_p(z_[i]);
  }
  Sd_ = tz2(thp, thp, hz_);
  Cp_ = tz2(eta, thp, hz_);
  Cm_ = tz(thp, hz_) - Cp_;
  Cet_ = tz2(etap, thp, hz_);

  if (cfg_.order == 1) {
    run_order1();
  } else {
    warnings_.push_back(
        "first-order corrections disabled: interface shift and order-one "
        "fields are taken to be zero");
    o1_.resize(traj.snaps.size());
    for (std::size_t k = 0; k < o1_.size(); ++k) {
      o1_[k].t = traj.snaps[k].t;
      o1_[k].mu1m.assign(traj.snaps[k].rm.size(), 0.0);
      o1_[k].mu1p.assign(traj.snaps[k].rp.size(), 0.0);
      o1_[k].sg1m.assign(traj.snaps[k].rm.size(), 0.0);
      o1_[k].sg1p.assign(traj.snaps[k].rp.size(), 0.0);
    }
  }
}

InnerStation AsymptoticBuilder::build_station(double t, double r) const {
  const SharpTrajectory& tr = *traj_;
  const int dim = tr.cfg.dim;
  InnerStation st;
  st.t = t;
  st.r = r;
  const double R = tr.R_at(t);
  st.d0 = r - R;
  st.V = tr.V_at(t);
  st.lapd0 = lap_d0(dim, r);

  st.mu_m = tr.eval(Field::mu, Side::minus, t, r);
  st.mu_p = tr.eval(Field::mu, Side::plus, t, r);
  st.sg_m = tr.eval(Field::sigma, Side::minus, t, r);
  st.sg_p = tr.eval(Field::sigma, Side::plus, t, r);
  st.Dmu = st.mu_p - st.mu_m;
  st.Dsg = st.sg_p - st.sg_m;
  st.dDmu = tr.eval_dr(Field::mu, Side::plus, t, r) -
            tr.eval_dr(Field::mu, Side::minus, t, r);
  st.dDsg = tr.eval_dr(Field::sigma, Side::plus, t, r) -
            tr.eval_dr(Field::sigma, Side::minus, t, r);

  // Quotient switch width: one sub-grid cell.
  double hsw = cfg_.hr;
  if (hsw <= 0.0) {
    const std::size_t np = tr.cfg.n_per_side;
    const double hm = (R - tr.cfg.r_min) / (np - 1);
    const double hp = (tr.cfg.r_max - R) / (np - 1);
    hsw = std::max(hm, hp);
  }

  auto Dmu_of = [&](double x) {
    return tr.eval(Field::mu, Side::plus, t, x) -
           tr.eval(Field::mu, Side::minus, t, x);
  };
  auto Dsg_of = [&](double x) {
    return tr.eval(Field::sigma, Side::plus, t, x) -
           tr.eval(Field::sigma, Side::minus, t, x);
  };
  auto p0_of = [&](double x) { return smooth_quotient(Dmu_of, x, R, hsw); };
  auto q0_of = [&](double x) { return smooth_quotient(Dsg_of, x, R, hsw); };
  st.p0 = p0_of(r);
  st.q0 = q0_of(r);

  const double V = st.V;
  auto Ng = [&](double x) {
    const double dDm = tr.eval_dr(Field::mu, Side::plus, t, x) -
                       tr.eval_dr(Field::mu, Side::minus, t, x);
    return Dmu_of(x) * lap_d0(dim, x) + 2.0 * dDm - p0_of(x) + 2.0 * V;
  };
  auto Nh = [&](double x) {
    const double dDs = tr.eval_dr(Field::sigma, Side::plus, t, x) -
                       tr.eval_dr(Field::sigma, Side::minus, t, x);
    return Dsg_of(x) * (lap_d0(dim, x) + V) + 2.0 * dDs - q0_of(x);
  };
  auto Nl = [&](double x) {
    return lap_d0(dim, x) * Sd_ +
           tr.eval(Field::mu, Side::plus, t, x) * Cp_ +
           tr.eval(Field::mu, Side::minus, t, x) * Cm_;
  };
  st.g0 = smooth_quotient(Ng, r, R, hsw);
  st.h0 = smooth_quotient(Nh, r, R, hsw);
  st.l0 = smooth_quotient(Nl, r, R, hsw) / Cet_;

  const int nz = cfg_.nz;
  st.TH1.resize(nz);
  st.TH2.resize(nz);
  st.TH3.resize(nz);
  std::vector<double> thp(nz), etap(nz), etapp(nz), eta(nz), th(nz);
  for (int i = 0; i < nz; ++i) {
    const double zz = z_[i];
    th[i] = theta(zz);
    thp[i] = thp_acc(zz);
    eta[i] = mollifier(zz);
    etap[i] = mollifier_p(zz);
    etapp[i] = mollifier_pp(zz);
    st.TH1[i] = etapp[i] * zz * st.p0 + thp[i] * V +
                etap[i] * (st.Dmu * st.lapd0 + 2.0 * st.dDmu - st.g0 * st.d0);
    st.TH2[i] = etapp[i] * zz * st.q0 +
                etap[i] * (st.Dsg * (st.lapd0 + V) + 2.0 * st.dDsg -
                           st.h0 * st.d0);
    st.TH3[i] = thp[i] * st.lapd0 + eta[i] * st.mu_p +
                (1.0 - eta[i]) * st.mu_m - etap[i] * st.l0 * st.d0;
  }

  // Solvability projections: remove the kernel component so the cumulative
  // integrals stay bounded.  The recorded defects measure how closely the
  // compatibility conditions hold before projection.
  st.defect1 = tz(st.TH1, hz_);
  st.defect2 = tz(st.TH2, hz_);
  const double etot = tz(etap, hz_);
  for (int i = 0; i < nz; ++i) {
    st.TH1[i] -= st.defect1 * etap[i] / etot;
    st.TH2[i] -= st.defect2 * etap[i] / etot;
  }
  st.defect3 = tz2(st.TH3, thp, hz_);
  for (int i = 0; i < nz; ++i) st.TH3[i] -= (st.defect3 / Sd_) * thp[i];

  // Single and double cumulative integrals for the first-order jump data:
  // T(z) = int_z^inf TH, DI(z) = int_{-inf}^z T.
  auto tails = [&](const std::vector<double>& f, std::vector<double>* T,
                   std::vector<double>* DI, double* total) {
    std::vector<double> C = cumtrapz_corrected(f, hz_);
    T->resize(nz);
    for (int i = 0; i < nz; ++i) (*T)[i] = C[nz - 1] - C[i];
    *DI = cumtrapz_corrected(*T, hz_);
    *total = DI->back();
  };
  tails(st.TH1, &st.T1, &st.DI1, &st.I1);
  tails(st.TH2, &st.T2, &st.DI2, &st.I2);

  // First-order profile correction by variation of parameters:
  //   u1(z) = thp(z)/thp(0) + thp(z) int_0^z thp^{-2} G,  G = int_.^inf TH3 thp.
  std::vector<double> th3t(nz);
  for (int i = 0; i < nz; ++i) th3t[i] = st.TH3[i] * thp[i];
  std::vector<double> H = cumtrapz_corrected(th3t, hz_);
  const int c = (nz - 1) / 2;
  // Off-grid tails of G: beyond |z| = zmax the integrand is exactly
  // (mu_pm - proj) theta' (the mollifier terms are compactly supported and
  // theta' Lap d0 is absorbed in the same decay), so the missing pieces are
  // (mu_pm - proj) (1 -+ theta(zmax)).  They are comparable to G itself near
  // the ends and survive the theta'^{-2} division.
  const double proj = st.defect3 / Sd_;
  const double tail_p = (st.mu_p - proj) * one_minus_theta(cfg_.zmax);
  const double tail_m = (st.mu_m - proj) * one_minus_theta(cfg_.zmax);
  std::vector<double> w(nz);
  for (int i = 0; i < nz; ++i) {
    // G has vanishing total integral after the projection, so it can be
    // accumulated from whichever end is nearer; that keeps the tiny tail
    // values at full relative accuracy before the theta'^{-2} division.
    const double G =
        (i <= c) ? -(H[i] + tail_m) : (H[nz - 1] - H[i]) + tail_p;
    w[i] = G / (thp[i] * thp[i]);
  }
  // Accumulate int_0^z w outward from the center.  w grows like
  // exp(2 sqrt(2) |z|) toward both ends; a single left-to-right cumulative
  // would carry the huge left-tail total through the mid-range, where the
  // comparatively tiny increments fall below its round-off granularity.
  std::vector<double> W(nz, 0.0);
  {
    std::vector<double> wr(w.begin() + c, w.end());
    std::vector<double> Wr = cumtrapz_corrected(wr, hz_);
    for (int i = c; i < nz; ++i) W[i] = Wr[i - c];
    std::vector<double> wl(w.begin(), w.begin() + c + 1);
    std::reverse(wl.begin(), wl.end());
    std::vector<double> Wl = cumtrapz_corrected(wl, hz_);
    for (int i = 0; i < c; ++i) W[i] = -Wl[c - i];
  }
  st.u1.resize(nz);
  st.u1p.resize(nz);
  for (int i = 0; i < nz; ++i) {
    const double tpp = -2.0 * kSqrt2 * th[i] * thp[i];
    st.u1[i] = thp[i] / thp[c] + thp[i] * W[i];
    st.u1p[i] = tpp / thp[c] + tpp * W[i] + thp[i] * w[i];
  }
  return st;
}

AsymptoticBuilder::InterfaceLaws AsymptoticBuilder::interface_laws(
    double t, double d1_now) const {
  const double R = traj_->R_at(t);
  double hrr = cfg_.hr;
  if (hrr <= 0.0) {
    const std::size_t np = traj_->cfg.n_per_side;
    const double hm = (R - traj_->cfg.r_min) / (np - 1);
    const double hp = (traj_->cfg.r_max - R) / (np - 1);
    hrr = 4.0 * std::max(hm, hp);
  }
  InnerStation s0 = build_station(t, R);
  InnerStation sp = build_station(t, R + hrr);
  InnerStation sm = build_station(t, R - hrr);

  InterfaceLaws L;
  L.I1 = s0.I1;
  L.I2 = s0.I2;
  L.drI1 = (sp.I1 - sm.I1) / (2.0 * hrr);
  L.drI2 = (sp.I2 - sm.I2) / (2.0 * hrr);
  L.p0 = s0.p0;
  L.q0 = s0.q0;
  L.drp0 = (sp.p0 - sm.p0) / (2.0 * hrr);
  L.drq0 = (sp.q0 - sm.q0) / (2.0 * hrr);
  L.g0 = s0.g0;
  L.h0 = s0.h0;
  L.l0 = s0.l0;
  L.lapd0 = s0.lapd0;
  L.V = s0.V;

  const int nz = cfg_.nz;
  std::vector<double> thp(nz), th(nz), etap(nz);
  for (int i = 0; i < nz; ++i) {
    thp[i] = thp_acc(z_[i]);
    th[i] = theta(z_[i]);
    etap[i] = mollifier_p(z_[i]);
  }
  L.B3 = tz2(s0.DI1, thp, hz_);
  std::vector<double> tu2(nz);
  for (int i = 0; i < nz; ++i) tu2[i] = th[i] * s0.u1[i] * s0.u1[i];
  const double Ipp = tz2(sp.u1p, thp, hz_);
  const double Ipm = tz2(sm.u1p, thp, hz_);
  const double Ipc = tz2(s0.u1p, thp, hz_);
  L.A3 = -12.0 * tz2(tu2, thp, hz_) + 2.0 * (Ipp - Ipm) / (2.0 * hrr) +
         L.lapd0 * Ipc - L.l0 * d1_now * Cet_;
  return L;
}

void AsymptoticBuilder::solve_mu1(std::size_t k, double d1_now,
                                  const std::vector<double>& sg1m,
                                  const std::vector<double>& sg1p,
                                  std::vector<double>* mu1m,
                                  std::vector<double>* mu1p) const {
  const SharpState& sn = traj_->snaps[k];
  const double t = sn.t;
  InterfaceLaws L = interface_laws(t, d1_now);
  const double sum = L.I1 - L.B3 - L.A3;
  const double jump = L.p0 * d1_now + L.I1;
  const double gP = 0.5 * (sum + jump);
  const double gM = 0.5 * (sum - jump);

  auto side_solve = [&](Side s, const std::vector<double>& grid,
                        const std::vector<double>& sg1,
                        const std::vector<double>& mu0, double gval,
                        bool interface_last) {
    RadialGeometry g = RadialGeometry::build(traj_->cfg.dim, grid);
    std::vector<double> sub, diag, sup;
    neumann_laplacian_rows(g, &sub, &diag, &sup);
    const std::size_t n = grid.size();
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      diag[i] += 1.0;
      const double u1v = mu0[i] / 8.0;
      const double dtu1 = traj_->eval_dt(Field::mu, s, t, grid[i]) / 8.0;
      rhs[i] = 2.0 * sg1[i] + u1v - dtu1;
    }
    if (interface_last) {
      diag[n - 1] = 1.0;
      sub[n - 1] = 0.0;
      rhs[n - 1] = gval;
    } else {
      diag[0] = 1.0;
      sup[0] = 0.0;
      rhs[0] = gval;
    }
    return tridiag_solve_pivot(sub, diag, sup, rhs);
  };
  *mu1m = side_solve(Side::minus, sn.rm, sg1m, sn.mum, gM, true);
  *mu1p = side_solve(Side::plus, sn.rp, sg1p, sn.mup, gP, false);
}

void AsymptoticBuilder::run_order1() {
  const auto& snaps = traj_->snaps;
  const std::size_t ns = snaps.size();
  const std::size_t n = snaps[0].rm.size();
  o1_.resize(ns);

  auto flux_jump = [&](std::size_t k, const std::vector<double>& mu1m,
                       const std::vector<double>& mu1p) {
    const double hm = snaps[k].rm[1] - snaps[k].rm[0];
    const double hp = snaps[k].rp[1] - snaps[k].rp[0];
    return deriv_begin(mu1p, hp) - deriv_end(mu1m, hm);
  };
  auto d1_rate = [&](std::size_t k, double d1v,
                     const std::vector<double>& mu1m,
                     const std::vector<double>& mu1p) {
    InterfaceLaws L = interface_laws(snaps[k].t, d1v);
    const double jump = L.p0 * d1v + L.I1;
    return 0.5 * (flux_jump(k, mu1m, mu1p) + jump * L.lapd0 + L.drI1 +
                  d1v * L.drp0 - L.g0 * d1v);
  };

  // Initial state: zero shift, zero first-order nutrient field.
  o1_[0].t = snaps[0].t;
  o1_[0].d1 = 0.0;
  o1_[0].sg1m.assign(n, 0.0);
  o1_[0].sg1p.assign(n, 0.0);
  solve_mu1(0, 0.0, o1_[0].sg1m, o1_[0].sg1p, &o1_[0].mu1m, &o1_[0].mu1p);
  o1_[0].d1dot = d1_rate(0, 0.0, o1_[0].mu1m, o1_[0].mu1p);

  for (std::size_t k = 0; k + 1 < ns; ++k) {
    const SharpState& a = snaps[k];
    const SharpState& b = snaps[k + 1];
    const double dt = b.t - a.t;
    Order1Snap& nx = o1_[k + 1];
    nx.t = b.t;
    nx.d1 = o1_[k].d1 + dt * o1_[k].d1dot;

    // Remap the previous fields onto the moved sub-grids.
    auto remap = [&](const std::vector<double>& f,
                     const std::vector<double>& gold,
                     const std::vector<double>& gnew) {
      const double h = gold[1] - gold[0];
      std::vector<double> out(gnew.size());
      for (std::size_t i = 0; i < gnew.size(); ++i)
        out[i] = eval_cubic_uniform(f, gold[0], h, gnew[i]);
      return out;
    };
    std::vector<double> sgm0 = remap(o1_[k].sg1m, a.rm, b.rm);
    std::vector<double> sgp0 = remap(o1_[k].sg1p, a.rp, b.rp);
    std::vector<double> mum0 = remap(o1_[k].mu1m, a.rm, b.rm);
    std::vector<double> mup0 = remap(o1_[k].mu1p, a.rp, b.rp);

    InterfaceLaws L = interface_laws(b.t, nx.d1);
    const double J = L.q0 * nx.d1 + L.I2;
    const double F = -0.5 * (L.V * J + J * L.lapd0 + L.drI2 +
                             nx.d1 * L.drq0 - L.h0 * nx.d1);

    // Implicit step of the first-order nutrient field on both sub-grids with
    // prescribed value and flux jumps at the interface.
    RadialGeometry gm = RadialGeometry::build(traj_->cfg.dim, b.rm);
    RadialGeometry gp = RadialGeometry::build(traj_->cfg.dim, b.rp);
    std::vector<double> subm, diagm, supm, subp, diagp, supp;
    neumann_laplacian_rows(gm, &subm, &diagm, &supm);
    neumann_laplacian_rows(gp, &subp, &diagp, &supp);
    const double hm = b.rm[1] - b.rm[0];
    const double hp = b.rp[1] - b.rp[0];
    const std::size_t N = 2 * n;
    BandMatrix A(N, 3, 3);
    std::vector<double> rhs(N, 0.0);
    auto fill_interior = [&](std::size_t off, const std::vector<double>& sub,
                             const std::vector<double>& diag,
                             const std::vector<double>& sup,
                             const std::vector<double>& sold,
                             const std::vector<double>& mu1old,
                             const std::vector<double>& mu0,
                             std::size_t skip) {
      for (std::size_t i = 0; i < n; ++i) {
        if (off + i == skip) continue;
        A.add(off + i, off + i, 1.0 / dt + diag[i] + 2.0);
        if (i > 0) A.add(off + i, off + i - 1, sub[i]);
        if (i + 1 < n) A.add(off + i, off + i + 1, sup[i]);
        rhs[off + i] = sold[i] / dt + mu1old[i] - mu0[i] / 8.0;
      }
    };
    fill_interior(0, subm, diagm, supm, sgm0, mum0, b.mum, n - 1);
    fill_interior(n, subp, diagp, supp, sgp0, mup0, b.mup, n);
    // Value jump at the interface: sg1p(R) - sg1m(R) = J.
    A.add(n - 1, n, 1.0);
    A.add(n - 1, n - 1, -1.0);
    rhs[n - 1] = J;
    // Flux jump: d/dr sg1p(R) - d/dr sg1m(R) = F (one-sided stencils).
    A.add(n, n, -3.0 / (2.0 * hp));
    A.add(n, n + 1, 4.0 / (2.0 * hp));
    A.add(n, n + 2, -1.0 / (2.0 * hp));
    A.add(n, n - 1, -3.0 / (2.0 * hm));
    A.add(n, n - 2, 4.0 / (2.0 * hm));
    A.add(n, n - 3, -1.0 / (2.0 * hm));
    rhs[n] = F;
    if (!A.factor())
      throw NumericalError("first-order nutrient step: singular system");
    std::vector<double> x = A.solve(rhs);
    nx.sg1m.assign(x.begin(), x.begin() + n);
    nx.sg1p.assign(x.begin() + n, x.end());

    solve_mu1(k + 1, nx.d1, nx.sg1m, nx.sg1p, &nx.mu1m, &nx.mu1p);
    nx.d1dot = d1_rate(k + 1, nx.d1, nx.mu1m, nx.mu1p);
  }
}

double AsymptoticBuilder::d1(double t) const {
  if (cfg_.order == 0) return 0.0;
  const std::size_t i = traj_->snap_before(t);
  const Order1Snap& a = o1_[i];
  if (i + 1 >= o1_.size()) return a.d1;
  const Order1Snap& b = o1_[i + 1];
  const double w = (t - a.t) / (b.t - a.t);
  return (1.0 - w) * a.d1 + w * b.d1;
}

double AsymptoticBuilder::d1dot(double t) const {
  if (cfg_.order == 0) return 0.0;
  const std::size_t i = traj_->snap_before(t);
  const Order1Snap& a = o1_[i];
  if (i + 1 >= o1_.size()) return a.d1dot;
  const Order1Snap& b = o1_[i + 1];
  const double w = (t - a.t) / (b.t - a.t);
  return (1.0 - w) * a.d1dot + w * b.d1dot;
}

double AsymptoticBuilder::order1_value(Field f, Side s, double t,
                                       double r) const {
  const std::size_t i = traj_->snap_before(t);
  auto on_snap = [&](std::size_t k) {
    const SharpState& sn = traj_->snaps[k];
    const Order1Snap& o = o1_[k];
    const std::vector<double>& grid = (s == Side::minus) ? sn.rm : sn.rp;
    const std::vector<double>* arr = nullptr;
    if (f == Field::mu)
      arr = (s == Side::minus) ? &o.mu1m : &o.mu1p;
    else
      arr = (s == Side::minus) ? &o.sg1m : &o.sg1p;
    return eval_cubic_uniform(*arr, grid[0], grid[1] - grid[0], r);
  };
  const double va = on_snap(i);
  if (i + 1 >= o1_.size()) return va;
  const double vb = on_snap(i + 1);
  const double w = (t - o1_[i].t) / (o1_[i + 1].t - o1_[i].t);
  return (1.0 - w) * va + w * vb;
}

double AsymptoticBuilder::mu1(Side s, double t, double r) const {
  if (cfg_.order == 0) return 0.0;
  return order1_value(Field::mu, s, t, r);
}

double AsymptoticBuilder::sigma1(Side s, double t, double r) const {
  if (cfg_.order == 0) return 0.0;
  return order1_value(Field::sigma, s, t, r);
}

double AsymptoticBuilder::u1outer(Side s, double t, double r) const {
  if (cfg_.order == 0) return 0.0;
  return traj_->eval(Field::mu, s, t, r) / 8.0;
}

double AsymptoticBuilder::dtu1outer(Side s, double t, double r) const {
  if (cfg_.order == 0) return 0.0;
  return traj_->eval_dt(Field::mu, s, t, r) / 8.0;
}

CompositeValue AsymptoticBuilder::outer_value(double eps, double t,
                                              double r) const {
  const double R = traj_->R_at(t);
  const Side s = (r >= R) ? Side::plus : Side::minus;
  const double sgn = (s == Side::plus) ? 1.0 : -1.0;
  CompositeValue v;
  const double m0 = traj_->eval(Field::mu, s, t, r);
  const double s0 = traj_->eval(Field::sigma, s, t, r);
  if (cfg_.order >= 1) {
    v.u = sgn + eps * m0 / 8.0;
    v.mu = m0 + eps * mu1(s, t, r);
    v.sigma = s0 + eps * sigma1(s, t, r);
  } else {
    v.u = sgn;
    v.mu = m0;
    v.sigma = s0;
  }
  return v;
}

CompositeValue AsymptoticBuilder::inner_value(double eps, double t, double r,
                                              const InnerStation& st) const {
  const double d1v = d1(t);
  const double z = st.d0 / eps + d1v;
  const double zc = std::clamp(z, z_.front(), z_.back());
  const double eta = mollifier(z);
  CompositeValue v;
  const double mu0t = eta * st.mu_p + (1.0 - eta) * st.mu_m;
  const double sg0t = eta * st.sg_p + (1.0 - eta) * st.sg_m;
  if (cfg_.order >= 1) {
    const double u1v = eval_cubic_uniform(st.u1, z_.front(), hz_, zc);
    const double di1 = eval_cubic_uniform(st.DI1, z_.front(), hz_, zc);
    const double di2 = eval_cubic_uniform(st.DI2, z_.front(), hz_, zc);
    const double m1m = mu1(Side::minus, t, r);
    const double m1p = mu1(Side::plus, t, r);
    const double s1m = sigma1(Side::minus, t, r);
    const double s1p = sigma1(Side::plus, t, r);
    v.u = theta(z) + eps * u1v;
    v.mu = mu0t + eps * (eta * (m1p - m1m - st.I1) + di1 + m1m);
    v.sigma = sg0t + eps * (eta * (s1p - s1m - st.I2) + di2 + s1m);
  } else {
    v.u = theta(z);
    v.mu = mu0t;
    v.sigma = sg0t;
  }
  return v;
}

CompositeValue AsymptoticBuilder::eval(double eps, double t, double r) const {
  const double R = traj_->R_at(t);
  const double d0 = r - R;
  const double chi = cutoff(d0 / delta_);
  CompositeValue vo = outer_value(eps, t, r);
  if (chi <= 0.0) return vo;
  InnerStation st = build_station(t, r);
  CompositeValue vi = inner_value(eps, t, r, st);
  CompositeValue v;
  v.u = chi * vi.u + (1.0 - chi) * vo.u;
  v.mu = chi * vi.mu + (1.0 - chi) * vo.mu;
  v.sigma = chi * vi.sigma + (1.0 - chi) * vo.sigma;
  return v;
}

std::vector<CompositeValue> AsymptoticBuilder::eval_grid(
    double eps, double t, const std::vector<double>& r) const {
  std::vector<CompositeValue> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = eval(eps, t, r[i]);
  return out;
}

SeamGap AsymptoticBuilder::seam_gap(double eps, double t) const {
  const double R = traj_->R_at(t);
  SeamGap g;
  const int m = 101;
  for (int side = -1; side <= 1; side += 2) {
    for (int i = 0; i < m; ++i) {
      const double ad = 0.5 * delta_ + 0.5 * delta_ * i / (m - 1);
      const double r = R + side * ad;
      if (r <= traj_->cfg.r_min || r >= traj_->cfg.r_max) continue;
      InnerStation st = build_station(t, r);
      CompositeValue vi = inner_value(eps, t, r, st);
      CompositeValue vo = outer_value(eps, t, r);
      g.u = std::max(g.u, std::abs(vi.u - vo.u));
      g.mu = std::max(g.mu, std::abs(vi.mu - vo.mu));
      g.sigma = std::max(g.sigma, std::abs(vi.sigma - vo.sigma));
    }
  }
  return g;
}

BoundaryTraces AsymptoticBuilder::build_boundary(double t) const {
  const double rb = traj_->cfg.r_max;
  BoundaryTraces b;
  b.mu0 = traj_->eval(Field::mu, Side::plus, t, rb);
  b.sigma0 = traj_->eval(Field::sigma, Side::plus, t, rb);
  b.u0 = 1.0;
  b.mu1 = mu1(Side::plus, t, rb);
  b.sigma1 = sigma1(Side::plus, t, rb);
  b.u1 = b.mu0 / 8.0;
  const double dmu = traj_->eval_dr(Field::mu, Side::plus, t, rb);
  const double dsg = traj_->eval_dr(Field::sigma, Side::plus, t, rb);
  b.flux_residual = std::max(std::abs(dmu), std::abs(dsg));
  return b;
}

std::vector<double> AsymptoticBuilder::residual_grid(double eps, double t,
                                                     double* d1v) const {
  *d1v = d1(t);
  const double R = traj_->R_at(t);
  const double base = R - eps * (*d1v);
  const double h = eps * hz_;
  const double rmin = traj_->cfg.r_min;
  const double rmax = traj_->cfg.r_max;
  const long kmin = static_cast<long>(std::ceil((rmin - base) / h + 1e-9));
  const long kmax = static_cast<long>(std::floor((rmax - base) / h - 1e-9));
  std::vector<double> r;
  r.reserve(kmax - kmin + 3);
  if (base + kmin * h - rmin > 1e-12) r.push_back(rmin);
  for (long k = kmin; k <= kmax; ++k) r.push_back(base + k * h);
  if (rmax - (base + kmax * h) > 1e-12) r.push_back(rmax);
  return r;
}

ResidualNorms AsymptoticBuilder::residual_norms(double eps, double t) const {
  const SharpTrajectory& tr = *traj_;
  const int dim = tr.cfg.dim;
  const double T = tr.snaps.back().t;
  const double dtfd = tr.snaps[1].t - tr.snaps[0].t;
  const double tt = std::clamp(t, dtfd, T - dtfd);

  double d1v = 0.0;
  std::vector<double> r = residual_grid(eps, tt, &d1v);
  const std::size_t n = r.size();
  RadialGeometry geom = RadialGeometry::build(dim, r);
  std::vector<double> sub, diag, sup;
  neumann_laplacian_rows(geom, &sub, &diag, &sup);
  auto neg_lap = [&](const std::vector<double>& f) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * f[i];
      if (i > 0) s += sub[i] * f[i - 1];
      if (i + 1 < n) s += sup[i] * f[i + 1];
      out[i] = s;
    }
    return out;
  };

  // Composite fields at tt and tt +- dtfd; stations kept at tt for the
  // pointwise third-equation assembly.
  const double R = tr.R_at(tt);
  std::vector<CompositeValue> Fm = eval_grid(eps, tt - dtfd, r);
  std::vector<CompositeValue> Fp = eval_grid(eps, tt + dtfd, r);
  std::vector<CompositeValue> F0(n);
  std::vector<InnerStation> st(n);
  std::vector<bool> tube(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const double chi = cutoff((r[i] - R) / delta_);
    CompositeValue vo = outer_value(eps, tt, r[i]);
    if (chi > 0.0) {
      st[i] = build_station(tt, r[i]);
      tube[i] = true;
      CompositeValue vi = inner_value(eps, tt, r[i], st[i]);
      F0[i].u = chi * vi.u + (1.0 - chi) * vo.u;
      F0[i].mu = chi * vi.mu + (1.0 - chi) * vo.mu;
      F0[i].sigma = chi * vi.sigma + (1.0 - chi) * vo.sigma;
    } else {
      F0[i] = vo;
    }
  }
  std::vector<double> u(n), mu(n), sg(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = F0[i].u;
    mu[i] = F0[i].mu;
    sg[i] = F0[i].sigma;
  }
  std::vector<double> Lmu = neg_lap(mu), Lsg = neg_lap(sg);

  ResidualNorms out;
  std::vector<double> w1(n), w2(n), w3(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double dtu = (Fp[i].u - Fm[i].u) / (2.0 * dtfd);
    const double dts = (Fp[i].sigma - Fm[i].sigma) / (2.0 * dtfd);
    w1[i] = dtu + Lmu[i] - (2.0 * sg[i] + u[i] - mu[i]);
    w2[i] = dts + Lsg[i] + 2.0 * sg[i] + u[i] - mu[i];
  }

  // Pointwise third-equation residual with the fast profile derivatives
  // taken analytically (finite differences across stations only for the
  // slow radial dependence).
  const int nz = cfg_.nz;
  for (std::size_t i = 0; i < n; ++i) {
    const double d0 = r[i] - R;
    const Side s = (d0 >= 0.0) ? Side::plus : Side::minus;
    const double sgn = (s == Side::plus) ? 1.0 : -1.0;
    const double m0 = tr.eval(Field::mu, s, tt, r[i]);
    const double s0 = tr.eval(Field::sigma, s, tt, r[i]);
    if (!tube[i]) {
      // Pure outer composite.
      if (cfg_.order >= 1) {
        const double a = eps * m0 / 8.0;
        const double lap_u = eps * eps * (m0 - 2.0 * s0 - sgn) / 8.0;
        w3[i] = mu[i] + lap_u -
                (8.0 * a + sgn * 12.0 * a * a + 4.0 * a * a * a) / eps;
      } else {
        w3[i] = mu[i];
      }
      continue;
    }
    const InnerStation& S = st[i];
    const double z = S.d0 / eps + d1v;
    int jz = static_cast<int>(std::lround((z - z_.front()) / hz_));
    jz = std::clamp(jz, 0, nz - 1);
    const double th = theta(z);
    const double thp = thp_acc(z);
    const double thpp = theta_pp(z);
    const double f2 = potential_d2f(th);
    const double lapd = lap_d0(dim, r[i]);
    const double chi = cutoff(d0 / delta_);
    const double chip = cutoff_p(d0 / delta_) / delta_;
    const double lapchi = cutoff_pp(d0 / delta_) / (delta_ * delta_) +
                          cutoff_p(d0 / delta_) / delta_ * lapd;

    // Neighbor stations at aligned radii for slow radial derivatives.
    const InnerStation* SL = (i > 0 && tube[i - 1]) ? &st[i - 1] : nullptr;
    const InnerStation* SR = (i + 1 < n && tube[i + 1]) ? &st[i + 1] : nullptr;
    const double hr = eps * hz_;
    auto slow = [&](auto get) {
      const double c0 = get(S);
      double d1st = 0.0, d2nd = 0.0;
      if (SL && SR) {
        d1st = (get(*SR) - get(*SL)) / (2.0 * hr);
        d2nd = (get(*SR) - 2.0 * c0 + get(*SL)) / (hr * hr);
      } else if (SR) {
        d1st = (get(*SR) - c0) / hr;
      } else if (SL) {
        d1st = (c0 - get(*SL)) / hr;
      }
      return std::pair<double, double>(d1st, d2nd);
    };

    double u1v = 0.0, u1pv = 0.0, th3v = 0.0;
    double dru1 = 0.0, dru1p = 0.0, lapx_u1 = 0.0;
    if (cfg_.order >= 1) {
      u1v = S.u1[jz];
      u1pv = S.u1p[jz];
      th3v = S.TH3[jz];
      const auto du1 = slow([&](const InnerStation& q) { return q.u1[jz]; });
      const auto dup = slow([&](const InnerStation& q) { return q.u1p[jz]; });
      dru1 = du1.first;
      dru1p = dup.first;
      lapx_u1 =
          du1.second + (dim > 1 ? (dim - 1) / r[i] * du1.first : 0.0);
    }

    const double u1out = (cfg_.order >= 1) ? m0 / 8.0 : 0.0;
    const double u_O = sgn + eps * u1out;
    const double u_I = th + eps * u1v;
    const double uimth = eps * u1v;
    const double uomth =
        (s == Side::plus ? one_minus_theta(z) : -one_plus_theta(z)) +
        eps * u1out;
    const double a = chi * uimth + (1.0 - chi) * uomth;

    double A_I = thp * lapd;
    if (cfg_.order >= 1)
      A_I += f2 * u1v - th3v + eps * (u1pv * lapd + 2.0 * dru1p) +
             eps * eps * lapx_u1;
    const double drU_I =
        thp / eps + (cfg_.order >= 1 ? u1pv + eps * dru1 : 0.0);
    const double drU_O =
        (cfg_.order >= 1) ? eps * tr.eval_dr(Field::mu, s, tt, r[i]) / 8.0
                          : 0.0;
    const double lapU_O =
        (cfg_.order >= 1) ? eps * eps * (m0 - 2.0 * s0 - sgn) / 8.0 : 0.0;
    const double fp_part =
        (a * f2 + 12.0 * th * a * a + 4.0 * a * a * a) / eps;

    w3[i] = mu[i] + chi * A_I + (1.0 - chi) * lapU_O -
            (1.0 - chi) * thpp / eps + 2.0 * eps * chip * (drU_I - drU_O) +
            eps * lapchi * (u_I - u_O) - fp_part;
  }

  // Bulk correction and the fourth residual.
  std::vector<double> src(n);
  for (std::size_t i = 0; i < n; ++i) src[i] = w1[i] + w2[i];
  std::vector<double> psi = neumann_poisson_zero_mean(geom, src);
  std::vector<double> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = -(w2[i] + psi[i]);
  std::vector<double> Lc = neg_lap(c);
  for (std::size_t i = 0; i < n; ++i) {
    const double f2u = potential_d2f(u[i]);
    const double w4 = w3[i] - psi[i] - eps * Lc[i] -
                      (c[i] * f2u + 12.0 * u[i] * c[i] * c[i] +
                       4.0 * c[i] * c[i] * c[i]) /
                          eps;
    out.w4 = std::max(out.w4, std::abs(w4));
  }
  for (std::size_t i = 0; i < n; ++i) {
    out.w1 = std::max(out.w1, std::abs(w1[i]));
    out.w2 = std::max(out.w2, std::abs(w2[i]));
    out.w3 = std::max(out.w3, std::abs(w3[i]));
  }
  return out;
}

double AsymptoticBuilder::mass_correction(double eps, double t) const {
  const SharpTrajectory& tr = *traj_;
  const double T = tr.snaps.back().t;
  const double dtfd = tr.snaps[1].t - tr.snaps[0].t;

  auto bulk_integral = [&](double tq) {
    const double tt = std::clamp(tq, dtfd, T - dtfd);
    double d1v = 0.0;
    std::vector<double> r = residual_grid(eps, tt, &d1v);
    RadialGeometry geom = RadialGeometry::build(tr.cfg.dim, r);
    std::vector<double> sub, diag, sup;
    neumann_laplacian_rows(geom, &sub, &diag, &sup);
    const std::size_t n = r.size();
    std::vector<CompositeValue> Fm = eval_grid(eps, tt - dtfd, r);
    std::vector<CompositeValue> Fp = eval_grid(eps, tt + dtfd, r);
    std::vector<CompositeValue> F0 = eval_grid(eps, tt, r);
    std::vector<double> mu(n), sg(n);
    for (std::size_t i = 0; i < n; ++i) {
      mu[i] = F0[i].mu;
      sg[i] = F0[i].sigma;
    }
    auto neg_lap = [&](const std::vector<double>& f) {
      std::vector<double> o(n);
      for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * f[i];
        if (i > 0) s += sub[i] * f[i - 1];
        if (i + 1 < n) s += sup[i] * f[i + 1];
        o[i] = s;
      }
      return o;
    };
    std::vector<double> Lmu = neg_lap(mu), Lsg = neg_lap(sg);
    std::vector<double> w12(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double dtu = (Fp[i].u - Fm[i].u) / (2.0 * dtfd);
      const double dts = (Fp[i].sigma - Fm[i].sigma) / (2.0 * dtfd);
      w12[i] = dtu + Lmu[i] + dts + Lsg[i];
    }
    return geom.integral(w12) / geom.total_volume();
  };

  // Trapezoid in time over the snapshot instants up to t.
  double acc = 0.0;
  double prev_t = tr.snaps[0].t;
  double prev_v = bulk_integral(prev_t);
  for (std::size_t k = 1; k < tr.snaps.size() && prev_t < t; ++k) {
    const double tk = std::min(tr.snaps[k].t, t);
    const double vk = bulk_integral(tk);
    acc += 0.5 * (prev_v + vk) * (tk - prev_t);
    prev_t = tk;
    prev_v = vk;
  }
  return acc;
}

}  // namespace tgsl
