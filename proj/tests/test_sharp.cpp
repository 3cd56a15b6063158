#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/potential.hpp"
#include "core/sharp.hpp"

using namespace tgsl;

namespace {

SharpConfig interval_config() {
  SharpConfig cfg;
  cfg.dim = 1;
  cfg.r_min = -1.0;
  cfg.r_max = 1.0;
  cfg.R0 = 0.0;
  cfg.T = 0.01;
  cfg.dt = 1e-4;
  cfg.n_per_side = 201;
  cfg.store_every = 10;
  return cfg;
}

}  // namespace

TEST_CASE("interval with zero sigma: closed-form chemical potential") {
  // With sigma = 0, kappa = 0: -mu'' + mu = +-1, mu(0) = 0, mu'(+-1) = 0
  // gives mu(x) = +-(1 - cosh(1 -+ x)/cosh(1)).
  SharpConfig cfg = interval_config();
  SharpState st;
  st.R = 0.0;
  st.rm.resize(cfg.n_per_side);
  st.rp.resize(cfg.n_per_side);
  for (int i = 0; i < cfg.n_per_side; ++i) {
    st.rm[i] = -1.0 + i / (cfg.n_per_side - 1.0);
    st.rp[i] = i / (cfg.n_per_side - 1.0);
  }
  st.sgm.assign(cfg.n_per_side, 0.0);
  st.sgp.assign(cfg.n_per_side, 0.0);
  sharp_solve_mu(cfg, &st);

  double worst = 0.0;
  for (int i = 0; i < cfg.n_per_side; ++i) {
    const double xp = st.rp[i];
    const double exact_p = 1.0 - std::cosh(1.0 - xp) / std::cosh(1.0);
    worst = std::max(worst, std::abs(st.mup[i] - exact_p));
    const double xm = st.rm[i];
    const double exact_m = -1.0 + std::cosh(1.0 + xm) / std::cosh(1.0);
    worst = std::max(worst, std::abs(st.mum[i] - exact_m));
  }
  CHECK(worst < 5e-5);  // O(h^2)
  // Both one-sided slopes equal tanh(1): the interface does not move.
  CHECK(std::abs(st.V) < 1e-6);
}

TEST_CASE("symmetric interval stays put") {
  SharpConfig cfg = interval_config();
  SharpTrajectory traj = sharp_run(cfg);
  CHECK(std::abs(traj.snaps.back().R) < 1e-8);
  CHECK(std::abs(traj.snaps.back().t - cfg.T) < 1e-12);
  // Flux-jump/velocity identity on the last snapshot.
  const SharpState& st = traj.snaps.back();
  const double hm = st.rm[1] - st.rm[0];
  const double jm = (3.0 * st.mum.back() - 4.0 * st.mum[st.mum.size() - 2] +
                     st.mum[st.mum.size() - 3]) / (2.0 * hm);
  const double hp = st.rp[1] - st.rp[0];
  const double jp = (-3.0 * st.mup[0] + 4.0 * st.mup[1] - st.mup[2]) / (2.0 * hp);
  CHECK(st.V == doctest::Approx(-0.5 * (jp - jm)).epsilon(1e-12));
}

TEST_CASE("ball: negative curvature pulls the interface inward") {
  SharpConfig cfg;
  cfg.dim = 2;
  cfg.r_min = 0.0;
  cfg.r_max = 1.0;
  cfg.R0 = 0.5;
  cfg.T = 0.005;
  cfg.dt = 1e-5;
  cfg.n_per_side = 201;
  cfg.store_every = 50;
  SharpTrajectory traj = sharp_run(cfg);
  CHECK(traj.snaps.back().R < cfg.R0);
  CHECK(traj.snaps.front().V < 0.0);
  // Gibbs-Thomson boundary value is pinned at the interface node.
  const SharpState& st = traj.snaps.back();
  const double mu_gamma = gibbs_thomson_coefficient() * interface_curvature(2, st.R);
  CHECK(st.mum.back() == doctest::Approx(mu_gamma).epsilon(1e-12));
  CHECK(st.mup.front() == doctest::Approx(mu_gamma).epsilon(1e-12));
  CHECK(mu_gamma < 0.0);
}

TEST_CASE("ball: self-convergence of the front position") {
  auto run_R = [](int n, double dt) {
    SharpConfig cfg;
    cfg.dim = 2;
    cfg.R0 = 0.5;
    cfg.r_max = 1.0;
    cfg.T = 0.005;
    cfg.dt = dt;
    cfg.n_per_side = n;
    cfg.store_every = 1000000;
    return sharp_run(cfg).snaps.back().R;
  };
  const double R1 = run_R(101, 4e-5);
  const double R2 = run_R(201, 2e-5);
  const double R3 = run_R(401, 1e-5);
  CHECK(std::abs(R2 - R3) < 0.5 * std::abs(R1 - R2));
  CHECK(std::abs(R1 - R2) < 2e-4);
}

TEST_CASE("guard band raises a geometry error") {
  SharpConfig cfg;
  cfg.dim = 2;
  cfg.R0 = 0.05;  // tiny ball collapses quickly
  cfg.r_max = 1.0;
  cfg.T = 0.05;
  cfg.dt = 5e-5;
  cfg.n_per_side = 101;
  cfg.store_every = 1000;
  CHECK_THROWS_AS(sharp_run(cfg), GeometryError);
}

TEST_CASE("trajectory evaluation and smooth extension") {
  SharpConfig cfg = interval_config();
  SharpTrajectory traj = sharp_run(cfg);
  const double t = 0.5 * cfg.T;
  // Continuity at the interface from both sides.
  const double R = traj.R_at(t);
  const double mm = traj.eval(SharpTrajectory::Field::mu, SharpTrajectory::Side::minus, t, R);
  const double mp = traj.eval(SharpTrajectory::Field::mu, SharpTrajectory::Side::plus, t, R);
  CHECK(mm == doctest::Approx(mp).epsilon(1e-8).scale(1e-4));
  // Extension beyond the interface is smooth: cubic extrapolation agrees
  // with interior values to O(dr^2) close to R.
  const double dr = 0.01;
  const double ext = traj.eval(SharpTrajectory::Field::mu, SharpTrajectory::Side::minus, t, R + dr);
  const double in1 = traj.eval(SharpTrajectory::Field::mu, SharpTrajectory::Side::minus, t, R - dr);
  const double slope = traj.eval_dr(SharpTrajectory::Field::mu, SharpTrajectory::Side::minus, t, R);
  CHECK(ext - in1 == doctest::Approx(2.0 * dr * slope).epsilon(0.05).scale(1e-6));
  // Time derivative sanity: sigma grows from zero with rate mu - u.
  const double sdot = traj.eval_dt(SharpTrajectory::Field::sigma, SharpTrajectory::Side::plus,
                                   1e-4, 0.6);
  CHECK(std::isfinite(sdot));
}
