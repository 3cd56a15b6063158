#include <doctest.h>

#include <cmath>
#include <vector>

#include "core/diffuse.hpp"
#include "core/errors.hpp"
#include "core/potential.hpp"

using namespace tgsl;

namespace {

std::vector<double> grid(const DiffuseConfig& cfg) {
  std::vector<double> r(cfg.n);
  const double h = (cfg.r_max - cfg.r_min) / (cfg.n - 1);
  for (int i = 0; i < cfg.n; ++i) r[i] = cfg.r_min + i * h;
  return r;
}

// Reference integrator for the spatially uniform reduction
//   u' = 2 s + u - mu,  s' = -(2 s + u - mu),  mu = f'(u) / eps,
// classical RK4 with a step far below the PDE step.
void rk4_uniform(double eps, double T, int steps, double* u, double* s) {
  const double h = T / steps;
  auto fu = [eps](double u_, double s_) {
    return 2.0 * s_ + u_ - potential_df(u_) / eps;
  };
  for (int k = 0; k < steps; ++k) {
    const double k1 = fu(*u, *s);
    const double k2 = fu(*u + 0.5 * h * k1, *s - 0.5 * h * k1);
    const double k3 = fu(*u + 0.5 * h * k2, *s - 0.5 * h * k2);
    const double k4 = fu(*u + h * k3, *s - h * k3);
    const double du = h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    *u += du;
    *s -= du;
  }
}

}  // namespace

TEST_CASE("total mass of u + sigma is conserved to round-off") {
  DiffuseConfig cfg;
  cfg.dim = 1;
  cfg.r_min = -1.0;
  cfg.r_max = 1.0;
  cfg.eps = 0.1;
  cfg.n = 201;
  cfg.dt = 1e-5;
  cfg.T = 1e-3;
  cfg.store_every = 20;
  const std::vector<double> r = grid(cfg);
  std::vector<double> u0(cfg.n), s0(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    u0[i] = theta(r[i] / cfg.eps);
    s0[i] = 0.3 + 0.1 * std::cos(3.141592653589793 * r[i]);
  }
  const DiffuseResult res = diffuse_run(cfg, u0, s0);
  CHECK(res.mass_drift / std::abs(res.mass0) < 1e-10);
}

TEST_CASE("uniform fields follow the two-variable reduction") {
  // On uniform data every Laplacian vanishes and the PDE collapses to an
  // ODE pair; the convex-splitting step must track an RK4 reference.
  DiffuseConfig cfg;
  cfg.dim = 1;
  cfg.r_min = 0.0;
  cfg.r_max = 1.0;
  cfg.n = 11;
  cfg.dt = 2e-8;
  cfg.T = 2e-5;
  cfg.store_every = 1000000;  // final snapshot only
  struct Pair {
    double eps, u, s;
  };
  for (const Pair p : {Pair{0.5, 0.3, 0.1}, Pair{1.0, -0.4, 0.2},
                       Pair{0.25, 0.8, -0.05}}) {
    cfg.eps = p.eps;
    const DiffuseResult res =
        diffuse_run(cfg, std::vector<double>(cfg.n, p.u),
                    std::vector<double>(cfg.n, p.s));
    double u = p.u, s = p.s;
    rk4_uniform(p.eps, cfg.T, 4000, &u, &s);
    const DiffuseState& last = res.snaps.back();
    for (double v : last.u) CHECK(std::abs(v - u) < 1e-6);
    for (double v : last.sigma) CHECK(std::abs(v - s) < 1e-6);
  }
}

TEST_CASE("without reactions a uniform state is an exact fixed point") {
  DiffuseConfig cfg;
  cfg.dim = 2;
  cfg.eps = 0.1;
  cfg.n = 51;
  cfg.dt = 1e-4;
  cfg.T = 1e-2;
  cfg.reactions = false;
  const DiffuseResult res = diffuse_run(
      cfg, std::vector<double>(cfg.n, 0.7), std::vector<double>(cfg.n, 0.2));
  for (double v : res.snaps.back().u)
    CHECK(v == doctest::Approx(0.7).epsilon(1e-12));
  for (double v : res.snaps.back().sigma)
    CHECK(v == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("standing layer is stationary for the conserved dynamics") {
  // The 1-D heteroclinic profile makes the chemical potential vanish, so
  // with reactions disabled nothing moves and the interface energy is flat.
  DiffuseConfig cfg;
  cfg.dim = 1;
  cfg.r_min = -1.0;
  cfg.r_max = 1.0;
  cfg.eps = 0.08;
  cfg.n = 401;
  cfg.dt = 1e-5;
  cfg.T = 2e-3;
  cfg.store_every = 50;
  cfg.reactions = false;
  const std::vector<double> r = grid(cfg);
  std::vector<double> u0(cfg.n), s0(cfg.n, 0.0);
  for (int i = 0; i < cfg.n; ++i) u0[i] = theta(r[i] / cfg.eps);
  const DiffuseResult res = diffuse_run(cfg, u0, s0);
  double move = 0.0;
  for (int i = 0; i < cfg.n; ++i)
    move = std::max(move, std::abs(res.snaps.back().u[i] - u0[i]));
  CHECK(move < 1e-3);  // only the O(h^2) discrete-profile defect relaxes
  CHECK(std::abs(res.energy.back() - res.energy.front()) <
        1e-6 * std::abs(res.energy.front()) + 1e-12);
  // Zero crossing stays at the origin.
  CHECK(std::abs(res.interface_position(res.snaps.size() - 1)) < 1e-6);
}

TEST_CASE("interface position is NaN when the field has one sign") {
  DiffuseConfig cfg;
  cfg.dim = 1;
  cfg.n = 21;
  cfg.dt = 1e-6;
  cfg.T = 2e-6;
  cfg.reactions = false;
  const DiffuseResult res = diffuse_run(
      cfg, std::vector<double>(cfg.n, 0.9), std::vector<double>(cfg.n, 0.0));
  CHECK(std::isnan(res.interface_position(0)));
}

TEST_CASE("blow-up guard throws") {
  DiffuseConfig cfg;
  cfg.dim = 1;
  cfg.n = 21;
  cfg.eps = 0.1;
  cfg.dt = 1e-6;
  cfg.T = 1e-5;
  cfg.blowup = 1.2;  // tighter than the initial data's sup
  CHECK_THROWS_AS(diffuse_run(cfg, std::vector<double>(cfg.n, 1.8),
                              std::vector<double>(cfg.n, 0.0)),
                  NumericalError);
}

TEST_CASE("time stepping is first-order self-convergent") {
  DiffuseConfig cfg;
  cfg.dim = 1;
  cfg.r_min = -1.0;
  cfg.r_max = 1.0;
  cfg.eps = 0.2;
  cfg.n = 101;
  cfg.T = 4e-3;
  cfg.store_every = 1000000;
  const std::vector<double> r = grid(cfg);
  std::vector<double> u0(cfg.n), s0(cfg.n);
  for (int i = 0; i < cfg.n; ++i) {
    u0[i] = theta((r[i] + 0.1) / cfg.eps);
    s0[i] = 0.2 * r[i];
  }
  auto final_u = [&](double dt) {
    cfg.dt = dt;
    return diffuse_run(cfg, u0, s0).snaps.back().u;
  };
  const std::vector<double> a = final_u(4e-5);
  const std::vector<double> b = final_u(2e-5);
  const std::vector<double> c = final_u(1e-5);
  double e1 = 0.0, e2 = 0.0;
  for (int i = 0; i < cfg.n; ++i) {
    e1 = std::max(e1, std::abs(a[i] - b[i]));
    e2 = std::max(e2, std::abs(b[i] - c[i]));
  }
  const double ratio = e1 / e2;
  CHECK(ratio > 1.6);  // ~2 for a first-order scheme
  CHECK(ratio < 2.6);
}
