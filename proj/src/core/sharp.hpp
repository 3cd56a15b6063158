// Front-tracking solver for the two-phase free-boundary system in radial
// symmetry (1-D interval or N-dimensional ball):
//
//   -Lap mu + mu = 2 sigma + 1   in  Omega+ = {d0 > 0},   (source -1 in Omega-)
//   dt sigma - Lap sigma + 2 sigma = mu - 1  in Omega+    (mu + 1 in Omega-)
//   [mu] = [sigma] = [d sigma/d nu] = 0,  [d mu/d nu] = -2 V  on Gamma
//   mu|_Gamma = gibbs_thomson * kappa,   homogeneous Neumann on the boundary.
//
// The interface node is pinned at R(t); each phase lives on its own uniform
// sub-grid which is remapped as the interface moves.
#pragma once

#include <cstddef>
#include <vector>

namespace tgsl {

// Cubic Lagrange evaluation on a uniform grid (4-node stencil, clamped at
// the ends so querying beyond the range extrapolates with the edge cubic).
double eval_cubic_uniform(const std::vector<double>& f, double x0, double h, double x);

// Curvature sign convention: kappa = -Lap d0 = -(dim-1)/R for the ball,
// 0 for the interval.
double interface_curvature(int dim, double R);

// Default Gibbs-Thomson coefficient: the solvability integral of the inner
// expansion forces mu|_Gamma = -(1/2) * Lap d0 * S = kappa * S / 2 with
// S = int sqrt(2 f); self-consistent with the diffuse dynamics.
double gibbs_thomson_coefficient();

struct SharpConfig {
  int dim = 2;              // 1 = interval, 2/3 = ball in R^dim
  double r_min = 0.0;       // inner end (0 for the ball)
  double r_max = 1.0;
  double R0 = 0.5;          // initial interface position
  double T = 0.05;          // final time
  double dt = 2e-5;
  int n_per_side = 401;     // nodes on each sub-grid (interface node shared)
  int store_every = 25;     // snapshot cadence in steps
  double gibbs_thomson = -1.0;  // < 0 -> gibbs_thomson_coefficient()
  double sigma_init = 0.0;      // spatially constant initial sigma
};

struct SharpState {
  double t = 0.0;
  double R = 0.0;
  double V = 0.0;       // interface velocity -(1/2) [d mu / d nu]
  double kappa = 0.0;
  // Sub-grids: minus covers [r_min, R], plus covers [R, r_max]; both store
  // n_per_side nodes, sharing the interface node.
  std::vector<double> rm, rp;
  std::vector<double> mum, mup;
  std::vector<double> sgm, sgp;
};

class SharpTrajectory {
 public:
  SharpConfig cfg;
  std::vector<SharpState> snaps;

  // Snapshot index with t_i <= t < t_{i+1}.
  std::size_t snap_before(double t) const;

  enum class Field { mu, sigma };
  enum class Side { minus, plus };

  // One-sided field value at (t, r); r may lie on the other side of the
  // interface, in which case the edge cubic extrapolates (smooth extension).
  // Time dependence is linearly interpolated between snapshots.
  double eval(Field f, Side s, double t, double r) const;
  // Spatial derivative (cubic stencil differentiated).
  double eval_dr(Field f, Side s, double t, double r) const;
  // Time derivative by centered snapshot differencing at fixed r.
  double eval_dt(Field f, Side s, double t, double r) const;

  double R_at(double t) const;
  double V_at(double t) const;

 private:
  double eval_on_snap(const SharpState& s, Field f, Side sd, double r, bool deriv) const;
};

// Runs the solver.  Throws GeometryError if the interface reaches the guard
// band (2 grid cells) of either boundary, NumericalError on solver failure.
SharpTrajectory sharp_run(const SharpConfig& cfg);

// Single elliptic solve of -Lap mu + mu = 2 sigma -+ 1 on the two sub-grids
// for given sigma fields and interface data; exposed for testing and reused
// internally.  Outputs mu on both sides and the interface velocity.
void sharp_solve_mu(const SharpConfig& cfg, SharpState* st);

}  // namespace tgsl
