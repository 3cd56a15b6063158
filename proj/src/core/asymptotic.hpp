// Two-scale construction of approximate solutions around a moving interface:
// outer fields from the front-tracking trajectory, an inner (stretched)
// correction built from solvability integrals on a fixed z-grid, a
// first-order correction of the interface position, and a cutoff-blended
// composite whose residuals in the original system can be measured on an
// epsilon-ladder.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "radial.hpp"
#include "sharp.hpp"

namespace tgsl {

// Smooth evaluation of N(r) / (r - R) where N(R) is (numerically) zero:
// away from r = R the literal quotient, inside |r - R| < h_switch the
// Taylor form N'(R) + (r - R) N''(R) / 2 by centered differences.
double smooth_quotient(const std::function<double(double)>& N, double r,
                       double R, double h_switch);

struct AsymptoticConfig {
  int order = 1;            // 0: leading profiles only, 1: first corrections
  double delta = -1.0;      // blend half-width; < 0 -> auto from geometry
  double zmax = 16.0;       // stretched-variable grid half-width
  int nz = 3201;            // stretched-variable grid nodes (odd)
  double hr = -1.0;         // radial step for coefficient derivatives; < 0 -> auto
  double boundary_margin = 0.4;  // delta <= margin * dist(interface, boundary)
};

// Inner-expansion workspace at one (t, r) station: tube coefficients,
// solvability integrands on the z-grid (after projection on the kernel),
// their single and double cumulative integrals, and the first-order profile
// correction solving  w'' - f''(theta) w = -Theta3  by variation of
// parameters.
struct InnerStation {
  double t = 0.0, r = 0.0;
  double d0 = 0.0, lapd0 = 0.0, V = 0.0;
  double mu_m = 0.0, mu_p = 0.0, sg_m = 0.0, sg_p = 0.0;
  double Dmu = 0.0, Dsg = 0.0, dDmu = 0.0, dDsg = 0.0;
  double p0 = 0.0, q0 = 0.0, g0 = 0.0, h0 = 0.0, l0 = 0.0;
  double I1 = 0.0, I2 = 0.0;              // totals of the double integrals
  double defect1 = 0.0, defect2 = 0.0, defect3 = 0.0;  // solvability defects
  std::vector<double> TH1, TH2, TH3;      // projected integrands
  std::vector<double> T1, T2;             // int_z^inf of TH1, TH2
  std::vector<double> DI1, DI2;           // int_{-inf}^z of T1, T2
  std::vector<double> u1, u1p;            // profile correction and d/dz
};

struct CompositeValue {
  double u = 0.0, mu = 0.0, sigma = 0.0;
};

struct ResidualNorms {
  double w1 = 0.0, w2 = 0.0, w3 = 0.0, w4 = 0.0;
};

struct SeamGap {
  double u = 0.0, mu = 0.0, sigma = 0.0;  // sup |inner - outer| on the seam
};

struct BoundaryTraces {
  double mu0 = 0.0, sigma0 = 0.0, u0 = 0.0;
  double mu1 = 0.0, sigma1 = 0.0, u1 = 0.0;
  double flux_residual = 0.0;  // discrete boundary flux of order-0 fields
};

class AsymptoticBuilder {
 public:
  using Side = SharpTrajectory::Side;
  using Field = SharpTrajectory::Field;

  AsymptoticBuilder(const SharpTrajectory& traj, AsymptoticConfig cfg);

  const SharpTrajectory& trajectory() const { return *traj_; }
  const AsymptoticConfig& config() const { return cfg_; }
  double delta() const { return delta_; }
  const std::vector<double>& zgrid() const { return z_; }
  double zstep() const { return hz_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Inner workspace at a station (t, r near the interface).
  InnerStation build_station(double t, double r) const;

  // First-order interface shift and its rate.
  double d1(double t) const;
  double d1dot(double t) const;
  // First-order outer fields (smoothly extended across the interface).
  double mu1(Side s, double t, double r) const;
  double sigma1(Side s, double t, double r) const;
  double u1outer(Side s, double t, double r) const;   // mu0 / f''(+-1)
  double dtu1outer(Side s, double t, double r) const;

  // Outer composite (one-sided expansion through order eps).
  CompositeValue outer_value(double eps, double t, double r) const;
  // Inner composite evaluated through a station (|r - R| within the tube).
  CompositeValue inner_value(double eps, double t, double r,
                             const InnerStation& st) const;
  // Cutoff-blended composite on the whole domain.
  CompositeValue eval(double eps, double t, double r) const;
  // Batch evaluation (stations built once per node).
  std::vector<CompositeValue> eval_grid(double eps, double t,
                                        const std::vector<double>& r) const;

  // Largest inner/outer disagreement over the blend annulus delta/2 <= |d0|
  // <= delta at time t.
  SeamGap seam_gap(double eps, double t) const;

  // Boundary-layer data at the fixed boundary: trace values and the
  // discrete compatibility residual (boundary flux).
  BoundaryTraces build_boundary(double t) const;

  // Sup norms of the four residuals of the original system under the
  // composite (after the bulk corrections for the fourth one).
  ResidualNorms residual_norms(double eps, double t) const;

  // Mass-conservation shift: (1 / |Omega|) int_0^t int (w1 + w2) dx dt'.
  double mass_correction(double eps, double t) const;

 private:
  struct Order1Snap {
    double t = 0.0;
    double d1 = 0.0, d1dot = 0.0;
    std::vector<double> mu1m, mu1p, sg1m, sg1p;
  };
  struct InterfaceLaws {
    double I1 = 0.0, I2 = 0.0, drI1 = 0.0, drI2 = 0.0;
    double p0 = 0.0, q0 = 0.0, drp0 = 0.0, drq0 = 0.0;
    double g0 = 0.0, h0 = 0.0, l0 = 0.0, lapd0 = 0.0, V = 0.0;
    double A3 = 0.0, B3 = 0.0;  // order-1 trace integrals
  };

  InterfaceLaws interface_laws(double t, double d1_now) const;
  void run_order1();
  void solve_mu1(std::size_t k, double d1_now, const std::vector<double>& sg1m,
                 const std::vector<double>& sg1p, std::vector<double>* mu1m,
                 std::vector<double>* mu1p) const;
  double order1_value(Field f, Side s, double t, double r) const;
  std::vector<double> residual_grid(double eps, double t, double* d1v) const;

  const SharpTrajectory* traj_;
  AsymptoticConfig cfg_;
  double delta_ = 0.0;
  double hz_ = 0.0;
  std::vector<double> z_;
  // z-grid constants: int (theta')^2, int eta theta', int (1-eta) theta',
  // int eta' theta', trapezoid weights cached via plain spacing.
  double Sd_ = 0.0, Cp_ = 0.0, Cm_ = 0.0, Cet_ = 0.0;
  std::vector<Order1Snap> o1_;
  std::vector<std::string> warnings_;
};

}  // namespace tgsl
