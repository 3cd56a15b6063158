// Neumann eigenvalue solver for the linearized interface operator
// L q = -q'' + f''(theta(z)) q on I_eps = (-1/eps, 1/eps), and Rayleigh-bound
// evaluators for the spectral lower-bound estimates.
#pragma once

#include <cstddef>
#include <vector>

namespace tgsl {

struct SpectralResult {
  double eps = 0.0;
  std::vector<double> z;                  // grid nodes
  std::vector<double> lambda;             // lowest eigenvalues, ascending
  std::vector<std::vector<double>> q;     // eigenfunctions, L2-normalized
  double alpha = 0.0;                     // 1 / ||theta'||_{L2(I_eps)}
  double deviation = 0.0;                 // ||q1 - alpha theta'||_{L2}^2
  bool lambda1_censored = false;          // |lambda1| under resolution floor
  // lambda[0] is Richardson-extrapolated over the h and h/2 grids (the raw
  // grid value carries an O(h^2) bias that dwarfs the exponentially small
  // ground eigenvalue); lambda1_grid keeps the unextrapolated value.
  double lambda1_extrapolated = 0.0;
  double lambda1_grid = 0.0;
};

// Magnitudes of lambda1 below this are reported as censored (grid cannot
// resolve the exponentially small ground eigenvalue).
inline constexpr double kLambda1Floor = 1e-13;

// Solves for the `count` lowest eigenpairs on an n-node uniform grid with
// homogeneous Neumann ends (P1 stiffness + lumped mass; symmetric form).
// Requires n >= 5, count >= 2, eps > 0.
SpectralResult spectral_solve(double eps, int n, int count);

// Dense cross-check of the same discrete operator (Eigen self-adjoint
// solver); n must be <= 1200.
SpectralResult spectral_solve_dense(double eps, int n, int count);

// Ladder of spectral solves plus a least-squares slope of log|lambda1|
// against 1/eps (censored entries excluded from the fit).
struct SpectralLadder {
  std::vector<SpectralResult> runs;
  double log_lambda1_slope = 0.0;  // expected negative (exponential decay)
  int fit_points = 0;
};
SpectralLadder spectral_ladder(const std::vector<double>& eps_values, int n, int count);

// Smallest eigenvalue of -v'' + eps^{-2} f''(uA) v with homogeneous Neumann
// ends on the uniform grid x (the "flat" Rayleigh-quotient bound).
double rayleigh_bound_flat(const std::vector<double>& x, const std::vector<double>& uA,
                           double eps);

// Smallest generalized eigenvalue of
//   eps int (v')^2 + eps^{-1} int f''(uA) v^2   against   int (w')^2,
// where -w'' = v with Neumann data and zero mean, over mean-zero v.
// Dense solve; grid size must be <= 1200.
double rayleigh_bound_weighted(const std::vector<double>& x, const std::vector<double>& uA,
                               double eps);

// Least-squares slope/intercept of y against x.
void linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                double* slope, double* intercept);

}  // namespace tgsl
