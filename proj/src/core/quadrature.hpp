// Adaptive Gauss-Kronrod quadrature and uniform-grid helpers.
#pragma once

#include <functional>
#include <vector>

namespace tgsl {

// Adaptive 15-point Gauss-Kronrod integration of f over [a, b].
// Subdivides until the local Kronrod-Gauss error estimate satisfies the
// absolute tolerance (scaled by subinterval fraction) or max_depth is hit.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abstol = 1e-12, int max_depth = 48);

// Trapezoid rule on a uniform grid with spacing h.
double trapz(const std::vector<double>& f, double h);

// Trapezoid rule on an arbitrary grid.
double trapz(const std::vector<double>& x, const std::vector<double>& f);

// Cumulative trapezoid on a uniform grid with fourth-order Euler-Maclaurin
// endpoint correction: F[i] = int_{x0}^{xi} f, F[0] = 0.  The correction uses
// finite-difference slopes of f, so f must be sampled on at least 5 nodes.
std::vector<double> cumtrapz_corrected(const std::vector<double>& f, double h);

}  // namespace tgsl
