// Double-well potential, standing-wave profile, and the smooth mollifier /
// cutoff functions used throughout the interface constructions.
#pragma once

namespace tgsl {

// f(u) = (u^2 - 1)^2 and derivatives.
double potential_f(double u);
double potential_df(double u);    // 4u^3 - 4u
double potential_d2f(double u);   // 12u^2 - 4
double potential_d3f(double u);   // 24u

// Standing-wave profile theta(z) = tanh(sqrt(2) z), the heteroclinic of
// theta'' = f'(theta), theta(+-inf) = +-1, theta(0) = 0, and derivatives.
double theta(double z);
double theta_p(double z);    // sqrt(2) (1 - theta^2) = sqrt(2 f(theta))
double theta_pp(double z);   // f'(theta)
double theta_ppp(double z);  // f''(theta) theta'

// Surface-tension constant S = int_{-1}^{1} sqrt(2 f(u)) du
// = int_R (theta')^2 dz = 4 sqrt(2) / 3.  Evaluated by quadrature once.
double surface_tension();

// Smooth monotone switch: eta = 0 on (-inf,-1], 1 on [1,inf), strictly
// increasing in between; normalized primitive of the bump exp(-1/(1-s^2)).
// eta(z) + eta(-z) = 1.
double mollifier(double z);
double mollifier_p(double z);
double mollifier_pp(double z);

// Shifted tail switches eta^{+}(z) = eta(z - M), eta^{-}(z) = eta(-M - z):
// eta^{+} = 1 for z >= M+1 and 0 for z <= M-1, mirrored for eta^{-}.
double mollifier_plus(double z, double M);
double mollifier_minus(double z, double M);

// Even cutoff: zeta = 1 for |s| <= 1/2, 0 for |s| >= 1, smooth monotone
// transition in between (normalized bump primitive on (1/2, 1)).
double cutoff(double s);
double cutoff_p(double s);
double cutoff_pp(double s);

}  // namespace tgsl
