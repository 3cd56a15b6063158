#include "core/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "core/banded.hpp"
#include "core/potential.hpp"

namespace tgsl {
namespace {

// Lumped P1 mass weights on a uniform n-node grid with spacing h.
std::vector<double> lumped_mass(std::size_t n, double h) {
  std::vector<double> m(n, h);
  m.front() = 0.5 * h;
  m.back() = 0.5 * h;
  return m;
}

// Symmetric similarity transform of (K + M V) against lumped mass M:
// T = M^{-1/2} (K + M V) M^{-1/2}, tridiagonal.  K is the P1 stiffness
// matrix with natural (Neumann) ends.
SymTridiag symmetrized_operator(const std::vector<double>& V, double h) {
  const std::size_t n = V.size();
  const std::vector<double> m = lumped_mass(n, h);
  SymTridiag T;
  T.d.resize(n);
  T.e.resize(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const double kii = (i == 0 || i == n - 1) ? 1.0 / h : 2.0 / h;
    T.d[i] = kii / m[i] + V[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    T.e[i] = (-1.0 / h) / std::sqrt(m[i] * m[i + 1]);
  }
  return T;
}

void finalize_result(SpectralResult* res, const std::vector<double>& m, int n) {
  // Orientation convention: first excited mode positive at the center node.
  for (auto& qv : res->q) {
    if (qv[n / 2] < 0.0) {
      for (double& x : qv) {
        x = -x;
      }
    }
  }
  // alpha and the deviation of q1 from the normalized profile derivative.
  double tp_norm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double tp = theta_p(res->z[i]);
    tp_norm2 += m[i] * tp * tp;
  }
  res->alpha = 1.0 / std::sqrt(tp_norm2);
  double dev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double diff = res->q[0][i] - res->alpha * theta_p(res->z[i]);
    dev += m[i] * diff * diff;
  }
  res->deviation = dev;
  res->lambda1_grid = res->lambda[0];
  if (res->lambda1_extrapolated != 0.0) {
    res->lambda[0] = res->lambda1_extrapolated;
  }
  res->lambda1_censored = std::abs(res->lambda[0]) < kLambda1Floor;
  if (res->lambda1_censored) {
    res->lambda[0] = 0.0;
  }
}

}  // namespace

SpectralResult spectral_solve(double eps, int n, int count) {
  if (eps <= 0.0 || n < 5 || count < 1) {
    throw std::invalid_argument("spectral_solve: bad arguments");
  }
  const double L = 1.0 / eps;
  const double h = 2.0 * L / (n - 1);
  SpectralResult res;
  res.eps = eps;
  res.z.resize(n);
  std::vector<double> V(n);
  for (int i = 0; i < n; ++i) {
    res.z[i] = -L + i * h;
    V[i] = potential_d2f(theta(res.z[i]));
  }
  const SymTridiag T = symmetrized_operator(V, h);
  const std::vector<double> m = lumped_mass(n, h);

  // The ground eigenvalue decays like exp(-C/eps) and is quickly buried
  // under the O(h^2) discretization bias; Richardson-extrapolate it from
  // the h and h/2 grids.
  {
    const int n2 = 2 * n - 1;
    const double h2 = 2.0 * L / (n2 - 1);
    std::vector<double> V2(n2);
    for (int i = 0; i < n2; ++i) {
      V2[i] = potential_d2f(theta(-L + i * h2));
    }
    const SymTridiag T2 = symmetrized_operator(V2, h2);
    const double lam_h = eigenvalue_k(T, 0);
    const double lam_h2 = eigenvalue_k(T2, 0);
    res.lambda1_extrapolated = (4.0 * lam_h2 - lam_h) / 3.0;
  }

  for (int k = 0; k < count; ++k) {
    double lam = eigenvalue_k(T, k);
    std::vector<double> y = eigenvector(T, &lam);
    // Transform back (q = M^{-1/2} y) and normalize in the lumped L2 norm.
    std::vector<double> q(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      q[i] = y[i] / std::sqrt(m[i]);
      norm2 += m[i] * q[i] * q[i];
    }
    const double s = 1.0 / std::sqrt(norm2);
    for (double& x : q) {
      x *= s;
    }
    res.lambda.push_back(lam);
    res.q.push_back(std::move(q));
  }
  finalize_result(&res, m, n);
  return res;
}

SpectralResult spectral_solve_dense(double eps, int n, int count) {
  if (n > 1200) {
    throw std::invalid_argument("spectral_solve_dense: n exceeds dense fallback limit");
  }
  const double L = 1.0 / eps;
  const double h = 2.0 * L / (n - 1);
  SpectralResult res;
  res.eps = eps;
  res.z.resize(n);
  std::vector<double> V(n);
  for (int i = 0; i < n; ++i) {
    res.z[i] = -L + i * h;
    V[i] = potential_d2f(theta(res.z[i]));
  }
  const SymTridiag T = symmetrized_operator(V, h);
  const std::vector<double> m = lumped_mass(n, h);

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    A(i, i) = T.d[i];
    if (i + 1 < n) {
      A(i, i + 1) = A(i + 1, i) = T.e[i];
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  for (int k = 0; k < count; ++k) {
    std::vector<double> q(n);
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      q[i] = es.eigenvectors()(i, k) / std::sqrt(m[i]);
      norm2 += m[i] * q[i] * q[i];
    }
    const double s = 1.0 / std::sqrt(norm2);
    for (double& x : q) {
      x *= s;
    }
    res.lambda.push_back(es.eigenvalues()(k));
    res.q.push_back(std::move(q));
  }
  finalize_result(&res, m, n);
  return res;
}

SpectralLadder spectral_ladder(const std::vector<double>& eps_values, int n, int count) {
  SpectralLadder lad;
  std::vector<double> xs, ys;
  for (double e : eps_values) {
    lad.runs.push_back(spectral_solve(e, n, count));
    const SpectralResult& r = lad.runs.back();
    if (!r.lambda1_censored) {
      xs.push_back(1.0 / e);
      ys.push_back(std::log(std::abs(r.lambda[0])));
    }
  }
  lad.fit_points = static_cast<int>(xs.size());
  if (lad.fit_points >= 2) {
    double b;
    linear_fit(xs, ys, &lad.log_lambda1_slope, &b);
  }
  return lad;
}

double rayleigh_bound_flat(const std::vector<double>& x, const std::vector<double>& uA,
                           double eps) {
  if (x.size() != uA.size() || x.size() < 5) {
    throw std::invalid_argument("rayleigh_bound_flat: bad grid");
  }
  const double h = x[1] - x[0];
  std::vector<double> V(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    V[i] = potential_d2f(uA[i]) / (eps * eps);
  }
  const SymTridiag T = symmetrized_operator(V, h);
  return eigenvalue_k(T, 0);
}

double rayleigh_bound_weighted(const std::vector<double>& x, const std::vector<double>& uA,
                               double eps) {
  const int n = static_cast<int>(x.size());
  if (n < 5 || n > 1200 || uA.size() != x.size()) {
    throw std::invalid_argument("rayleigh_bound_weighted: bad grid");
  }
  const double h = x[1] - x[0];
  std::vector<double> m = lumped_mass(n, h);

  // A = eps K + eps^{-1} M diag(f''(uA)).
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    K(i, i) = (i == 0 || i == n - 1) ? 1.0 / h : 2.0 / h;
    if (i + 1 < n) {
      K(i, i + 1) = K(i + 1, i) = -1.0 / h;
    }
  }
  Eigen::MatrixXd A = eps * K;
  for (int i = 0; i < n; ++i) {
    A(i, i) += m[i] * potential_d2f(uA[i]) / eps;
  }

  // B = M K^+ M on the M-mean-zero subspace; regularize the Neumann kernel
  // with a rank-one term in the mass direction.
  Eigen::VectorXd mv(n);
  for (int i = 0; i < n; ++i) {
    mv(i) = m[i];
  }
  Eigen::MatrixXd S = K + mv * mv.transpose() / mv.sum();
  Eigen::MatrixXd W = S.ldlt().solve(Eigen::MatrixXd(mv.asDiagonal()));
  Eigen::MatrixXd B = mv.asDiagonal() * W;
  B = 0.5 * (B + B.transpose());

  // Basis of the M-mean-zero subspace: q_j = e_j - (m_j / m_{n-1}) e_{n-1}.
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(n, n - 1);
  for (int j = 0; j + 1 < n; ++j) {
    Q(j, j) = 1.0;
    Q(n - 1, j) = -m[j] / m[n - 1];
  }
  Eigen::MatrixXd Ar = Q.transpose() * A * Q;
  Eigen::MatrixXd Br = Q.transpose() * B * Q;
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ar, Br);
  return ges.eigenvalues()(0);
}

void linear_fit(const std::vector<double>& x, const std::vector<double>& y,
                double* slope, double* intercept) {
  const std::size_t n = x.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  *slope = (n * sxy - sx * sy) / det;
  *intercept = (sy * sxx - sx * sxy) / det;
}

}  // namespace tgsl
