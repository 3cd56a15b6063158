// Conservative finite-volume geometry and scalar elliptic solves on a radial
// grid (interval or ball), shared by the construction, phase-field, and
// comparison modules.
#pragma once

#include <functional>
#include <vector>

namespace tgsl {

// Node-centered finite-volume geometry on a (possibly nonuniform) strictly
// increasing grid.  Cell i spans the midpoints around node i; face weights
// are |r|^{dim-1} at the midpoints and cell volumes are exact shell volumes
// (r_b^dim - r_a^dim) / dim, so the discrete divergence telescopes and the
// Neumann Laplacian conserves mass exactly.
struct RadialGeometry {
  int dim = 1;
  std::vector<double> r;     // nodes, strictly increasing
  std::vector<double> face;  // face weight between i and i+1 (size n-1)
  std::vector<double> vol;   // cell volume at node i (size n)

  static RadialGeometry build(int dim, std::vector<double> r);
  double total_volume() const;
  // Volume-weighted mean of a nodal field.
  double mean(const std::vector<double>& f) const;
  double integral(const std::vector<double>& f) const;
};

// Tridiagonal rows of the operator  u -> -(1/vol) div(face grad u)  with
// homogeneous Neumann faces at both ends (rows are scaled by 1/vol so the
// operator applies to nodal values; multiply rows by vol to symmetrize).
// All three vectors have length n in the tridiag_solve convention:
// sub[i] = A(i, i-1) with sub[0] unused, sup[i] = A(i, i+1) with sup[n-1]
// unused.
void neumann_laplacian_rows(const RadialGeometry& g, std::vector<double>* sub,
                            std::vector<double>* diag, std::vector<double>* sup);

// Solves  -Lap psi = rhs - <rhs>  with homogeneous Neumann faces, returning
// the volume-mean-zero solution (the compatible Poisson problem).
std::vector<double> neumann_poisson_zero_mean(const RadialGeometry& g,
                                              const std::vector<double>& rhs);

// Solves  -Lap psi + c psi = rhs  with homogeneous Neumann faces (c > 0).
std::vector<double> neumann_helmholtz(const RadialGeometry& g, double c,
                                      const std::vector<double>& rhs);

// Solves  -Lap psi = rhs  with psi = 0 at both end nodes (at r = 0 for the
// ball the end face weight vanishes, so that end is effectively natural).
std::vector<double> dirichlet_poisson(const RadialGeometry& g,
                                      const std::vector<double>& rhs);

}  // namespace tgsl
