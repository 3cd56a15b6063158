// Tridiagonal and general banded direct solvers, plus a symmetric
// tridiagonal eigensolver (Sturm bisection + inverse iteration).
#pragma once

#include <cstddef>
#include <vector>

namespace tgsl {

// Solves a tridiagonal system (lower diagonal a[1..n-1], diagonal b[0..n-1],
// upper diagonal c[0..n-2]) by the Thomas algorithm.  No pivoting; intended
// for diagonally dominant systems.
std::vector<double> tridiag_solve(std::vector<double> a, std::vector<double> b,
                                  std::vector<double> c, std::vector<double> rhs);

// Tridiagonal solve with partial pivoting (stable for indefinite/shifted
// systems such as inverse iteration near an eigenvalue).
std::vector<double> tridiag_solve_pivot(std::vector<double> a, std::vector<double> b,
                                        std::vector<double> c, std::vector<double> rhs);

// Symmetric tridiagonal matrix: diagonal d[0..n-1], off-diagonal e[0..n-2].
struct SymTridiag {
  std::vector<double> d;
  std::vector<double> e;
  std::size_t size() const { return d.size(); }
};

// Number of eigenvalues strictly below x (Sturm sequence via LDL^T).
int eigen_count_below(const SymTridiag& T, double x);

// Gershgorin bounds [lo, hi] containing all eigenvalues.
void gershgorin_bounds(const SymTridiag& T, double* lo, double* hi);

// k-th smallest eigenvalue (k = 0-based) by bisection to near machine
// accuracy relative to the spectral scale.
double eigenvalue_k(const SymTridiag& T, int k);

// Eigenvector for an approximate eigenvalue by shifted inverse iteration;
// returns the vector with Euclidean norm 1.  `lambda` may be refined in
// place by a final Rayleigh quotient.
std::vector<double> eigenvector(const SymTridiag& T, double* lambda);

// General banded matrix with kl sub- and ku super-diagonals, stored in the
// usual band layout with kl extra rows for pivoting fill-in.  Row/column
// indices are zero-based; entries outside the band are ignored by add().
class BandMatrix {
 public:
  BandMatrix(std::size_t n, int kl, int ku);

  void clear();
  double get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, double v);
  void add(std::size_t i, std::size_t j, double v);

  std::size_t size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  // LU factorization with partial pivoting (in place).  Returns false if a
  // zero pivot is met.
  bool factor();
  // Solves with the factored matrix.
  std::vector<double> solve(std::vector<double> rhs) const;

 private:
  double& at(std::size_t i, std::size_t j);
  double at(std::size_t i, std::size_t j) const;

  std::size_t n_;
  int kl_, ku_;
  bool factored_ = false;
  std::vector<double> a_;    // (2kl+ku+1) x n, LAPACK gb layout
  std::vector<int> ipiv_;
};

}  // namespace tgsl
