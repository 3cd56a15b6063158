#include "core/banded.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tgsl {

std::vector<double> tridiag_solve(std::vector<double> a, std::vector<double> b,
                                  std::vector<double> c, std::vector<double> rhs) {
  const std::size_t n = b.size();
  for (std::size_t i = 1; i < n; ++i) {
    const double m = a[i] / b[i - 1];
    b[i] -= m * c[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  rhs[n - 1] /= b[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    rhs[i] = (rhs[i] - c[i] * rhs[i + 1]) / b[i];
  }
  return rhs;
}

std::vector<double> tridiag_solve_pivot(std::vector<double> a, std::vector<double> b,
                                        std::vector<double> c, std::vector<double> rhs) {
  // Gaussian elimination with partial pivoting; fill-in adds a second upper
  // diagonal d.
  const std::size_t n = b.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(a[i + 1]) > std::abs(b[i])) {
      std::swap(b[i], a[i + 1]);
      std::swap(c[i], b[i + 1]);
      if (i + 2 < n) {
        std::swap(d[i], c[i + 1]);
      }
      std::swap(rhs[i], rhs[i + 1]);
    }
    if (b[i] == 0.0) {
      b[i] = std::numeric_limits<double>::min();
    }
    const double m = a[i + 1] / b[i];
    b[i + 1] -= m * c[i];
    if (i + 2 < n) {
      c[i + 1] -= m * d[i];
    }
    rhs[i + 1] -= m * rhs[i];
  }
  if (b[n - 1] == 0.0) {
    b[n - 1] = std::numeric_limits<double>::min();
  }
  rhs[n - 1] /= b[n - 1];
  if (n >= 2) {
    rhs[n - 2] = (rhs[n - 2] - c[n - 2] * rhs[n - 1]) / b[n - 2];
  }
  for (std::size_t i = n - 2; i-- > 0;) {
    rhs[i] = (rhs[i] - c[i] * rhs[i + 1] - d[i] * rhs[i + 2]) / b[i];
  }
  return rhs;
}

int eigen_count_below(const SymTridiag& T, double x) {
  const std::size_t n = T.size();
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  for (std::size_t i = 0; i < n; ++i) {
    const double off = (i == 0) ? 0.0 : T.e[i - 1];
    q = (T.d[i] - x) - off * off / q;
    if (std::abs(q) < tiny) {
      q = -tiny;
    }
    if (q < 0.0) {
      ++count;
    }
  }
  return count;
}

void gershgorin_bounds(const SymTridiag& T, double* lo, double* hi) {
  const std::size_t n = T.size();
  double l = std::numeric_limits<double>::max();
  double h = -std::numeric_limits<double>::max();
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(T.e[i - 1]) : 0.0) +
                     (i + 1 < n ? std::abs(T.e[i]) : 0.0);
    l = std::min(l, T.d[i] - r);
    h = std::max(h, T.d[i] + r);
  }
  *lo = l;
  *hi = h;
}

double eigenvalue_k(const SymTridiag& T, int k) {
  double lo, hi;
  gershgorin_bounds(T, &lo, &hi);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) {
      break;  // bisection exhausted the floating-point grid
    }
    if (eigen_count_below(T, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> eigenvector(const SymTridiag& T, double* lambda) {
  const std::size_t n = T.size();
  double lo, hi;
  gershgorin_bounds(T, &lo, &hi);
  const double scale = std::max(std::max(std::abs(lo), std::abs(hi)), 1.0);
  // Small deterministic perturbation keeps the shifted matrix nonsingular.
  double shift = *lambda + 1e-14 * scale;

  std::vector<double> v(n);
  // Deterministic pseudo-random start avoids accidental orthogonality.
  unsigned long long s = 88172645463325252ull;
  for (std::size_t i = 0; i < n; ++i) {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    v[i] = static_cast<double>(s % 1000003) / 1000003.0 - 0.5;
  }
  auto normalize = [&]() {
    double norm = 0.0;
    for (double x : v) {
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : v) {
      x /= norm;
    }
  };
  normalize();

  std::vector<double> sub(n, 0.0), diag(n), sup(n, 0.0);
  for (int iter = 0; iter < 6; ++iter) {
    for (std::size_t i = 0; i < n; ++i) {
      diag[i] = T.d[i] - shift;
      if (i > 0) {
        sub[i] = T.e[i - 1];
      }
      if (i + 1 < n) {
        sup[i] = T.e[i];
      }
    }
    v = tridiag_solve_pivot(sub, diag, sup, v);
    normalize();
    // Rayleigh quotient refinement.
    double rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = T.d[i] * v[i];
      if (i > 0) {
        tv += T.e[i - 1] * v[i - 1];
      }
      if (i + 1 < n) {
        tv += T.e[i] * v[i + 1];
      }
      rq += v[i] * tv;
    }
    if (std::abs(rq - shift) < 1e-13 * scale && iter >= 2) {
      *lambda = rq;
      return v;
    }
    shift = rq + 1e-14 * scale;
    *lambda = rq;
  }
  return v;
}

BandMatrix::BandMatrix(std::size_t n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), a_((2 * kl + ku + 1) * n, 0.0), ipiv_(n, 0) {}

void BandMatrix::clear() {
  std::fill(a_.begin(), a_.end(), 0.0);
  factored_ = false;
}

double& BandMatrix::at(std::size_t i, std::size_t j) {
  return a_[(kl_ + ku_ + static_cast<long>(i) - static_cast<long>(j)) +
            j * (2 * kl_ + ku_ + 1)];
}

double BandMatrix::at(std::size_t i, std::size_t j) const {
  return a_[(kl_ + ku_ + static_cast<long>(i) - static_cast<long>(j)) +
            j * (2 * kl_ + ku_ + 1)];
}

double BandMatrix::get(std::size_t i, std::size_t j) const {
  const long off = static_cast<long>(i) - static_cast<long>(j);
  if (off > kl_ || -off > ku_ + kl_) {
    return 0.0;
  }
  return at(i, j);
}

void BandMatrix::set(std::size_t i, std::size_t j, double v) {
  const long off = static_cast<long>(i) - static_cast<long>(j);
  if (off > kl_ || -off > ku_) {
    throw std::out_of_range("BandMatrix::set outside band");
  }
  at(i, j) = v;
}

void BandMatrix::add(std::size_t i, std::size_t j, double v) {
  const long off = static_cast<long>(i) - static_cast<long>(j);
  if (off > kl_ || -off > ku_) {
    throw std::out_of_range("BandMatrix::add outside band");
  }
  at(i, j) += v;
}

bool BandMatrix::factor() {
  const long n = static_cast<long>(n_);
  for (long j = 0; j < n; ++j) {
    const long ilast = std::min(n - 1, j + kl_);
    long p = j;
    double pmax = std::abs(at(j, j));
    for (long i = j + 1; i <= ilast; ++i) {
      const double v = std::abs(at(i, j));
      if (v > pmax) {
        pmax = v;
        p = i;
      }
    }
    ipiv_[j] = static_cast<int>(p);
    if (pmax == 0.0) {
      return false;
    }
    const long klast = std::min(n - 1, j + kl_ + ku_);
    if (p != j) {
      for (long k = j; k <= klast; ++k) {
        std::swap(at(j, k), at(p, k));
      }
    }
    const double piv = at(j, j);
    for (long i = j + 1; i <= ilast; ++i) {
      const double l = at(i, j) / piv;
      at(i, j) = l;
      if (l != 0.0) {
        for (long k = j + 1; k <= klast; ++k) {
          at(i, k) -= l * at(j, k);
        }
      }
    }
  }
  factored_ = true;
  return true;
}

std::vector<double> BandMatrix::solve(std::vector<double> rhs) const {
  if (!factored_) {
    throw std::logic_error("BandMatrix::solve before factor");
  }
  const long n = static_cast<long>(n_);
  for (long j = 0; j < n; ++j) {
    const long p = ipiv_[j];
    if (p != j) {
      std::swap(rhs[j], rhs[p]);
    }
    const long ilast = std::min(n - 1, j + kl_);
    for (long i = j + 1; i <= ilast; ++i) {
      rhs[i] -= at(i, j) * rhs[j];
    }
  }
  for (long i = n - 1; i >= 0; --i) {
    const long klast = std::min(n - 1, i + kl_ + ku_);
    double s = rhs[i];
    for (long k = i + 1; k <= klast; ++k) {
      s -= at(i, k) * rhs[k];
    }
    rhs[i] = s / at(i, i);
  }
  return rhs;
}

}  // namespace tgsl
