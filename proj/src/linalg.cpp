#include "qst/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qst {

bool Matrix::is_symmetric(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (std::abs((*this)(i, j) - (*this)(j, i)) > tol) return false;
  return true;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> Matrix::apply(const std::vector<double>& x) const {
  if (x.size() != n_) throw std::invalid_argument("Matrix::apply: size mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form, with the
// accumulated orthogonal transformation left in z.
void tred2(Matrix& z, std::vector<double>& d, std::vector<double>& e) {
  const int n = static_cast<int>(z.size());
  d.assign(n, 0.0);
  e.assign(n, 0.0);

  for (int i = n - 1; i > 0; --i) {
    int l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (int k = 0; k <= l; ++k) scale += std::abs(z(i, k));
      if (scale == 0.0) {
        e[i] = z(i, l);
      } else {
        for (int k = 0; k <= l; ++k) {
          z(i, k) /= scale;
          h += z(i, k) * z(i, k);
        }
        double f = z(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        z(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j <= l; ++j) {
          z(j, i) = z(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += z(j, k) * z(i, k);
          for (int k = j + 1; k <= l; ++k) g += z(k, j) * z(i, k);
          e[j] = g / h;
          f += e[j] * z(i, j);
        }
        double hh = f / (h + h);
        for (int j = 0; j <= l; ++j) {
          f = z(i, j);
          e[j] = g = e[j] - hh * f;
          for (int k = 0; k <= j; ++k) z(j, k) -= f * e[k] + g * z(i, k);
        }
      }
    } else {
      e[i] = z(i, l);
    }
    d[i] = h;
  }

  d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    int l = i - 1;
    if (d[i] != 0.0) {
      for (int j = 0; j <= l; ++j) {
        double g = 0.0;
        for (int k = 0; k <= l; ++k) g += z(i, k) * z(k, j);
        for (int k = 0; k <= l; ++k) z(k, j) -= g * z(k, i);
      }
    }
    d[i] = z(i, i);
    z(i, i) = 1.0;
    for (int j = 0; j <= l; ++j) z(j, i) = z(i, j) = 0.0;
  }
}

// Implicit-shift QL on a tridiagonal (d, e), rotations accumulated into z.
void tql2(std::vector<double>& d, std::vector<double>& e, Matrix& z) {
  const int n = static_cast<int>(d.size());
  if (n <= 1) return;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (++iter == 50)
          throw numerical_error("tql2: no convergence after 50 iterations");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < n; ++k) {
            f = z(k, i + 1);
            z(k, i + 1) = s * z(k, i) + c * f;
            z(k, i) = c * z(k, i) - s * f;
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

// Number of eigenvalues of the tridiagonal (d, e) strictly below x. Pivots
// smaller than pivmin are forced negative before counting so the sequence
// never divides by zero and never overflows.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  const std::size_t n = d.size();
  double e2max = 0.0;
  for (double v : e) e2max = std::max(e2max, v * v);
  const double pivmin = std::max(1e-300, e2max * 1e-307);

  int count = 0;
  double q = d[0] - x;
  if (std::abs(q) <= pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < n; ++i) {
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

// Solve (T - shift I) x = b in place for tridiagonal T, LU with partial
// pivoting (fill-in held in sup2).
void tridiag_shifted_solve(const std::vector<double>& d, const std::vector<double>& e,
                           double shift, std::vector<double>& x) {
  const std::size_t n = d.size();
  std::vector<double> diag(n), sup1(n, 0.0), sup2(n, 0.0), sub(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = d[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sup1[i] = e[i];
    sub[i] = e[i];
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(sub[i]) > std::abs(diag[i])) {
      std::swap(diag[i], sub[i]);
      std::swap(sup1[i], diag[i + 1]);
      std::swap(sup2[i], sup1[i + 1]);
      std::swap(x[i], x[i + 1]);
    }
    if (diag[i] == 0.0) diag[i] = 1e-300;
    double m = sub[i] / diag[i];
    diag[i + 1] -= m * sup1[i];
    sup1[i + 1] -= m * sup2[i];
    x[i + 1] -= m * x[i];
  }
  if (diag[n - 1] == 0.0) diag[n - 1] = 1e-300;
  for (std::size_t ii = n; ii-- > 0;) {
    double s = x[ii];
    if (ii + 1 < n) s -= sup1[ii] * x[ii + 1];
    if (ii + 2 < n) s -= sup2[ii] * x[ii + 2];
    x[ii] = s / diag[ii];
  }
}

void normalize(std::vector<double>& v) {
  double nrm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (nrm == 0.0) throw numerical_error("inverse iteration produced a zero vector");
  for (double& c : v) c /= nrm;
}

// Deterministic sign: first component above 1e-12 of the max-norm positive.
template <typename GetSet>
void fix_sign(std::size_t n, GetSet&& at) {
  double maxabs = 0.0;
  for (std::size_t i = 0; i < n; ++i) maxabs = std::max(maxabs, std::abs(at(i)));
  for (std::size_t i = 0; i < n; ++i) {
    double c = at(i);
    if (std::abs(c) > 1e-12 * maxabs) {
      if (c < 0.0)
        for (std::size_t j = 0; j < n; ++j) at(j) = -at(j);
      return;
    }
  }
}

}  // namespace

double det_small(double* m, int n) {
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[c * n + r]) > std::abs(m[c * n + piv])) piv = r;
    if (m[c * n + piv] == 0.0) return 0.0;
    if (piv != c) {
      for (int cc = c; cc < n; ++cc) std::swap(m[cc * n + c], m[cc * n + piv]);
      det = -det;
    }
    det *= m[c * n + c];
    for (int r = c + 1; r < n; ++r) {
      double f = m[c * n + r] / m[c * n + c];
      if (f != 0.0)
        for (int cc = c + 1; cc < n; ++cc) m[cc * n + r] -= f * m[cc * n + c];
    }
  }
  return det;
}

SpectralDecomposition sym_eigen(const Matrix& m) {
  if (m.size() == 0) throw std::invalid_argument("sym_eigen: empty matrix");
  if (!m.is_symmetric(0.0))
    throw std::invalid_argument("sym_eigen: matrix is not exactly symmetric");

  const std::size_t n = m.size();
  Matrix z = m;
  std::vector<double> d, e;
  tred2(z, d, e);
  tql2(d, e, z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Matrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = d[order[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = z(i, order[k]);
    fix_sign(n, [&](std::size_t i) -> double& { return out.eigenvectors(i, k); });
  }
  return out;
}

TridiagEigen tridiag_lowest(const std::vector<double>& d,
                            const std::vector<double>& e,
                            std::size_t n_lowest) {
  const std::size_t n = d.size();
  if (n == 0 || e.size() + 1 != n)
    throw std::invalid_argument("tridiag_lowest: inconsistent band sizes");
  if (n_lowest == 0 || n_lowest > n)
    throw std::invalid_argument("tridiag_lowest: bad eigenpair count");

  // Gershgorin bounds.
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < n; ++i) {
    double r = (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi)) + 1.0;

  TridiagEigen out;
  out.eigenvalues.resize(n_lowest);
  for (std::size_t k = 0; k < n_lowest; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 100 && (b - a) > 1e-15 * scale; ++it) {
      double mid = 0.5 * (a + b);
      if (sturm_count(d, e, mid) > static_cast<int>(k))
        b = mid;
      else
        a = mid;
    }
    out.eigenvalues[k] = 0.5 * (a + b);
  }

  out.vectors.resize(n_lowest);
  for (std::size_t k = 0; k < n_lowest; ++k) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = 1.0 + 1e-3 * static_cast<double>((i * 2654435761u + k * 40503u) % 1000);
    normalize(v);
    const double shift = out.eigenvalues[k] + 1e-14 * scale;
    const double cluster_gap = 1e-7 * scale;
    for (int it = 0; it < 4; ++it) {
      tridiag_shifted_solve(d, e, shift, v);
      // Project out already-found vectors of a near-degenerate cluster so the
      // iteration converges inside the orthogonal complement.
      for (std::size_t j = 0; j < k; ++j) {
        if (std::abs(out.eigenvalues[k] - out.eigenvalues[j]) < cluster_gap) {
          double dot =
              std::inner_product(v.begin(), v.end(), out.vectors[j].begin(), 0.0);
          for (std::size_t i = 0; i < n; ++i) v[i] -= dot * out.vectors[j][i];
        }
      }
      normalize(v);
    }
    // Two modified Gram-Schmidt passes keep the returned set orthonormal even
    // across nearly degenerate pairs.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < k; ++j) {
        double dot =
            std::inner_product(v.begin(), v.end(), out.vectors[j].begin(), 0.0);
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * out.vectors[j][i];
      }
      normalize(v);
    }
    fix_sign(n, [&](std::size_t i) -> double& { return v[i]; });
    out.vectors[k] = std::move(v);
  }

  // Rayleigh quotients sharpen the bisection eigenvalues.
  for (std::size_t k = 0; k < n_lowest; ++k) {
    const auto& v = out.vectors[k];
    double num = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double tv = d[i] * v[i];
      if (i > 0) tv += e[i - 1] * v[i - 1];
      if (i + 1 < n) tv += e[i] * v[i + 1];
      num += v[i] * tv;
    }
    out.eigenvalues[k] = num;
  }
  return out;
}

}  // namespace qst
