#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qst {

// Error raised when an iterative numerical procedure fails to converge.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense square matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  bool is_symmetric(double tol = 0.0) const;
  double max_abs() const;

  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

// Eigenvalues ascending; eigenvectors(i, k) is component i of the k-th
// eigenvector. Each eigenvector's first component exceeding 1e-12 of its
// max-norm is made positive, so decompositions are reproducible.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;

  std::size_t size() const { return eigenvalues.size(); }
};

// Full eigendecomposition of a real symmetric matrix via Householder
// tridiagonalization followed by implicit-shift QL.
SpectralDecomposition sym_eigen(const Matrix& m);

// Partial eigensystem of a symmetric tridiagonal matrix. vectors[k] is the
// unit eigenvector paired with eigenvalues[k]; same ordering and sign
// conventions as SpectralDecomposition.
struct TridiagEigen {
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> vectors;
};

// Lowest n_lowest eigenpairs of the symmetric tridiagonal matrix with
// diagonal d and off-diagonal e (e.size() == d.size() - 1). Eigenvalues by
// Sturm-count bisection, eigenvectors by inverse iteration with
// reorthogonalization against all previously computed vectors.
TridiagEigen tridiag_lowest(const std::vector<double>& d,
                            const std::vector<double>& e,
                            std::size_t n_lowest);

// Determinant of a small column-major n x n matrix (n <= 6), destroying m.
double det_small(double* m, int n);

}  // namespace qst
