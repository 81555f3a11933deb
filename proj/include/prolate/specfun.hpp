#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace prolate {

// Raised when an iterative kernel fails to converge. Argument errors use
// std::invalid_argument.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense row-major matrix; just enough for eigenvector storage and Gram checks.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<double> column(std::size_t j) const;
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// Gauss rule for the Jacobi weight (1-x)^a (1+x)^b on (-1,1), optionally
// carried onto (lower, upper) by a change of variable:
//   affine: x -> lower + (upper - lower)(x + 1)/2
//   radial: u -> sqrt((1 - u)/2) on (0,1); exact for x^{2a+1} P(x^2)
// Weights absorb the Jacobian (and, for radial, the Jacobi weight).
enum class NodeMap { affine, radial };

struct QuadratureRule {
  NodeMap map = NodeMap::affine;
  double a = 0.0;
  double b = 0.0;
  double lower = -1.0;
  double upper = 1.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

// Bessel function of the first kind J_order(x) for order >= -1/2, x >= 0.
double bessel_j(double order, double x);

// Total mass 2^{a+b+1} B(a+1, b+1) of the Jacobi weight on (-1,1).
double jacobi_mass(double a, double b);

// Coefficients of the orthonormal three-term recurrence
//   x p_k = beta_{k+1} p_{k+1} + alpha_k p_k + beta_k p_{k-1}.
// recurrence_alpha(k) for k >= 0, recurrence_beta(k) for k >= 1.
double jacobi_recurrence_alpha(int k, double a, double b);
double jacobi_recurrence_beta(int k, double a, double b);

// Polynomial of degree n orthonormal against (1-x)^a (1+x)^b on (-1,1).
double jacobi_poly_orthonormal(int n, double a, double b, double x);

// Values of the orthonormal polynomials of degrees 0..count-1 at x.
std::vector<double> jacobi_orthonormal_all(int count, double a, double b, double x);

// Golub-Welsch rule with `size` nodes for the Jacobi weight.
QuadratureRule gauss_jacobi(int size, double a, double b);

// Gauss-Legendre rule mapped to (0,1).
QuadratureRule gauss_legendre_unit(int size);

// Rule on (0,1) built from Gauss-Jacobi (a, 0) in u = 1 - 2x^2. Integrates
// x^{2a+1} P(x^2) exactly for deg P <= 2 size - 1 against dx.
QuadratureRule radial_jacobi_unit(int size, double a);

struct TridiagEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k pairs with values[k]
};

// Symmetric tridiagonal eigensolver (implicit QL, Wilkinson shifts).
TridiagEigen symtridiag_eigen(std::span<const double> diag, std::span<const double> offdiag);

// Eigenvalues plus only the first component of each eigenvector. O(n^2);
// this is what Golub-Welsch needs.
TridiagEigen symtridiag_eigen_first_row(std::span<const double> diag,
                                        std::span<const double> offdiag);

// S(x) = int_x^1 sqrt((1 - q t^2) / (1 - t^2)) dt for x, q in [0,1].
double elliptic_S(double x, double q);

}  // namespace prolate
