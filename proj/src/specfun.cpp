#include "prolate/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace prolate {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

// ---------------------------------------------------------------------------
// Bessel J
//
// Three regimes:
//   x <= 8              ascending series (sum of |terms| is at most ~I_0(8))
//   x >= max(25, nu^2)  Hankel large-argument expansion
//   otherwise           Miller backward recurrence, normalised with
//                       (x/2)^mu = sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}(x)
// ---------------------------------------------------------------------------

namespace {

constexpr double kSeriesLimit = 8.0;
constexpr double kAsymptoticFloor = 25.0;

double bessel_j_series(double nu, double x) {
  const double half = 0.5 * x;
  double term = std::exp(nu * std::log(half) - std::lgamma(nu + 1.0));
  double sum = term;
  const double z = -half * half;
  for (int k = 1; k < 500; ++k) {
    term *= z / (k * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > half) break;
  }
  return sum;
}

double bessel_j_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (k * 8.0 * x);
    const double mag = std::abs(term);
    if (mag > last) break;  // asymptotic series has started to diverge
    last = mag;
    switch (k % 4) {
      case 0: p += term; break;
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
    }
    if (mag < 1e-17) break;
  }
  // cos(x - phase) with x reduced by the library rather than by hand.
  const double phase = (0.5 * nu + 0.25) * std::numbers::pi;
  const double cw = std::cos(x) * std::cos(phase) + std::sin(x) * std::sin(phase);
  const double sw = std::sin(x) * std::cos(phase) - std::cos(x) * std::sin(phase);
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cw - q * sw);
}

double bessel_j_miller(double nu, double x) {
  const double base = std::floor(nu);
  const double mu = nu - base;  // in [0,1)
  const int target = static_cast<int>(base);  // >= -1
  const double scale = std::max(nu, x);
  int top = static_cast<int>(std::ceil(scale + 30.0 + 2.0 * std::sqrt(160.0 * scale)));
  if (top % 2 != 0) ++top;

  auto norm_coeff = [mu](int k) {
    if (k == 0) return std::tgamma(mu + 1.0);
    return std::exp(std::log(mu + 2.0 * k) + std::lgamma(mu + k) - std::lgamma(k + 1.0));
  };

  constexpr double kBig = 1e250;
  double upper = 0.0;     // J_{mu+j+1}
  double current = 1e-300;  // J_{mu+j}
  double saved = 0.0;
  double norm = 0.0;
  for (int j = top; j >= -1; --j) {
    if (j == target) saved = current;
    if (j >= 0 && j % 2 == 0) norm += norm_coeff(j / 2) * current;
    if (j == -1) break;
    // J_{mu+j-1} = (2(mu+j)/x) J_{mu+j} - J_{mu+j+1}
    const double lower = (2.0 * (mu + j) / x) * current - upper;
    upper = current;
    current = lower;
    if (std::abs(current) > kBig) {
      current /= kBig;
      upper /= kBig;
      saved /= kBig;
      norm /= kBig;
    }
  }
  return saved * std::pow(0.5 * x, mu) / norm;
}

}  // namespace

double bessel_j(double order, double x) {
  if (!std::isfinite(order) || !std::isfinite(x))
    throw std::invalid_argument("bessel_j: non-finite argument");
  if (order < -0.5) throw std::invalid_argument("bessel_j: order must be >= -1/2");
  if (x < 0.0) throw std::invalid_argument("bessel_j: x must be >= 0");
  if (x == 0.0) {
    if (order == 0.0) return 1.0;
    return order > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  if (x <= kSeriesLimit) return bessel_j_series(order, x);
  if (x >= std::max(kAsymptoticFloor, order * order)) return bessel_j_asymptotic(order, x);
  return bessel_j_miller(order, x);
}

// ---------------------------------------------------------------------------
// Jacobi polynomials
// ---------------------------------------------------------------------------

double jacobi_mass(double a, double b) {
  return std::exp((a + b + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                  std::lgamma(a + b + 2.0));
}

double jacobi_recurrence_alpha(int k, double a, double b) {
  if (a == b) return 0.0;
  if (k == 0) return (b - a) / (a + b + 2.0);
  const double s = 2.0 * k + a + b;
  return (b * b - a * a) / (s * (s + 2.0));
}

double jacobi_recurrence_beta(int k, double a, double b) {
  if (k == 1) {
    const double s = 2.0 + a + b;
    return std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / (s * s * (s + 1.0)));
  }
  const double s = 2.0 * k + a + b;
  return std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0)));
}

std::vector<double> jacobi_orthonormal_all(int count, double a, double b, double x) {
  std::vector<double> p(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return p;
  p[0] = 1.0 / std::sqrt(jacobi_mass(a, b));
  if (count == 1) return p;
  double beta_k = 0.0;
  for (int k = 0; k + 1 < count; ++k) {
    const double beta_next = jacobi_recurrence_beta(k + 1, a, b);
    const double prev = k > 0 ? p[k - 1] : 0.0;
    p[k + 1] = ((x - jacobi_recurrence_alpha(k, a, b)) * p[k] - beta_k * prev) / beta_next;
    beta_k = beta_next;
  }
  return p;
}

double jacobi_poly_orthonormal(int n, double a, double b, double x) {
  if (n < 0) throw std::invalid_argument("jacobi_poly_orthonormal: negative degree");
  double prev = 0.0;
  double cur = 1.0 / std::sqrt(jacobi_mass(a, b));
  double beta_k = 0.0;
  for (int k = 0; k < n; ++k) {
    const double beta_next = jacobi_recurrence_beta(k + 1, a, b);
    const double next = ((x - jacobi_recurrence_alpha(k, a, b)) * cur - beta_k * prev) / beta_next;
    prev = cur;
    cur = next;
    beta_k = beta_next;
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Symmetric tridiagonal QL
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxSweeps = 60;

// Implicit QL with Wilkinson-type shifts. Rotations are applied to the
// columns of z, which may hold any number of rows (n for full vectors, 1 for
// the first components only). On return d holds unsorted eigenvalues.
void tql_implicit(std::vector<double>& d, std::vector<double> e, Matrix& z) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  e.push_back(0.0);
  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t rows = z.rows();
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxSweeps)
        throw NumericalError("symtridiag_eigen: no convergence after " +
                             std::to_string(kMaxSweeps) + " sweeps at index " +
                             std::to_string(l));
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t ii = m; ii-- > l;) {
        const double f = s * e[ii];
        const double bb = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * bb;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - bb;
        for (std::size_t k = 0; k < rows; ++k) {
          const double t = z(k, ii + 1);
          z(k, ii + 1) = s * z(k, ii) + c * t;
          z(k, ii) = c * z(k, ii) - s * t;
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

TridiagEigen solve_tridiag(std::span<const double> diag, std::span<const double> offdiag,
                           bool full) {
  const std::size_t n = diag.size();
  if (n == 0) throw std::invalid_argument("symtridiag_eigen: empty matrix");
  if (offdiag.size() + 1 != n)
    throw std::invalid_argument("symtridiag_eigen: offdiag must have length n-1");
  for (double v : diag)
    if (!std::isfinite(v)) throw std::invalid_argument("symtridiag_eigen: non-finite entry");
  for (double v : offdiag)
    if (!std::isfinite(v)) throw std::invalid_argument("symtridiag_eigen: non-finite entry");

  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> e(offdiag.begin(), offdiag.end());
  Matrix z = full ? Matrix::identity(n) : Matrix(1, n);
  if (!full) z(0, 0) = 1.0;
  tql_implicit(d, std::move(e), z);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  TridiagEigen out;
  out.values.resize(n);
  out.vectors = Matrix(z.rows(), n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    for (std::size_t i = 0; i < z.rows(); ++i) out.vectors(i, k) = z(i, order[k]);
  }
  return out;
}

}  // namespace

TridiagEigen symtridiag_eigen(std::span<const double> diag, std::span<const double> offdiag) {
  return solve_tridiag(diag, offdiag, true);
}

TridiagEigen symtridiag_eigen_first_row(std::span<const double> diag,
                                        std::span<const double> offdiag) {
  return solve_tridiag(diag, offdiag, false);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

QuadratureRule gauss_jacobi(int size, double a, double b) {
  if (size < 1 || size > 100000) throw std::invalid_argument("gauss_jacobi: size out of range");
  if (!(a > -1.0) || !(b > -1.0)) throw std::invalid_argument("gauss_jacobi: exponents must be > -1");
  std::vector<double> diag(size);
  std::vector<double> off(size - 1);
  for (int k = 0; k < size; ++k) diag[k] = jacobi_recurrence_alpha(k, a, b);
  for (int k = 1; k < size; ++k) off[k - 1] = jacobi_recurrence_beta(k, a, b);
  const auto eig = symtridiag_eigen_first_row(diag, off);
  const double mass = jacobi_mass(a, b);

  QuadratureRule rule;
  rule.a = a;
  rule.b = b;
  rule.nodes = eig.values;
  rule.weights.resize(size);
  for (int k = 0; k < size; ++k) {
    const double v = eig.vectors(0, k);
    rule.weights[k] = mass * v * v;
  }
  return rule;
}

QuadratureRule gauss_legendre_unit(int size) {
  QuadratureRule rule = gauss_jacobi(size, 0.0, 0.0);
  rule.lower = 0.0;
  rule.upper = 1.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.nodes[i] = 0.5 * (rule.nodes[i] + 1.0);
    rule.weights[i] *= 0.5;
  }
  return rule;
}

QuadratureRule radial_jacobi_unit(int size, double a) {
  const QuadratureRule u = gauss_jacobi(size, a, 0.0);
  QuadratureRule rule;
  rule.map = NodeMap::radial;
  rule.a = a;
  rule.b = 0.0;
  rule.lower = 0.0;
  rule.upper = 1.0;
  rule.nodes.resize(size);
  rule.weights.resize(size);
  // int_0^1 x^{2a+1} P dx = 2^{-a-2} int (1-u)^a P du; nodes ascend in x
  // when u descends.
  const double scale = std::pow(2.0, -a - 2.0);
  for (int i = 0; i < size; ++i) {
    const int src = size - 1 - i;
    const double x = std::sqrt(0.5 * (1.0 - u.nodes[src]));
    rule.nodes[i] = x;
    rule.weights[i] = scale * u.weights[src] / std::pow(x, 2.0 * a + 1.0);
  }
  return rule;
}

// ---------------------------------------------------------------------------
// S(x)
// ---------------------------------------------------------------------------

namespace {

template <class F>
double adaptive_simpson(const F& f, double lo, double hi, double flo, double fmid, double fhi,
                        double whole, double tol, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lm = 0.5 * (lo + mid);
  const double rm = 0.5 * (mid + hi);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

}  // namespace

double elliptic_S(double x, double q) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("elliptic_S: x must lie in [0,1]");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("elliptic_S: q must lie in [0,1]");
  // t = cos u removes the 1/sqrt(1-t^2) endpoint singularity.
  const double upper = std::acos(x);
  if (upper == 0.0) return 0.0;
  auto f = [q](double u) {
    const double cu = std::cos(u);
    return std::sqrt(std::max(0.0, 1.0 - q * cu * cu));
  };
  const double f0 = f(0.0);
  const double fm = f(0.5 * upper);
  const double f1 = f(upper);
  const double whole = upper / 6.0 * (f0 + 4.0 * fm + f1);
  return adaptive_simpson(f, 0.0, upper, f0, fm, f1, whole, 1e-13, 40);
}

}  // namespace prolate
