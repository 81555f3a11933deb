#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/ellint_2.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "prolate/specfun.hpp"

using namespace prolate;

namespace {

// J_nu(x) by its power series in long double.
long double bessel_series_ld(long double nu, long double x) {
  long double term = std::pow(x / 2, nu) / std::tgamma(nu + 1);
  long double sum = term;
  const long double z = -x * x / 4;
  for (int k = 1; k < 200; ++k) {
    term *= z / (k * (k + nu));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

// Number of eigenvalues of a symmetric tridiagonal matrix below x.
int sturm_count(const std::vector<long double>& d, const std::vector<long double>& e,
                long double x) {
  int count = 0;
  long double q = d[0] - x;
  if (q < 0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    if (q == 0) q = 1e-30L;
    q = d[i] - x - e[i - 1] * e[i - 1] / q;
    if (q < 0) ++count;
  }
  return count;
}

std::vector<double> bisection_eigenvalues(const std::vector<double>& diag,
                                          const std::vector<double>& off) {
  std::vector<long double> d(diag.begin(), diag.end()), e(off.begin(), off.end());
  long double lo = -1e3L, hi = 1e3L;
  std::vector<double> out;
  for (std::size_t k = 0; k < d.size(); ++k) {
    long double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
      const long double m = (a + b) / 2;
      if (sturm_count(d, e, m) > static_cast<int>(k)) b = m;
      else a = m;
    }
    out.push_back(static_cast<double>((a + b) / 2));
  }
  return out;
}

// int_{-1}^1 x^{2k} (1-x^2)^a dx by the ratio recursion of Beta functions.
double symmetric_moment(int k, double a) {
  double m = std::tgamma(0.5) * std::tgamma(a + 1.0) / std::tgamma(a + 1.5);
  for (int j = 1; j <= k; ++j) m *= (2.0 * j - 1.0) / (2.0 * j + 2.0 * a + 1.0);
  return m;
}

double apply_rule(const QuadratureRule& r, auto&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
  return s;
}

}  // namespace

TEST_CASE("bessel_j closed forms") {
  CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bessel_j(1.0, 0.0) == 0.0);
  CHECK(bessel_j(0.5, std::numbers::pi / 2) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-14));
  for (double x = 0.01; x <= 50.0; x += 0.37) {
    const double v = bessel_j(0.5, x) * std::sqrt(std::numbers::pi * x / 2.0);
    CHECK(std::abs(v - std::sin(x)) <= 1e-12);
  }
}

TEST_CASE("bessel_j first zero of J_0 from a high-precision series root") {
  long double a = 2.3L, b = 2.5L;
  for (int it = 0; it < 200; ++it) {
    const long double m = (a + b) / 2;
    if (bessel_series_ld(0, a) * bessel_series_ld(0, m) <= 0) b = m;
    else a = m;
  }
  const double root = static_cast<double>((a + b) / 2);
  CHECK(root == doctest::Approx(2.404825557695773).epsilon(1e-14));
  CHECK(std::abs(bessel_j(0.0, root)) <= 1e-10);
}

TEST_CASE("bessel_j against Boost on the certified range") {
  double worst = 0.0;
  for (double nu : {-0.5, -0.25, 0.0, 0.5, 1.0, 1.5, 2.3, 5.0, 10.5, 20.0, 33.3, 50.0}) {
    for (double x = nu < 0 ? 0.173 : 0.0; x <= 100.0; x += 0.173) {
      const double ref = boost::math::cyl_bessel_j(nu, x);
      worst = std::max(worst, std::abs(bessel_j(nu, x) - ref));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("bessel_j agrees with Boost on both sides of regime seams") {
  for (double nu : {0.0, 3.0, 7.5, 12.0}) {
    for (double seam : {8.0, 25.0, nu * nu}) {
      if (seam <= 0.0) continue;
      for (double x : {seam * (1 - 1e-12), seam, seam * (1 + 1e-12)})
        CHECK(std::abs(bessel_j(nu, x) - boost::math::cyl_bessel_j(nu, x)) <= 1e-12);
    }
  }
}

TEST_CASE("bessel_j argument checks") {
  CHECK_THROWS_AS(bessel_j(0.0, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(bessel_j(-0.6, 1.0), std::invalid_argument);
}

TEST_CASE("jacobi_poly_orthonormal closed forms") {
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0})
    CHECK(jacobi_poly_orthonormal(0, 0, 0, x) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(jacobi_poly_orthonormal(1, 0, 0, 1.0) == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
  // Normalized Legendre endpoint values sqrt((2n+1)/2).
  for (int n : {10, 100, 1000, 2000})
    CHECK(jacobi_poly_orthonormal(n, 0, 0, 1.0) ==
          doctest::Approx(std::sqrt((2.0 * n + 1.0) / 2.0)).epsilon(1e-11));
}

TEST_CASE("jacobi_poly_orthonormal Gram identities") {
  const auto rule = gauss_jacobi(64, 0.4, 0.4);
  const double g55 = apply_rule(rule, [](double x) {
    const double p = jacobi_poly_orthonormal(5, 0.4, 0.4, x);
    return p * p;
  });
  CHECK(g55 == doctest::Approx(1.0).epsilon(1e-12));

  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {-0.5, 0.3}, {1.0, 0.0}, {2.5, -0.7}}) {
    const auto r = gauss_jacobi(64, a, b);
    double worst = 0.0;
    std::vector<std::vector<double>> v(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) v[i] = jacobi_orthonormal_all(51, a, b, r.nodes[i]);
    for (int m = 0; m <= 50; ++m)
      for (int n = m; n <= 50; ++n) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) s += r.weights[i] * v[i][m] * v[i][n];
        worst = std::max(worst, std::abs(s - (m == n ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("gauss_jacobi small rules and mass") {
  const auto r = gauss_jacobi(2, 0, 0);
  REQUIRE(r.size() == 2);
  CHECK(r.nodes[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.nodes[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(r.weights[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(r.weights[1] == doctest::Approx(1.0).epsilon(1e-15));

  for (auto [a, b] : {std::pair{0.0, 0.0}, {0.5, 0.5}, {-0.5, -0.5}, {1.3, 0.2}, {-0.9, 3.0}}) {
    for (int n : {1, 5, 33, 200}) {
      const auto q = gauss_jacobi(n, a, b);
      double sum = 0.0;
      for (double w : q.weights) {
        CHECK(w > 0.0);
        sum += w;
      }
      const double mass = std::exp2(a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) /
                          std::tgamma(a + b + 2);
      CHECK(sum == doctest::Approx(mass).epsilon(1e-12));
      for (std::size_t i = 1; i < q.size(); ++i) CHECK(q.nodes[i] > q.nodes[i - 1]);
      CHECK(q.nodes.front() > -1.0);
      CHECK(q.nodes.back() < 1.0);
    }
  }
}

TEST_CASE("gauss_jacobi exactness on monomials") {
  const auto r = gauss_jacobi(8, 0.5, 0.5);
  const double m10 = apply_rule(r, [](double x) { return std::pow(x, 10); });
  CHECK(m10 == doctest::Approx(symmetric_moment(5, 0.5)).epsilon(1e-12));

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(1, 64);
  std::uniform_real_distribution<double> alpha(-0.9, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = size(rng);
    const double a = alpha(rng);
    const auto q = gauss_jacobi(n, a, a);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      const double got = apply_rule(q, [k](double x) { return std::pow(x, k); });
      const double want = k % 2 ? 0.0 : symmetric_moment(k / 2, a);
      CHECK(std::abs(got - want) <= 1e-12 * symmetric_moment(0, a));
    }
  }

  // Asymmetric weights against tanh-sinh.
  boost::math::quadrature::tanh_sinh<double> ts;
  for (auto [a, b] : {std::pair{1.5, 0.25}, {0.3, 2.0}}) {
    const auto q = gauss_jacobi(8, a, b);
    for (int k = 0; k <= 15; ++k) {
      const double want = ts.integrate(
          [&](double x) { return std::pow(x, k) * std::pow(1 - x, a) * std::pow(1 + x, b); }, -1.0,
          1.0);
      const double got = apply_rule(q, [k](double x) { return std::pow(x, k); });
      CHECK(std::abs(got - want) <= 1e-12 * jacobi_mass(a, b));
    }
  }
}

TEST_CASE("gauss_legendre_unit and radial_jacobi_unit exactness") {
  const auto l = gauss_legendre_unit(10);
  for (int k = 0; k < 20; ++k)
    CHECK(apply_rule(l, [k](double x) { return std::pow(x, k); }) ==
          doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));

  for (double a : {-0.3, 0.0, 0.5, 1.5}) {
    const auto r = radial_jacobi_unit(12, a);
    for (std::size_t i = 0; i < r.size(); ++i) {
      CHECK(r.nodes[i] > 0.0);
      CHECK(r.nodes[i] < 1.0);
      CHECK(r.weights[i] > 0.0);
      if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    for (int j = 0; j < 24; ++j) {
      const double got =
          apply_rule(r, [&](double x) { return std::pow(x, 2 * a + 1) * std::pow(x, 2 * j); });
      CHECK(got == doctest::Approx(1.0 / (2 * a + 2 * j + 2)).epsilon(1e-12));
    }
  }
}

TEST_CASE("symtridiag_eigen small cases") {
  {
    const std::vector<double> d{3.5}, e{};
    const auto r = symtridiag_eigen(d, e);
    REQUIRE(r.values.size() == 1);
    CHECK(r.values[0] == 3.5);
    CHECK(std::abs(r.vectors(0, 0)) == 1.0);
  }
  {
    const std::vector<double> d{0, 0}, e{1};
    const auto r = symtridiag_eigen(d, e);
    CHECK(r.values[0] == doctest::Approx(-1.0));
    CHECK(r.values[1] == doctest::Approx(1.0));
  }
}

TEST_CASE("symtridiag_eigen against a Sturm bisection oracle") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int n : {3, 7, 10, 12}) {
    std::vector<double> d(n), e(n - 1);
    for (auto& v : d) v = u(rng);
    for (auto& v : e) v = u(rng);
    const auto r = symtridiag_eigen(d, e);
    const auto oracle = bisection_eigenvalues(d, e);
    double norm = 0.0;
    for (int i = 0; i < n; ++i)
      norm = std::max(norm, std::abs(d[i]) + (i ? std::abs(e[i - 1]) : 0) +
                                (i + 1 < n ? std::abs(e[i]) : 0));
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(r.values[k] - oracle[k]) <= 1e-10);
      double res = 0.0;
      for (int i = 0; i < n; ++i) {
        double tv = d[i] * r.vectors(i, k);
        if (i) tv += e[i - 1] * r.vectors(i - 1, k);
        if (i + 1 < n) tv += e[i] * r.vectors(i + 1, k);
        res += std::pow(tv - r.values[k] * r.vectors(i, k), 2);
      }
      CHECK(std::sqrt(res) <= 1e-12 * norm);
      for (int j = 0; j <= k; ++j) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += r.vectors(i, j) * r.vectors(i, k);
        CHECK(std::abs(dot - (j == k ? 1.0 : 0.0)) <= 1e-12);
      }
    }
    const auto first = symtridiag_eigen_first_row(d, e);
    for (int k = 0; k < n; ++k) {
      CHECK(first.values[k] == doctest::Approx(r.values[k]).epsilon(1e-12));
      CHECK(std::abs(first.vectors(0, k)) == doctest::Approx(std::abs(r.vectors(0, k))).epsilon(1e-10));
    }
  }
}

TEST_CASE("elliptic_S closed forms and elliptic integral oracle") {
  for (double q : {0.0, 0.3, 1.0}) CHECK(elliptic_S(1.0, q) == 0.0);
  CHECK(elliptic_S(0.0, 0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-12));
  CHECK(elliptic_S(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (double x : {0.0, 0.2, 0.5, 0.9, 0.999})
    for (double q : {0.0, 0.1, 0.5, 0.9}) {
      const double k = std::sqrt(q);
      const double want = boost::math::ellint_2(k) - boost::math::ellint_2(k, std::asin(x));
      CHECK(std::abs(elliptic_S(x, q) - want) <= 1e-10);
    }
}
