#include "prolate/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace prolate {

SampledFunction::SampledFunction(GridPtr g, std::vector<std::complex<double>> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid) throw std::invalid_argument("SampledFunction: null grid");
  if (values.size() != grid->size())
    throw std::invalid_argument("SampledFunction: length does not match grid");
  for (const auto& z : values)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("SampledFunction: non-finite value");
}

GridPtr gpswf_grid(double alpha, int size) {
  return std::make_shared<const QuadratureRule>(gauss_jacobi(size, alpha, alpha));
}

GridPtr cpswf_grid(double alpha, int size) {
  return std::make_shared<const QuadratureRule>(radial_jacobi_unit(size, alpha));
}

GridPtr legendre_unit_grid(int size) {
  return std::make_shared<const QuadratureRule>(gauss_legendre_unit(size));
}

GridPtr family_grid(const ProlateSpec& spec, int size) {
  return spec.family == Family::gpswf ? gpswf_grid(spec.alpha, size) : cpswf_grid(spec.alpha, size);
}

namespace {

bool is_gpswf_grid(double alpha, const QuadratureRule& g) {
  return g.map == NodeMap::affine && g.a == alpha && g.b == alpha && g.lower == -1.0 &&
         g.upper == 1.0;
}

bool is_legendre_unit(const QuadratureRule& g) {
  return g.map == NodeMap::affine && g.a == 0.0 && g.b == 0.0 && g.lower == 0.0 && g.upper == 1.0;
}

bool is_unit_interval_grid(const QuadratureRule& g) {
  return is_legendre_unit(g) || (g.map == NodeMap::radial && g.b == 0.0);
}

bool is_cpswf_grid(double alpha, const QuadratureRule& g) {
  return is_legendre_unit(g) || (g.map == NodeMap::radial && g.a == alpha && g.b == 0.0);
}

void require_gpswf_grid(double alpha, const SampledFunction& f) {
  if (!f.grid || !is_gpswf_grid(alpha, *f.grid))
    throw std::invalid_argument("grid is not the Gauss-Jacobi rule for weight (1-x^2)^alpha");
}

void require_cpswf_grid(const SampledFunction& f) {
  if (!f.grid || !is_unit_interval_grid(*f.grid))
    throw std::invalid_argument("grid is not a Gauss rule on (0,1)");
}

}  // namespace

void require_family_grid(const ProlateSpec& spec, const QuadratureRule& grid) {
  const bool ok = spec.family == Family::gpswf ? is_gpswf_grid(spec.alpha, grid)
                                               : is_cpswf_grid(spec.alpha, grid);
  if (!ok) throw std::invalid_argument("grid does not match the eigen system family");
}

SampledFunction sample_mode(const EigenSystem& es, int n, GridPtr grid) {
  require_family_grid(es.spec(), *grid);
  return SampledFunction::from(grid, [&](double x) { return es.eval(n, x); });
}

SampledFunction finite_fourier(double alpha, double c, const SampledFunction& f) {
  require_gpswf_grid(alpha, f);
  const auto& g = *f.grid;
  std::vector<std::complex<double>> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double phase = c * g.nodes[i] * g.nodes[j];
      acc += g.weights[j] * std::complex<double>(std::cos(phase), std::sin(phase)) * f.values[j];
    }
    out[i] = acc;
  }
  return SampledFunction(f.grid, std::move(out));
}

double weighted_sinc_kernel(double alpha, double t) {
  const double nu = alpha + 0.5;
  const double at = std::abs(t);
  // J_nu(t)/t^nu = 2^{-nu} sum_k (-t^2/4)^k / (k! Gamma(k+nu+1))
  if (at < 1.0) {
    double term = 1.0 / std::tgamma(nu + 1.0);
    double sum = term;
    const double z = -0.25 * at * at;
    for (int k = 1; k < 40; ++k) {
      term *= z / (k * (k + nu));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return std::sqrt(std::numbers::pi) * std::tgamma(alpha + 1.0) * sum;
  }
  return std::sqrt(std::numbers::pi) * std::pow(2.0, nu) * std::tgamma(alpha + 1.0) *
         bessel_j(nu, at) / std::pow(at, nu);
}

SampledFunction apply_Qc(double alpha, double c, const SampledFunction& f) {
  require_gpswf_grid(alpha, f);
  const auto& g = *f.grid;
  const std::size_t n = g.size();
  const double scale = c / (2.0 * std::numbers::pi);
  // The kernel depends on x - y only through |x - y|; fill symmetrically.
  std::vector<double> kernel(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      kernel[i * n + j] = kernel[j * n + i] =
          scale * weighted_sinc_kernel(alpha, c * (g.nodes[i] - g.nodes[j]));
  std::vector<std::complex<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += kernel[i * n + j] * g.weights[j] * f.values[j];
    out[i] = acc;
  }
  return SampledFunction(f.grid, std::move(out));
}

double hankel_kernel(double alpha, double c, double x, double y) {
  const double t = c * (x * y);
  if (t == 0.0) return 0.0;
  return std::sqrt(t) * bessel_j(alpha, t);
}

SampledFunction finite_hankel(double alpha, double c, const SampledFunction& f) {
  if (!(alpha >= -0.5)) throw std::invalid_argument("finite_hankel: alpha must be >= -1/2");
  if (!(c > 0.0)) throw std::invalid_argument("finite_hankel: c must be > 0");
  require_cpswf_grid(f);
  const auto& g = *f.grid;
  const std::size_t n = g.size();
  std::vector<double> kernel(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      kernel[i * n + j] = kernel[j * n + i] = hankel_kernel(alpha, c, g.nodes[i], g.nodes[j]);
  std::vector<std::complex<double>> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += kernel[i * n + j] * g.weights[j] * f.values[j];
    out[i] = acc;
  }
  return SampledFunction(f.grid, std::move(out));
}

SampledFunction family_transform(const ProlateSpec& spec, const SampledFunction& f) {
  if (spec.family == Family::gpswf) return finite_fourier(spec.alpha, spec.c, f);
  return finite_hankel(spec.alpha, spec.c, f);
}

std::complex<double> inner(const SampledFunction& f, const SampledFunction& g) {
  if (f.grid != g.grid && (f.grid->nodes != g.grid->nodes || f.grid->weights != g.grid->weights))
    throw std::invalid_argument("inner: functions live on different grids");
  std::complex<double> acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    acc += f.grid->weights[j] * f.values[j] * std::conj(g.values[j]);
  return acc;
}

std::complex<double> estimate_mu(const EigenSystem& es, int n, int nodes) {
  const auto grid = family_grid(es.spec(), nodes);
  const auto phi = sample_mode(es, n, grid);
  return inner(family_transform(es.spec(), phi), phi);
}

double commutation_leakage(const EigenSystem& es, int n, int limit, int nodes) {
  const auto grid = family_grid(es.spec(), nodes);
  const auto phi = sample_mode(es, n, grid);
  const auto image = family_transform(es.spec(), phi);
  const double mu = std::abs(inner(image, phi));
  double worst = 0.0;
  for (int m = 0; m < std::min(limit, es.size()); ++m) {
    if (m == n) continue;
    worst = std::max(worst, std::abs(inner(image, sample_mode(es, m, grid))) / mu);
  }
  return worst;
}

std::string to_csv(const SampledFunction& f) {
  std::string out = "node,re,im\n";
  char buf[128];
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", f.grid->nodes[i], f.values[i].real(),
                  f.values[i].imag());
    out += buf;
  }
  return out;
}

}  // namespace prolate
