#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "prolate/prolate.hpp"
#include "prolate/specfun.hpp"

namespace prolate {

using GridPtr = std::shared_ptr<const QuadratureRule>;

// Function values at the nodes of a quadrature grid.
struct SampledFunction {
  GridPtr grid;
  std::vector<std::complex<double>> values;

  SampledFunction() = default;
  SampledFunction(GridPtr g, std::vector<std::complex<double>> v);

  std::size_t size() const { return values.size(); }

  template <class F>
  static SampledFunction from(GridPtr g, F&& f) {
    std::vector<std::complex<double>> v(g->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(g->nodes[i]);
    return SampledFunction(std::move(g), std::move(v));
  }
};

// Default resolution for integral operators; oscillatory kernels need about
// c/pi nodes, so this covers c <= 100.
inline constexpr int kTransformNodes = 512;
// |mu_n| below this is treated as numerically zero.
inline constexpr double kMuNoiseFloor = 1e-13;

// Gauss-Jacobi (alpha, alpha) rule on (-1,1).
GridPtr gpswf_grid(double alpha, int size = kTransformNodes);
// Radial Gauss-Jacobi rule on (0,1); exact for products of circular modes.
GridPtr cpswf_grid(double alpha, int size = kTransformNodes);
// Gauss-Legendre rule on (0,1). Also accepted wherever a circular grid is.
GridPtr legendre_unit_grid(int size = kTransformNodes);
GridPtr family_grid(const ProlateSpec& spec, int size = kTransformNodes);

// Throws std::invalid_argument unless `grid` is the family grid for `spec`.
void require_family_grid(const ProlateSpec& spec, const QuadratureRule& grid);

// Samples of mode n of `es` on `grid`.
SampledFunction sample_mode(const EigenSystem& es, int n, GridPtr grid);

// F_c f(x) = int_{-1}^1 e^{icxy} f(y) (1-y^2)^alpha dy.
SampledFunction finite_fourier(double alpha, double c, const SampledFunction& f);

// sqrt(pi) 2^{alpha+1/2} Gamma(alpha+1) J_{alpha+1/2}(t) / t^{alpha+1/2}.
double weighted_sinc_kernel(double alpha, double t);

// Q_c f(x) = int (c/2pi) K_alpha(c(x-y)) f(y) (1-y^2)^alpha dy.
SampledFunction apply_Qc(double alpha, double c, const SampledFunction& f);

// sqrt(c x y) J_alpha(c x y).
double hankel_kernel(double alpha, double c, double x, double y);

// H_c f(x) = int_0^1 sqrt(cxy) J_alpha(cxy) f(y) dy.
SampledFunction finite_hankel(double alpha, double c, const SampledFunction& f);

// Family transform (F_c or H_c) of `f`.
SampledFunction family_transform(const ProlateSpec& spec, const SampledFunction& f);

// Weighted inner product <f, g> = sum_j w_j f_j conj(g_j).
std::complex<double> inner(const SampledFunction& f, const SampledFunction& g);

// mu_n = <T phi_n, phi_n> on a rule of `nodes` points.
std::complex<double> estimate_mu(const EigenSystem& es, int n, int nodes = kTransformNodes);

// Largest relative off-diagonal component |<T phi_n, phi_m>| / |mu_n| over
// retained m != n with m < limit.
double commutation_leakage(const EigenSystem& es, int n, int limit, int nodes = kTransformNodes);

std::string to_csv(const SampledFunction& f);

}  // namespace prolate
