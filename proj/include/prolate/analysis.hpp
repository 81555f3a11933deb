#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prolate/prolate.hpp"
#include "prolate/riesz.hpp"
#include "prolate/transforms.hpp"

namespace prolate {

// (sum_j w_j |f_j|^p)^{1/p}; p = infinity gives max_j |f_j|.
double lp_norm(const SampledFunction& f, double p);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of log(ys) against log(xs).
LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

struct GrowthFit {
  std::vector<int> n;
  std::vector<double> norms;
  double slope = 0.0;
};

// Number of points in the sup-norm grid.
inline constexpr int kSupGrid = 4096;

// Sup norm of each retained mode on a kSupGrid grid that includes the endpoints.
std::vector<double> sup_norms(const EigenSystem& es);

// Least-squares slope of log ||phi_n||_p against log n for n in [n_lo, n_hi].
GrowthFit norm_growth_fit(const EigenSystem& es, double p, int n_lo, int n_hi);

// Retained eigenvalues in the open interval (m, M).
int eigenvalue_count(const EigenSystem& es, double m, double M);

// ||sum_{chi_n in (m,M)} a_n(f) phi_n||_2 / (M^{gamma(p')/2} (M-m)^{1/2} ||f||_p).
// gamma(p') is clamped at zero, as in the threshold.
double cluster_ratio(const SampledFunction& f, const EigenSystem& es, double m, double M, double p,
                     const ExponentTable& table);

// Exponent table matching an eigen system (extended alpha allowed when the
// system lies outside the theorem range).
ExponentTable table_for(const ProlateSpec& spec, double eps_choice = kDefaultEps);

struct ConvergenceReport {
  Family family = Family::gpswf;
  double alpha = 0.0;
  double c = 0.0;
  int N = 0;
  double p = 2.0;
  double delta = 1.0;
  double threshold = 0.0;
  bool critical_exponent = false;
  std::vector<double> R;
  std::vector<double> errors;
  std::vector<int> weight_counts;       // modes with nonzero Riesz weight
  std::vector<double> slopes_so_far;    // NaN for the first entry
  std::vector<double> parseval_errors;  // p == 2 only
  double slope = 0.0;
  bool strictly_decreasing = false;
  bool above_threshold = false;
  // Set only above the threshold: error drops by at least 10x over the grid.
  std::optional<bool> pass;
};

ConvergenceReport convergence_sweep(const SampledFunction& f, const EigenSystem& es, double p,
                                    double delta, std::span<const double> R_grid);

// Exact L^2(w) error of the Riesz mean from expansion coefficients:
// sqrt(tail + sum (1 - w_n)^2 a_n^2), tail = ||f - sum a_n phi_n||^2.
double parseval_error(double tail_sq, std::span<const double> coeffs, std::span<const double> chi,
                      const RieszConfig& cfg);

// sup over probes of ||Psi_R f||_p / ||f||_p, one entry per R.
std::vector<double> operator_norm_probe(const EigenSystem& es, double p, double delta,
                                        std::span<const double> R_grid,
                                        std::span<const SampledFunction> probes);

// Reproducing-kernel bumps centred near the right endpoint at several
// spectral scales, plus `random_count` random coefficient vectors.
std::vector<SampledFunction> make_probes(const EigenSystem& es, const GridPtr& grid,
                                         int random_count, std::uint64_t seed);

struct JacobiApprox {
  double residual = 0.0;   // sup |psi_n - A_n J_n| on a kSupGrid grid in theta
  double amplitude = 0.0;  // A_n = <psi_n, J_n>
};

// GPSWF with 0 <= alpha < 3/2 only.
JacobiApprox jacobi_approx_residual(const EigenSystem& es, int n);

// Geometric grid of `count` points from start to stop inclusive.
std::vector<double> geometric_grid(double start, double stop, int count);

}  // namespace prolate
