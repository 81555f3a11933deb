#pragma once

#include <limits>
#include <stdexcept>
#include <vector>

#include "prolate/prolate.hpp"
#include "prolate/transforms.hpp"

namespace prolate {

// Raised when a summation radius lies beyond the retained (converged) part of
// the spectrum.
class SpectrumRangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct RieszConfig {
  double R = 1.0;
  double delta = 1.0;
};

void validate(const RieszConfig& cfg);

// (1 - chi/R)_+^delta.
double riesz_weight(double chi, const RieszConfig& cfg);

// a_n(f) = int f phi_n w over the retained modes. f must be real-valued.
std::vector<double> expansion_coeffs(const SampledFunction& f, const EigenSystem& es);

// Throws SpectrumRangeError when R > chi_max of the retained modes.
void require_certified(const EigenSystem& es, const RieszConfig& cfg);

// sum_n (1 - chi_n/R)_+^delta a_n(f) phi_n, sampled on f's grid.
SampledFunction riesz_mean(const SampledFunction& f, const EigenSystem& es, const RieszConfig& cfg);

// Same synthesis from precomputed coefficients and mode samples (rows: nodes).
std::vector<double> riesz_synthesis(std::span<const double> coeffs, const Matrix& mode_samples,
                                    std::span<const double> chi, const RieszConfig& cfg);

// K_R^delta(x, y) = sum_n (1 - chi_n/R)_+^delta phi_n(x) phi_n(y).
double riesz_kernel(const EigenSystem& es, const RieszConfig& cfg, double x, double y);

// Smooth dyadic bump supported on [1/2, 2] with sum_k bump(2^k t) = 1, t > 0.
double bump(double t);
// 1 - sum_{k>=1} bump(2^k t).
double bump_zero(double t);

// floor(log R / log 2), clamped at 0.
int dyadic_levels(double R);

// (1 - chi/R)_+^delta bump(2^k (1 - chi/R)).
double dyadic_piece(double chi, const RieszConfig& cfg, int k);
// (1 - chi/R)_+^delta bump_zero(1 - chi/R).
double dyadic_zero_piece(double chi, const RieszConfig& cfg);
// sum_{k > levels} dyadic_piece(chi, cfg, k).
double dyadic_tail(double chi, const RieszConfig& cfg, int levels);

// Open support window (R(1 - 2^{1-k}), R(1 - 2^{-k-1})) of dyadic_piece.
struct Window {
  double lo;
  double hi;
};
Window dyadic_support(const RieszConfig& cfg, int k);

// ---------------------------------------------------------------------------
// Critical exponents
// ---------------------------------------------------------------------------

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultEps = 0.01;

// p/(p-1), with 1 <-> infinity.
double dual_exponent(double p);

struct ExponentTable {
  Family family = Family::gpswf;
  double alpha = 0.0;
  double p0 = 0.0;       // GPSWF only
  double p0_dual = 0.0;  // GPSWF only
  double epsilon = 2.0;  // eigenvalue growth exponent
  double eps_choice = kDefaultEps;
  bool allow_extended = false;
};

ExponentTable make_exponent_table(Family family, double alpha, double eps_choice = kDefaultEps,
                                  bool allow_extended = false);

// Norm-growth exponent for the weighted family. alpha must lie in [0, 3/2)
// unless allow_extended (then alpha > -1/2).
double gamma_gpswf(double alpha, double p, double eps_choice = kDefaultEps,
                   bool allow_extended = false);

// Norm-growth exponent for the circular family; negative on some branches.
double gamma_cpswf(double p, double eps_choice = kDefaultEps);

double gamma_of(const ExponentTable& table, double p);

struct Threshold {
  double value;       // max{gamma(p')/2, 0}
  double gamma_dual;  // gamma(p')
  bool critical;      // p == p0 for the weighted family: excluded exponent
};

Threshold delta_threshold(const ExponentTable& table, double p);

}  // namespace prolate
