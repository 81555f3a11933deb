#include "prolate/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace prolate {

void validate(const RieszConfig& cfg) {
  if (!(std::isfinite(cfg.R) && cfg.R > 0.0)) throw std::invalid_argument("R must be finite and > 0");
  if (!(std::isfinite(cfg.delta) && cfg.delta > 0.0))
    throw std::invalid_argument("delta must be finite and > 0");
}

double riesz_weight(double chi, const RieszConfig& cfg) {
  if (chi >= cfg.R) return 0.0;
  return std::pow(1.0 - chi / cfg.R, cfg.delta);
}

std::vector<double> expansion_coeffs(const SampledFunction& f, const EigenSystem& es) {
  require_family_grid(es.spec(), *f.grid);
  const auto& g = *f.grid;
  const Matrix modes = es.sample(g.nodes);
  std::vector<double> a(es.size(), 0.0);
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (f.values[j].imag() != 0.0)
      throw std::invalid_argument("expansion_coeffs: f must be real-valued");
    const double wf = g.weights[j] * f.values[j].real();
    const auto row = modes.row(j);
    for (std::size_t n = 0; n < a.size(); ++n) a[n] += wf * row[n];
  }
  return a;
}

void require_certified(const EigenSystem& es, const RieszConfig& cfg) {
  validate(cfg);
  if (cfg.R > es.chi_max())
    throw SpectrumRangeError("R exceeds certified spectrum (R = " + std::to_string(cfg.R) +
                             ", largest retained eigenvalue = " + std::to_string(es.chi_max()) +
                             ")");
}

std::vector<double> riesz_synthesis(std::span<const double> coeffs, const Matrix& mode_samples,
                                    std::span<const double> chi, const RieszConfig& cfg) {
  std::vector<double> weighted(coeffs.size());
  for (std::size_t n = 0; n < coeffs.size(); ++n) weighted[n] = riesz_weight(chi[n], cfg) * coeffs[n];
  std::vector<double> out(mode_samples.rows(), 0.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto row = mode_samples.row(i);
    double acc = 0.0;
    for (std::size_t n = 0; n < weighted.size(); ++n)
      if (weighted[n] != 0.0) acc += weighted[n] * row[n];
    out[i] = acc;
  }
  return out;
}

SampledFunction riesz_mean(const SampledFunction& f, const EigenSystem& es, const RieszConfig& cfg) {
  require_certified(es, cfg);
  const auto a = expansion_coeffs(f, es);
  const auto values = riesz_synthesis(a, es.sample(f.grid->nodes), es.chi(), cfg);
  return SampledFunction(f.grid, {values.begin(), values.end()});
}

double riesz_kernel(const EigenSystem& es, const RieszConfig& cfg, double x, double y) {
  require_certified(es, cfg);
  const auto px = es.eval_all(x);
  const auto py = es.eval_all(y);
  double acc = 0.0;
  for (int n = 0; n < es.size(); ++n) acc += riesz_weight(es.chi()[n], cfg) * (px[n] * py[n]);
  return acc;
}

// ---------------------------------------------------------------------------
// Dyadic decomposition
// ---------------------------------------------------------------------------

namespace {

double smooth_exp(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

// C^infinity step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u) {
  const double e0 = smooth_exp(u);
  const double e1 = smooth_exp(1.0 - u);
  return e0 / (e0 + e1);
}

constexpr int kMaxLevels = 2100;

}  // namespace

double bump(double t) {
  if (t >= 0.5 && t <= 1.0) return smooth_step(2.0 * t - 1.0);
  if (t > 1.0 && t <= 2.0) return 1.0 - smooth_step(t - 1.0);
  return 0.0;
}

double bump_zero(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  double s = 2.0 * t;
  for (int k = 1; k < kMaxLevels && s < 2.0; ++k, s *= 2.0) sum += bump(s);
  return 1.0 - sum;
}

int dyadic_levels(double R) {
  if (R < 2.0) return 0;
  return std::ilogb(R);
}

double dyadic_piece(double chi, const RieszConfig& cfg, int k) {
  const double u = 1.0 - chi / cfg.R;
  if (u <= 0.0) return 0.0;
  return std::pow(u, cfg.delta) * bump(std::ldexp(u, k));
}

double dyadic_zero_piece(double chi, const RieszConfig& cfg) {
  const double u = 1.0 - chi / cfg.R;
  if (u <= 0.0) return 0.0;
  return std::pow(u, cfg.delta) * bump_zero(u);
}

double dyadic_tail(double chi, const RieszConfig& cfg, int levels) {
  const double u = 1.0 - chi / cfg.R;
  if (u <= 0.0) return 0.0;
  double sum = 0.0;
  for (int k = levels + 1; k < kMaxLevels; ++k) {
    const double s = std::ldexp(u, k);
    if (s >= 2.0) break;
    sum += bump(s);
  }
  return std::pow(u, cfg.delta) * sum;
}

Window dyadic_support(const RieszConfig& cfg, int k) {
  return {cfg.R * (1.0 - std::ldexp(1.0, 1 - k)), cfg.R * (1.0 - std::ldexp(1.0, -k - 1))};
}

// ---------------------------------------------------------------------------
// Exponent tables
// ---------------------------------------------------------------------------

double dual_exponent(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("exponent p must be >= 1");
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

namespace {

bool same_exponent(double p, double q) {
  return std::abs(p - q) <= 1e-12 * std::max(1.0, std::abs(q));
}

void check_eps(double eps_choice) {
  if (!(eps_choice > 0.0)) throw std::invalid_argument("eps_choice must be > 0");
}

}  // namespace

ExponentTable make_exponent_table(Family family, double alpha, double eps_choice,
                                  bool allow_extended) {
  check_eps(eps_choice);
  ExponentTable t;
  t.family = family;
  t.alpha = alpha;
  t.eps_choice = eps_choice;
  t.allow_extended = allow_extended;
  if (family == Family::gpswf) {
    // p0 = 2 - 1/(alpha + 3/2), written so that alpha = 0 gives p0' = 4 exactly.
    t.p0 = (2.0 * alpha + 2.0) / (alpha + 1.5);
    t.p0_dual = (2.0 * alpha + 2.0) / (alpha + 0.5);
  }
  return t;
}

double gamma_gpswf(double alpha, double p, double eps_choice, bool allow_extended) {
  check_eps(eps_choice);
  if (allow_extended) {
    if (!(alpha > -0.5)) throw std::invalid_argument("gamma_gpswf: alpha must be > -1/2");
  } else if (!(alpha >= 0.0 && alpha < 1.5)) {
    throw std::invalid_argument("gamma_gpswf: alpha outside [0, 3/2)");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("gamma_gpswf: p must be >= 1");
  if (p == 1.0) return alpha + 1.0;
  const double p0_dual = (2.0 * alpha + 2.0) / (alpha + 0.5);
  if (same_exponent(p, p0_dual)) return eps_choice;
  if (p < p0_dual) return 0.0;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  return (alpha + 0.5) - 2.0 * (alpha + 1.0) * inv_p;
}

double gamma_cpswf(double p, double eps_choice) {
  check_eps(eps_choice);
  if (!(p >= 1.0)) throw std::invalid_argument("gamma_cpswf: p must be >= 1");
  if (p == 1.0) return 1.0;
  if (same_exponent(p, 4.0)) return eps_choice - 0.25;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  if (p < 4.0) return inv_p - 0.5;
  return (inv_p - 1.0) / 3.0;
}

double gamma_of(const ExponentTable& table, double p) {
  if (table.family == Family::gpswf)
    return gamma_gpswf(table.alpha, p, table.eps_choice, table.allow_extended);
  return gamma_cpswf(p, table.eps_choice);
}

Threshold delta_threshold(const ExponentTable& table, double p) {
  const double g = gamma_of(table, dual_exponent(p));
  Threshold t;
  t.gamma_dual = g;
  t.value = std::max(g / 2.0, 0.0);
  t.critical = table.family == Family::gpswf && same_exponent(p, table.p0);
  return t;
}

}  // namespace prolate
