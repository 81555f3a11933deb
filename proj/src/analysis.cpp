#include "prolate/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace prolate {

double lp_norm(const SampledFunction& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j)
    acc += f.grid->weights[j] * std::pow(std::abs(f.values[j]), p);
  return std::pow(acc, 1.0 / p);
}

LineFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("fit_loglog: need at least two paired samples");
  const double n = static_cast<double>(xs.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw std::invalid_argument("fit_loglog: non-positive sample");
    const double lx = std::log(xs[i]);
    const double ly = std::log(ys[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom <= 0.0) throw std::invalid_argument("fit_loglog: degenerate abscissae");
  LineFit fit;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  return fit;
}

namespace {

std::vector<double> sup_grid(Family family) {
  std::vector<double> x(kSupGrid);
  for (int i = 0; i < kSupGrid; ++i) {
    const double theta = std::numbers::pi * i / (kSupGrid - 1);
    x[i] = family == Family::gpswf ? std::cos(theta) : 0.5 * (1.0 - std::cos(theta));
  }
  return x;
}

}  // namespace

std::vector<double> sup_norms(const EigenSystem& es) {
  const auto grid = sup_grid(es.spec().family);
  std::vector<double> out(es.size(), 0.0);
  for (double x : grid) {
    const auto v = es.eval_all(x);
    for (int n = 0; n < es.size(); ++n) out[n] = std::max(out[n], std::abs(v[n]));
  }
  return out;
}

GrowthFit norm_growth_fit(const EigenSystem& es, double p, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi >= es.size() || n_hi - n_lo + 1 < 10)
    throw std::invalid_argument("norm_growth_fit: need >= 10 retained indices starting at n >= 1");
  if (!(p >= 1.0)) throw std::invalid_argument("norm_growth_fit: p must be >= 1");
  GrowthFit fit;
  std::vector<double> all;
  if (std::isinf(p)) {
    all = sup_norms(es);
  } else {
    const auto grid = family_grid(es.spec(), std::max(2 * es.spec().N + 64, kTransformNodes));
    const Matrix samples = es.sample(grid->nodes);
    all.assign(es.size(), 0.0);
    for (std::size_t j = 0; j < grid->size(); ++j)
      for (int n = 0; n < es.size(); ++n)
        all[n] += grid->weights[j] * std::pow(std::abs(samples(j, n)), p);
    for (double& v : all) v = std::pow(v, 1.0 / p);
  }
  std::vector<double> xs;
  for (int n = n_lo; n <= n_hi; ++n) {
    fit.n.push_back(n);
    fit.norms.push_back(all[n]);
    xs.push_back(n);
  }
  fit.slope = fit_loglog(xs, fit.norms).slope;
  return fit;
}

int eigenvalue_count(const EigenSystem& es, double m, double M) {
  return static_cast<int>(
      std::count_if(es.chi().begin(), es.chi().end(), [&](double v) { return v > m && v < M; }));
}

ExponentTable table_for(const ProlateSpec& spec, double eps_choice) {
  const bool extended = spec.family == Family::gpswf ? !(spec.alpha >= 0.0 && spec.alpha < 1.5)
                                                     : outside_theorem_range(spec);
  return make_exponent_table(spec.family, spec.alpha, eps_choice, extended);
}

double cluster_ratio(const SampledFunction& f, const EigenSystem& es, double m, double M, double p,
                     const ExponentTable& table) {
  if (!(p > 1.0 && p <= 2.0)) throw std::invalid_argument("cluster_ratio: p must lie in (1,2]");
  if (!(M > m)) throw std::invalid_argument("cluster_ratio: need m < M");
  const auto a = expansion_coeffs(f, es);
  double cluster_sq = 0.0;
  int count = 0;
  for (int n = 0; n < es.size(); ++n) {
    if (es.chi()[n] > m && es.chi()[n] < M) {
      cluster_sq += a[n] * a[n];
      ++count;
    }
  }
  if (count == 0) return 0.0;
  const double exponent = delta_threshold(table, p).value;
  return std::sqrt(cluster_sq) / (std::pow(M, exponent) * std::sqrt(M - m) * lp_norm(f, p));
}

double parseval_error(double tail_sq, std::span<const double> coeffs, std::span<const double> chi,
                      const RieszConfig& cfg) {
  double deficit = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    const double gap = 1.0 - riesz_weight(chi[n], cfg);
    deficit += gap * gap * coeffs[n] * coeffs[n];
  }
  return std::sqrt(std::max(0.0, tail_sq) + deficit);
}

ConvergenceReport convergence_sweep(const SampledFunction& f, const EigenSystem& es, double p,
                                    double delta, std::span<const double> R_grid) {
  if (R_grid.empty()) throw std::invalid_argument("convergence_sweep: empty R grid");
  for (std::size_t i = 1; i < R_grid.size(); ++i)
    if (!(R_grid[i] > R_grid[i - 1]))
      throw std::invalid_argument("convergence_sweep: R grid must be strictly increasing");

  const auto& spec = es.spec();
  ConvergenceReport rep;
  rep.family = spec.family;
  rep.alpha = spec.alpha;
  rep.c = spec.c;
  rep.N = spec.N;
  rep.p = p;
  rep.delta = delta;
  const Threshold thr = delta_threshold(table_for(spec), p);
  rep.threshold = thr.value;
  rep.critical_exponent = thr.critical;
  rep.above_threshold = delta > thr.value && !thr.critical;

  const auto a = expansion_coeffs(f, es);
  const Matrix modes = es.sample(f.grid->nodes);
  double tail_sq = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    double proj = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) proj += a[n] * modes(j, n);
    tail_sq += f.grid->weights[j] * std::norm(f.values[j] - proj);
  }

  for (double R : R_grid) {
    const RieszConfig cfg{R, delta};
    require_certified(es, cfg);
    const auto mean = riesz_synthesis(a, modes, es.chi(), cfg);
    std::vector<std::complex<double>> diff(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) diff[j] = f.values[j] - mean[j];
    rep.R.push_back(R);
    rep.errors.push_back(lp_norm(SampledFunction(f.grid, std::move(diff)), p));
    rep.weight_counts.push_back(eigenvalue_count(es, -kInfinity, R));
    if (p == 2.0) rep.parseval_errors.push_back(parseval_error(tail_sq, a, es.chi(), cfg));
    if (rep.R.size() < 2 || std::any_of(rep.errors.begin(), rep.errors.end(),
                                        [](double e) { return !(e > 0.0); })) {
      rep.slopes_so_far.push_back(std::numeric_limits<double>::quiet_NaN());
    } else {
      rep.slopes_so_far.push_back(fit_loglog(rep.R, rep.errors).slope);
    }
  }
  rep.slope = rep.slopes_so_far.back();
  rep.strictly_decreasing = true;
  for (std::size_t i = 1; i < rep.errors.size(); ++i)
    if (!(rep.errors[i] < rep.errors[i - 1])) rep.strictly_decreasing = false;
  if (rep.above_threshold) rep.pass = rep.errors.back() * 10.0 <= rep.errors.front();
  return rep;
}

std::vector<double> operator_norm_probe(const EigenSystem& es, double p, double delta,
                                        std::span<const double> R_grid,
                                        std::span<const SampledFunction> probes) {
  if (probes.empty()) throw std::invalid_argument("operator_norm_probe: no probes");
  struct Prepared {
    std::vector<double> coeffs;
    double norm;
  };
  std::vector<Prepared> prepared;
  for (const auto& f : probes) {
    const double norm = lp_norm(f, p);
    if (!(norm > 0.0)) throw std::invalid_argument("operator_norm_probe: zero probe");
    prepared.push_back({expansion_coeffs(f, es), norm});
  }
  const GridPtr grid = probes.front().grid;
  for (const auto& f : probes)
    if (f.grid->nodes != grid->nodes) throw std::invalid_argument("operator_norm_probe: mixed grids");
  const Matrix modes = es.sample(grid->nodes);

  std::vector<double> out;
  for (double R : R_grid) {
    const RieszConfig cfg{R, delta};
    require_certified(es, cfg);
    double best = 0.0;
    for (const auto& pr : prepared) {
      const auto mean = riesz_synthesis(pr.coeffs, modes, es.chi(), cfg);
      const SampledFunction g(grid, {mean.begin(), mean.end()});
      best = std::max(best, lp_norm(g, p) / pr.norm);
    }
    out.push_back(best);
  }
  return out;
}

std::vector<SampledFunction> make_probes(const EigenSystem& es, const GridPtr& grid,
                                         int random_count, std::uint64_t seed) {
  require_family_grid(es.spec(), *grid);
  const Matrix modes = es.sample(grid->nodes);
  auto synthesize = [&](const std::vector<double>& coeffs) {
    std::vector<std::complex<double>> v(grid->size(), 0.0);
    for (std::size_t j = 0; j < grid->size(); ++j) {
      double acc = 0.0;
      for (int n = 0; n < es.size(); ++n) acc += coeffs[n] * modes(j, n);
      v[j] = acc;
    }
    return SampledFunction(grid, std::move(v));
  };

  std::vector<SampledFunction> probes;
  for (double x0 : {1.0, 0.98}) {
    const auto at = es.eval_all(x0);
    for (double scale : {1.0, 0.25, 0.0625}) {
      const RieszConfig smooth{scale * es.chi_max(), 2.0};
      std::vector<double> coeffs(es.size());
      for (int n = 0; n < es.size(); ++n) coeffs[n] = riesz_weight(es.chi()[n], smooth) * at[n];
      probes.push_back(synthesize(coeffs));
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int r = 0; r < random_count; ++r) {
    std::vector<double> coeffs(es.size());
    for (double& v : coeffs) v = normal(rng);
    probes.push_back(synthesize(coeffs));
  }
  return probes;
}

JacobiApprox jacobi_approx_residual(const EigenSystem& es, int n) {
  const auto& spec = es.spec();
  if (spec.family != Family::gpswf)
    throw std::invalid_argument("jacobi_approx_residual: weighted family only");
  if (!(spec.alpha >= 0.0 && spec.alpha < 1.5))
    throw std::invalid_argument("jacobi_approx_residual: alpha outside [0, 3/2)");
  if (n < 0 || n >= es.size()) throw std::invalid_argument("jacobi_approx_residual: mode not retained");
  JacobiApprox out;
  // The reference basis is orthonormal, so the projection is a coefficient.
  out.amplitude = es.coeffs()(n, n);
  for (double x : sup_grid(Family::gpswf)) {
    const double psi = es.eval(n, x);
    const double jn = jacobi_poly_orthonormal(n, spec.alpha, spec.alpha, x);
    out.residual = std::max(out.residual, std::abs(psi - out.amplitude * jn));
  }
  return out;
}

std::vector<double> geometric_grid(double start, double stop, int count) {
  if (!(start > 0.0) || !(stop > start) || count < 2)
    throw std::invalid_argument("geometric_grid: need 0 < start < stop and count >= 2");
  std::vector<double> g(count);
  const double ratio = std::log(stop / start) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = start * std::exp(ratio * i);
  g.front() = start;
  g.back() = stop;
  return g;
}

}  // namespace prolate
