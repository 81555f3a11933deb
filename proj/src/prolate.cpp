#include "prolate/prolate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace prolate {

std::string_view to_string(Family family) {
  return family == Family::gpswf ? "gpswf" : "cpswf";
}

Family parse_family(std::string_view text) {
  if (text == "gpswf" || text == "GPSWF") return Family::gpswf;
  if (text == "cpswf" || text == "CPSWF") return Family::cpswf;
  throw std::invalid_argument("unknown family '" + std::string(text) + "' (expected gpswf|cpswf)");
}

int ProlateSpec::retained() const {
  return static_cast<int>(std::floor(N * keep_fraction));
}

void validate(const ProlateSpec& spec) {
  if (!std::isfinite(spec.alpha) || !std::isfinite(spec.c))
    throw std::invalid_argument("alpha and c must be finite");
  if (!(spec.alpha > -0.5)) throw std::invalid_argument("alpha must be > -1/2");
  if (spec.c < 0.0) throw std::invalid_argument("c must be >= 0");
  if (spec.N < 4) throw std::invalid_argument("N must be >= 4");
  if (!(spec.keep_fraction > 0.0 && spec.keep_fraction <= 1.0))
    throw std::invalid_argument("keep_fraction must lie in (0,1]");
  if (spec.retained() < 1) throw std::invalid_argument("N * keep_fraction must be >= 1");
}

bool outside_theorem_range(const ProlateSpec& spec) {
  return spec.family == Family::cpswf && spec.alpha < 0.5;
}

double unperturbed_eigenvalue(Family family, double alpha, int n) {
  if (family == Family::gpswf) return n * (n + 2.0 * alpha + 1.0);
  return (2.0 * n + alpha + 0.5) * (2.0 * n + alpha + 1.5);
}

double chi_lower_bound(Family family, double alpha, int n) {
  return unperturbed_eigenvalue(family, alpha, n);
}

double bound_slack(double c) { return 1e-8 * (1.0 + c * c); }

GalerkinBlocks build_galerkin(const ProlateSpec& spec) {
  validate(spec);
  const double a = spec.alpha;
  const double c2 = spec.c * spec.c;
  GalerkinBlocks out;

  if (spec.family == Family::gpswf) {
    // Reference basis: orthonormal Jacobi (a,a). x^2 acts as J^2 of the
    // Jacobi matrix, whose diagonal vanishes by symmetry of the weight.
    std::vector<double> beta(spec.N + 2, 0.0);
    for (int k = 1; k < spec.N + 2; ++k) beta[k] = jacobi_recurrence_beta(k, a, a);
    for (int parity = 0; parity < 2; ++parity) {
      auto& blk = out.blocks[parity];
      for (int k = parity; k < spec.N; k += 2) {
        blk.basis_index.push_back(k);
        blk.diag.push_back(unperturbed_eigenvalue(Family::gpswf, a, k) +
                           c2 * (beta[k] * beta[k] + beta[k + 1] * beta[k + 1]));
        if (k + 2 < spec.N) blk.offdiag.push_back(c2 * beta[k + 1] * beta[k + 2]);
      }
    }
    return out;
  }

  // Reference basis: T_k(x) = 2^{(a+2)/2} x^{a+1/2} p_k(1 - 2x^2) with p_k
  // orthonormal Jacobi (a,0); x^2 = (1-u)/2 in the u variable.
  auto& blk = out.blocks[0];
  for (int k = 0; k < spec.N; ++k) {
    blk.basis_index.push_back(k);
    blk.diag.push_back(unperturbed_eigenvalue(Family::cpswf, a, k) +
                       0.5 * c2 * (1.0 - jacobi_recurrence_alpha(k, a, 0.0)));
    if (k + 1 < spec.N) blk.offdiag.push_back(-0.5 * c2 * jacobi_recurrence_beta(k + 1, a, 0.0));
  }
  return out;
}

EigenSystem::EigenSystem(ProlateSpec spec, std::vector<double> chi, Matrix coeffs,
                         std::vector<int> parity)
    : spec_(spec), chi_(std::move(chi)), coeffs_(std::move(coeffs)), parity_(std::move(parity)) {
  if (chi_.empty()) throw std::invalid_argument("EigenSystem: no modes");
  if (coeffs_.cols() != chi_.size() || coeffs_.rows() != static_cast<std::size_t>(spec_.N))
    throw std::invalid_argument("EigenSystem: coefficient shape mismatch");
}

EigenSystem solve(const ProlateSpec& spec) {
  const GalerkinBlocks g = build_galerkin(spec);

  struct Mode {
    double chi;
    std::vector<double> coeffs;
  };
  std::vector<Mode> modes;
  modes.reserve(spec.N);
  for (const auto& blk : g.blocks) {
    if (blk.diag.empty()) continue;
    const TridiagEigen eig = symtridiag_eigen(blk.diag, blk.offdiag);
    for (std::size_t j = 0; j < eig.values.size(); ++j) {
      Mode m{eig.values[j], std::vector<double>(spec.N, 0.0)};
      for (std::size_t r = 0; r < blk.basis_index.size(); ++r)
        m.coeffs[blk.basis_index[r]] = eig.vectors(r, j);
      modes.push_back(std::move(m));
    }
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const Mode& x, const Mode& y) { return x.chi < y.chi; });

  const int keep = spec.retained();
  std::vector<double> chi(keep);
  Matrix coeffs(spec.N, keep);
  std::vector<int> parity;
  for (int n = 0; n < keep; ++n) {
    auto& m = modes[n];
    chi[n] = m.chi;
    if (n > 0 && !(chi[n] > chi[n - 1]))
      throw NumericalError("solve: eigenvalues not strictly increasing at n = " + std::to_string(n));
    // Sign convention: largest-magnitude coefficient positive.
    const auto big = std::max_element(m.coeffs.begin(), m.coeffs.end(),
                                      [](double x, double y) { return std::abs(x) < std::abs(y); });
    const double sign = *big < 0.0 ? -1.0 : 1.0;
    for (int k = 0; k < spec.N; ++k) coeffs(k, n) = sign * m.coeffs[k];
    if (spec.family == Family::gpswf) {
      const int p = static_cast<int>(std::distance(m.coeffs.begin(), big)) % 2;
      if (p != n % 2)
        throw NumericalError("solve: parity of mode " + std::to_string(n) + " out of order");
      parity.push_back(p);
    }
  }
  return EigenSystem(spec, std::move(chi), std::move(coeffs), std::move(parity));
}

void EigenSystem::check_domain(double x) const {
  const double lo = spec_.family == Family::gpswf ? -1.0 : 0.0;
  if (!(x >= lo && x <= 1.0))
    throw std::invalid_argument("eval: x = " + std::to_string(x) + " outside the domain");
}

std::vector<double> EigenSystem::basis_values(double x) const {
  check_domain(x);
  const double a = spec_.alpha;
  if (spec_.family == Family::gpswf) return jacobi_orthonormal_all(spec_.N, a, a, x);
  auto p = jacobi_orthonormal_all(spec_.N, a, 0.0, 1.0 - 2.0 * x * x);
  const double factor = std::pow(2.0, 0.5 * (a + 2.0)) * std::pow(x, a + 0.5);
  for (double& v : p) v *= factor;
  return p;
}

std::vector<double> EigenSystem::eval_all(double x) const {
  const auto basis = basis_values(x);
  std::vector<double> out(chi_.size(), 0.0);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto row = coeffs_.row(k);
    const double bk = basis[k];
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += row[n] * bk;
  }
  return out;
}

double EigenSystem::eval(int n, double x) const {
  if (n < 0 || n >= size()) throw std::invalid_argument("eval: mode index not retained");
  check_domain(x);
  // Clenshaw summation of column n against the orthonormal recurrence.
  const double a = spec_.alpha;
  const double b = spec_.family == Family::gpswf ? a : 0.0;
  const double t = spec_.family == Family::gpswf ? x : 1.0 - 2.0 * x * x;
  double b1 = 0.0;
  double b2 = 0.0;
  for (int k = spec_.N - 1; k >= 0; --k) {
    const double beta1 = jacobi_recurrence_beta(k + 1, a, b);
    const double beta2 = jacobi_recurrence_beta(k + 2, a, b);
    const double bk =
        coeffs_(k, n) + (t - jacobi_recurrence_alpha(k, a, b)) / beta1 * b1 - beta1 / beta2 * b2;
    b2 = b1;
    b1 = bk;
  }
  double value = b1 / std::sqrt(jacobi_mass(a, b));
  if (spec_.family == Family::cpswf)
    value *= std::pow(2.0, 0.5 * (a + 2.0)) * std::pow(x, a + 0.5);
  return value;
}

Matrix EigenSystem::sample(std::span<const double> nodes) const {
  Matrix out(nodes.size(), chi_.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto v = eval_all(nodes[i]);
    for (std::size_t n = 0; n < v.size(); ++n) out(i, n) = v[n];
  }
  return out;
}

double eval(const EigenSystem& es, int n, double x) { return es.eval(n, x); }

bool BoundReport::all_ok() const {
  return std::all_of(ok.begin(), ok.end(), [](bool v) { return v; });
}

BoundReport check_bounds(const EigenSystem& es) {
  const auto& spec = es.spec();
  const double slack = bound_slack(spec.c);
  BoundReport r;
  for (int n = 0; n < es.size(); ++n) {
    const double lo = chi_lower_bound(spec.family, spec.alpha, n);
    const double hi = lo + spec.c * spec.c;
    r.lower.push_back(lo);
    r.upper.push_back(hi);
    r.ok.push_back(es.chi()[n] >= lo - slack && es.chi()[n] <= hi + slack);
  }
  return r;
}

}  // namespace prolate
