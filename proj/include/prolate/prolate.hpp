#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prolate/specfun.hpp"

namespace prolate {

enum class Family { gpswf, cpswf };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

struct ProlateSpec {
  Family family = Family::gpswf;
  double alpha = 0.0;
  double c = 0.0;
  int N = 64;
  double keep_fraction = 0.5;

  // Number of eigenpairs kept as converged: floor(N * keep_fraction).
  int retained() const;
};

// Throws std::invalid_argument when the spec is unusable.
void validate(const ProlateSpec& spec);

// CPSWF with alpha in (-1/2, 1/2): computable, but outside the alpha >= 1/2
// range in which the circular summability statement is made.
bool outside_theorem_range(const ProlateSpec& spec);

struct TridiagBlock {
  std::vector<double> diag;
  std::vector<double> offdiag;
  std::vector<int> basis_index;  // reference-basis degree of each row
};

// GPSWF: blocks[0] holds even degrees, blocks[1] odd degrees.
// CPSWF: blocks[0] holds every degree, blocks[1] is empty.
struct GalerkinBlocks {
  std::array<TridiagBlock, 2> blocks;
};

GalerkinBlocks build_galerkin(const ProlateSpec& spec);

// Eigenvalue of the unperturbed (c = 0) operator on reference basis index n.
double unperturbed_eigenvalue(Family family, double alpha, int n);

class EigenSystem {
 public:
  EigenSystem(ProlateSpec spec, std::vector<double> chi, Matrix coeffs, std::vector<int> parity);

  const ProlateSpec& spec() const { return spec_; }
  const std::vector<double>& chi() const { return chi_; }
  // N x retained; column n expands mode n in the reference basis.
  const Matrix& coeffs() const { return coeffs_; }
  // GPSWF: n mod 2 for every mode. CPSWF: empty.
  const std::vector<int>& parity() const { return parity_; }

  int size() const { return static_cast<int>(chi_.size()); }
  double chi_max() const { return chi_.back(); }
  bool extended_alpha() const { return outside_theorem_range(spec_); }

  // All retained modes at one point.
  std::vector<double> eval_all(double x) const;
  // Mode n at x. GPSWF domain [-1,1], CPSWF domain [0,1].
  double eval(int n, double x) const;
  // samples(i, n) = mode n at nodes[i].
  Matrix sample(std::span<const double> nodes) const;

  // Values of the reference basis functions 0..N-1 at x.
  std::vector<double> basis_values(double x) const;

 private:
  void check_domain(double x) const;

  ProlateSpec spec_;
  std::vector<double> chi_;
  Matrix coeffs_;
  std::vector<int> parity_;
};

EigenSystem solve(const ProlateSpec& spec);

// Free-function forms.
double eval(const EigenSystem& es, int n, double x);

struct BoundReport {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> ok;

  bool all_ok() const;
};

// Lower bound of the eigenvalue sandwich for index n.
double chi_lower_bound(Family family, double alpha, int n);

BoundReport check_bounds(const EigenSystem& es);

// Slack used by check_bounds.
double bound_slack(double c);

}  // namespace prolate
