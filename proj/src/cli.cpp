#include "prolate/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "prolate/analysis.hpp"
#include "prolate/io.hpp"
#include "prolate/riesz.hpp"
#include "prolate/transforms.hpp"

namespace prolate::cli {

using nlohmann::json;

namespace {

struct Check {
  std::string name;
  bool pass;
  double value;
  double tolerance;
};

json to_json(const Check& c) {
  return {{"name", c.name}, {"pass", c.pass}, {"value", c.value}, {"tolerance", c.tolerance}};
}

// JSON has no infinity; spell it out.
json number(double v) { return std::isinf(v) ? json(v > 0 ? "inf" : "-inf") : json(v); }

json config_json(const RunConfig& cfg) {
  json p = json::array();
  for (double v : cfg.p) p.push_back(number(v));
  return {{"command", cfg.command},
          {"family", std::string(to_string(cfg.family))},
          {"alpha", cfg.alpha},
          {"c", cfg.c},
          {"N", cfg.N},
          {"keep_fraction", cfg.keep_fraction},
          {"p", p},
          {"delta", cfg.delta},
          {"r_start", cfg.r_start},
          {"r_stop", cfg.r_stop},
          {"r_count", cfg.r_count},
          {"r_modes", cfg.r_modes},
          {"function", cfg.function},
          {"nodes", cfg.nodes},
          {"points", cfg.points},
          {"eps", cfg.eps},
          {"allow_extended_alpha", cfg.allow_extended_alpha},
          {"format", cfg.format},
          {"seed", cfg.seed}};
}

ProlateSpec spec_of(const RunConfig& cfg) {
  ProlateSpec s;
  s.family = cfg.family;
  s.alpha = cfg.alpha;
  s.c = cfg.c;
  s.N = cfg.N;
  s.keep_fraction = cfg.keep_fraction;
  return s;
}

int quadrature_size(const RunConfig& cfg) {
  return cfg.nodes > 0 ? cfg.nodes : std::max(2 * cfg.N, kTransformNodes);
}

void emit(const RunConfig& cfg, const std::string& body, std::ostream& out) {
  if (cfg.output.empty()) {
    out << body;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw std::invalid_argument("cannot open output file '" + cfg.output + "'");
  file << body;
}

std::string csv_with_config(const RunConfig& cfg, const std::string& csv) {
  return "# config: " + config_json(cfg).dump() + "\n" + csv;
}

std::string document(const RunConfig& cfg, json results, const std::vector<Check>& checks) {
  json doc;
  doc["config"] = config_json(cfg);
  doc["results"] = std::move(results);
  doc["checks"] = json::array();
  for (const auto& c : checks) doc["checks"].push_back(to_json(c));
  return doc.dump(2) + "\n";
}

std::string checks_csv(const std::vector<Check>& checks) {
  std::string s = "name,pass,value,tolerance\n";
  for (const auto& c : checks)
    s += c.name + "," + (c.pass ? "true" : "false") + "," + format_number(c.value) + "," +
         format_number(c.tolerance) + "\n";
  return s;
}

int status_of(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; })
             ? ExitCode::ok
             : ExitCode::check_failed;
}

SampledFunction test_function(const RunConfig& cfg, const EigenSystem& es, const GridPtr& grid) {
  const std::string& name = cfg.function;
  if (name == "exp") return SampledFunction::from(grid, [](double x) { return std::exp(x); });
  if (name == "x2") return SampledFunction::from(grid, [](double x) { return x * x; });
  if (name == "abs") return SampledFunction::from(grid, [](double x) { return std::abs(x); });
  if (name == "step") {
    const double jump = cfg.family == Family::gpswf ? 0.0 : 0.5;
    return SampledFunction::from(grid, [jump](double x) { return x > jump ? 1.0 : 0.0; });
  }
  if (name == "phi0") return sample_mode(es, 0, grid);
  throw std::invalid_argument("unknown function '" + name + "' (exp|x2|abs|step|phi0)");
}

std::vector<double> r_grid(const RunConfig& cfg, const EigenSystem& es) {
  if (cfg.r_modes.empty()) return geometric_grid(cfg.r_start, cfg.r_stop, cfg.r_count);
  std::vector<double> g;
  for (int n : cfg.r_modes) {
    if (n < 0) throw std::invalid_argument("--r-modes entries must be >= 0");
    if (n >= es.size())
      throw SpectrumRangeError("R exceeds certified spectrum (mode " + std::to_string(n) +
                               " is not retained)");
    g.push_back(es.chi()[n]);
  }
  return g;
}

// -- basis ------------------------------------------------------------------

int run_basis(const RunConfig& cfg, std::ostream& out) {
  const EigenSystem es = solve(spec_of(cfg));
  const auto bounds = check_bounds(es);
  std::vector<Check> checks{{"eigenvalue_bounds", bounds.all_ok(), 0.0, bound_slack(cfg.c)}};
  if (cfg.format == "csv") {
    emit(cfg, csv_with_config(cfg, to_csv(es)), out);
  } else {
    emit(cfg, document(cfg, to_json(es), checks), out);
  }
  return status_of(checks);
}

// -- verify -----------------------------------------------------------------

double gram_residual(const EigenSystem& es, int nodes) {
  const auto grid = family_grid(es.spec(), nodes);
  const Matrix s = es.sample(grid->nodes);
  double worst = 0.0;
  for (int m = 0; m < es.size(); ++m) {
    for (int n = m; n < es.size(); ++n) {
      double acc = 0.0;
      for (std::size_t j = 0; j < grid->size(); ++j) acc += grid->weights[j] * s(j, m) * s(j, n);
      worst = std::max(worst, std::abs(acc - (m == n ? 1.0 : 0.0)));
    }
  }
  return worst;
}

// Worst count/(M - m) over windows starting just below each eigenvalue.
double window_excess(const EigenSystem& es) {
  double worst = 0.0;
  const auto& chi = es.chi();
  for (double w : {2.0, 2.5, 3.0, 4.0, 6.0, 10.0, 25.0, 100.0}) {
    for (double start : chi) {
      const double m = start - 1e-9 * (1.0 + std::abs(start));
      if (m < 0.0 || m + w > es.chi_max()) continue;
      worst = std::max(worst, eigenvalue_count(es, m, m + w) - w);
    }
  }
  return worst;
}

int run_verify(const RunConfig& cfg, std::ostream& out) {
  const ProlateSpec spec = spec_of(cfg);
  const EigenSystem es = solve(spec);
  std::vector<Check> checks;

  checks.push_back({"orthonormality", false, gram_residual(es, std::max(2 * cfg.N, 64)), 1e-8});
  checks.back().pass = checks.back().value <= checks.back().tolerance;

  double min_gap = kInfinity;
  for (int n = 1; n < es.size(); ++n) min_gap = std::min(min_gap, es.chi()[n] - es.chi()[n - 1]);
  checks.push_back({"strictly_increasing", es.size() < 2 || min_gap > 0.0,
                    es.size() < 2 ? 0.0 : min_gap, 0.0});

  const auto bounds = check_bounds(es);
  checks.push_back({"eigenvalue_bounds", bounds.all_ok(), 0.0, bound_slack(cfg.c)});

  {
    ProlateSpec doubled = spec;
    doubled.N *= 2;
    doubled.keep_fraction = spec.keep_fraction / 2.0;
    const EigenSystem fine = solve(doubled);
    double drift = 0.0;
    for (int n = 0; n < std::min(es.size(), fine.size()); ++n)
      drift = std::max(drift, std::abs(es.chi()[n] - fine.chi()[n]) / (1.0 + es.chi()[n]));
    checks.push_back({"truncation_convergence", drift <= 1e-12, drift, 1e-12});
  }

  const double excess = window_excess(es);
  checks.push_back({"condition_B1_window_count", excess <= 0.0, excess, 0.0});

  if ((spec.family == Family::gpswf && spec.alpha >= 0.0) ||
      (spec.family == Family::cpswf && spec.alpha >= 0.5)) {
    const double factor = spec.family == Family::gpswf ? 1.0 : 4.0;
    double margin = kInfinity;
    for (int n = 0; n < es.size(); ++n)
      margin = std::min(margin, es.chi()[n] - factor * n * n);
    checks.push_back({"condition_B2_growth", margin >= 0.0, margin, 0.0});
  }

  // Fit only where the modes have left the concentrated regime.
  const int growth_lo = std::max(10, static_cast<int>(std::ceil(2.0 * cfg.c)));
  const int growth_hi = std::min(es.size() - 1, std::max(100, growth_lo + 10));
  if (spec.family == Family::gpswf && spec.alpha >= 0.0 && spec.alpha < 1.5 &&
      growth_hi - growth_lo >= 10) {
    const auto fit = norm_growth_fit(es, kInfinity, growth_lo, growth_hi);
    checks.push_back({"condition_A_sup_growth", fit.slope <= spec.alpha + 1.1, fit.slope,
                      spec.alpha + 1.1});
  }

  {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(1e-6, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      const double t = unif(rng);
      double sum = 0.0;
      for (int k = -40; k <= 40; ++k) sum += bump(std::ldexp(t, k));
      worst = std::max(worst, std::abs(sum - 1.0));
    }
    checks.push_back({"bump_partition_of_unity", worst <= 1e-13, worst, 1e-13});
  }

  {
    const RieszConfig rc{0.5 * es.chi_max(), cfg.delta};
    const int levels = dyadic_levels(rc.R);
    double worst = 0.0;
    double sup_excess = -kInfinity;
    bool support_ok = true;
    for (double chi : es.chi()) {
      double total = dyadic_zero_piece(chi, rc) + dyadic_tail(chi, rc, levels);
      for (int k = 1; k <= levels; ++k) {
        const double piece = dyadic_piece(chi, rc, k);
        total += piece;
        const Window w = dyadic_support(rc, k);
        if (piece != 0.0 && !(chi > w.lo && chi < w.hi)) support_ok = false;
        sup_excess = std::max(sup_excess, std::abs(piece) - std::pow(2.0, (1 - k) * rc.delta));
      }
      worst = std::max(worst, std::abs(total - riesz_weight(chi, rc)));
    }
    checks.push_back({"dyadic_decomposition_identity", worst <= 1e-12, worst, 1e-12});
    checks.push_back({"dyadic_support", support_ok, 0.0, 0.0});
    checks.push_back({"dyadic_sup_bound", sup_excess <= 0.0, sup_excess, 0.0});
  }

  if (cfg.c > 0.0) {
    double worst = 0.0;
    const int limit = std::min(es.size(), 9);
    for (int n = 0; n < limit; ++n) {
      if (std::abs(estimate_mu(es, n)) < 1e-8) continue;
      worst = std::max(worst, commutation_leakage(es, n, limit));
    }
    checks.push_back({"transform_commutation", worst <= 1e-6, worst, 1e-6});
  }

  json results = {{"retained", es.size()},
                  {"chi_max", es.chi_max()},
                  {"extended_alpha", es.extended_alpha()}};
  if (cfg.format == "csv") {
    emit(cfg, csv_with_config(cfg, checks_csv(checks)), out);
  } else {
    emit(cfg, document(cfg, results, checks), out);
  }
  return status_of(checks);
}

// -- sweep ------------------------------------------------------------------

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  const EigenSystem es = solve(spec_of(cfg));
  const auto grid = family_grid(es.spec(), quadrature_size(cfg));
  const auto f = test_function(cfg, es, grid);
  const auto R = r_grid(cfg, es);
  std::vector<Check> checks;
  json results = json::array();
  std::string csv;
  for (double p : cfg.p) {
    const auto rep = convergence_sweep(f, es, p, cfg.delta, R);
    if (rep.pass) checks.push_back({"convergence_p=" + format_number(p), *rep.pass,
                                    rep.errors.back() / rep.errors.front(), 0.1});
    if (!rep.parseval_errors.empty()) {
      double gap = 0.0;
      for (std::size_t i = 0; i < rep.errors.size(); ++i)
        gap = std::max(gap, std::abs(rep.errors[i] - rep.parseval_errors[i]));
      checks.push_back({"parseval_agreement", gap <= 1e-12, gap, 1e-12});
    }
    results.push_back(to_json(rep));
    csv += to_csv(rep);
  }
  if (cfg.format == "csv") {
    emit(cfg, csv_with_config(cfg, csv), out);
  } else {
    emit(cfg, document(cfg, results, checks), out);
  }
  return status_of(checks);
}

// -- kernel -----------------------------------------------------------------

int run_kernel(const RunConfig& cfg, std::ostream& out) {
  const EigenSystem es = solve(spec_of(cfg));
  if (cfg.r_modes.size() > 1) throw std::invalid_argument("kernel takes a single R");
  const double R = cfg.r_modes.empty() ? cfg.r_start : r_grid(cfg, es).front();
  const RieszConfig rc{R, cfg.delta};
  require_certified(es, rc);
  if (cfg.points < 2) throw std::invalid_argument("--points must be >= 2");

  std::vector<double> xs(cfg.points);
  const double lo = cfg.family == Family::gpswf ? -1.0 : 0.0;
  for (int i = 0; i < cfg.points; ++i) xs[i] = lo + (1.0 - lo) * i / (cfg.points - 1);
  std::vector<std::vector<double>> modes;
  for (double x : xs) modes.push_back(es.eval_all(x));
  std::vector<double> weights(es.size());
  for (int n = 0; n < es.size(); ++n) weights[n] = riesz_weight(es.chi()[n], rc);

  std::vector<std::vector<double>> K(cfg.points, std::vector<double>(cfg.points));
  for (int i = 0; i < cfg.points; ++i)
    for (int j = 0; j < cfg.points; ++j) {
      double acc = 0.0;
      for (int n = 0; n < es.size(); ++n) acc += weights[n] * (modes[i][n] * modes[j][n]);
      K[i][j] = acc;
    }

  if (cfg.format == "csv") {
    std::string csv = "x,y,value\n";
    for (int i = 0; i < cfg.points; ++i)
      for (int j = 0; j < cfg.points; ++j)
        csv += format_number(xs[i]) + "," + format_number(xs[j]) + "," + format_number(K[i][j]) + "\n";
    emit(cfg, csv_with_config(cfg, csv), out);
  } else {
    emit(cfg, document(cfg, {{"R", R}, {"delta", cfg.delta}, {"x", xs}, {"K", K}}, {}), out);
  }
  return ExitCode::ok;
}

// -- exponents --------------------------------------------------------------

int run_exponents(const RunConfig& cfg, std::ostream& out) {
  const auto table = make_exponent_table(cfg.family, cfg.alpha, cfg.eps, cfg.allow_extended_alpha);
  json rows = json::array();
  std::string csv = "p,p_dual,gamma,gamma_dual,delta_threshold,critical\n";
  for (double p : cfg.p) {
    const double pd = dual_exponent(p);
    const double g = gamma_of(table, p);
    const Threshold t = delta_threshold(table, p);
    rows.push_back({{"p", number(p)},
                    {"p_dual", number(pd)},
                    {"gamma", g},
                    {"gamma_dual", t.gamma_dual},
                    {"delta_threshold", t.value},
                    {"critical", t.critical}});
    csv += format_number(p) + "," + format_number(pd) + "," + format_number(g) + "," +
           format_number(t.gamma_dual) + "," + format_number(t.value) + "," +
           (t.critical ? "true" : "false") + "\n";
  }
  json results = {{"rows", rows}};
  if (cfg.family == Family::gpswf) {
    results["p0"] = table.p0;
    results["p0_dual"] = table.p0_dual;
  }
  if (cfg.format == "csv") {
    emit(cfg, csv_with_config(cfg, csv), out);
  } else {
    emit(cfg, document(cfg, results, {}), out);
  }
  return ExitCode::ok;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.format != "json" && cfg.format != "csv")
    throw std::invalid_argument("--format must be json or csv");
  if (cfg.p.empty()) throw std::invalid_argument("at least one --p value is required");
  for (double p : cfg.p)
    if (!(p >= 1.0)) throw std::invalid_argument("--p values must be >= 1");
  if (!(cfg.delta > 0.0)) throw std::invalid_argument("--delta must be > 0");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("--eps must be > 0");
  if (cfg.nodes < 0) throw std::invalid_argument("--nodes must be >= 0");
  if (cfg.command != "exponents") {
    const ProlateSpec spec = spec_of(cfg);
    prolate::validate(spec);
    if (outside_theorem_range(spec) && !cfg.allow_extended_alpha)
      throw std::invalid_argument(
          "cpswf with alpha < 1/2 lies outside the theorem range; pass --allow-extended-alpha");
  }
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  if (cfg.family == Family::cpswf && cfg.alpha < 0.5 && cfg.command != "exponents")
    err << "warning: cpswf alpha = " << cfg.alpha << " is outside the alpha >= 1/2 theorem range\n";
  if (cfg.command == "basis") return run_basis(cfg, out);
  if (cfg.command == "verify") return run_verify(cfg, out);
  if (cfg.command == "sweep") return run_sweep(cfg, out);
  if (cfg.command == "kernel") return run_kernel(cfg, out);
  if (cfg.command == "exponents") return run_exponents(cfg, out);
  throw std::invalid_argument("unknown command '" + cfg.command + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prolate spheroidal bases and Bochner-Riesz summation diagnostics"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string family = "gpswf";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--family", family, "gpswf | cpswf")->check(CLI::IsMember({"gpswf", "cpswf"}));
    sub->add_option("--alpha", cfg.alpha, "weight / Bessel order parameter");
    sub->add_option("--c", cfg.c, "bandwidth");
    sub->add_option("--n", cfg.N, "Galerkin truncation order");
    sub->add_option("--keep", cfg.keep_fraction, "fraction of eigenpairs retained");
    sub->add_option("--out", cfg.output, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--allow-extended-alpha", cfg.allow_extended_alpha,
                  "accept alpha outside the theorem range");
  };

  auto* basis = app.add_subcommand("basis", "solve and serialize an eigen system");
  add_common(basis);

  auto* verify = app.add_subcommand("verify", "run the structural checks");
  add_common(verify);
  verify->add_option("--delta", cfg.delta, "smoothness index for dyadic checks");
  verify->add_option("--seed", cfg.seed, "seed for random probe points");

  auto* sweep = app.add_subcommand("sweep", "convergence of Riesz means over an R grid");
  add_common(sweep);
  sweep->add_option("--p", cfg.p, "L^p exponents")->delimiter(',');
  sweep->add_option("--delta", cfg.delta, "smoothness index");
  sweep->add_option("--r-start", cfg.r_start, "first R of the geometric grid");
  sweep->add_option("--r-stop", cfg.r_stop, "last R of the geometric grid");
  sweep->add_option("--r-count", cfg.r_count, "points in the geometric grid");
  sweep->add_option("--r-modes", cfg.r_modes, "use R = chi_n for these n instead")->delimiter(',');
  sweep->add_option("--function", cfg.function, "exp | x2 | abs | step | phi0");
  sweep->add_option("--nodes", cfg.nodes, "quadrature size");

  auto* kernel = app.add_subcommand("kernel", "tabulate the Riesz kernel");
  add_common(kernel);
  kernel->add_option("--delta", cfg.delta, "smoothness index");
  kernel->add_option("--r", cfg.r_start, "summation radius");
  kernel->add_option("--r-modes", cfg.r_modes, "use R = chi_n instead")->delimiter(',');
  kernel->add_option("--points", cfg.points, "grid points per axis");

  auto* exponents = app.add_subcommand("exponents", "critical exponent tables");
  add_common(exponents);
  exponents->add_option("--p", cfg.p, "exponents (inf allowed)")->delimiter(',');
  exponents->add_option("--eps", cfg.eps, "value taken at the critical exponent");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : ExitCode::usage;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    cfg.family = parse_family(family);
    return run(cfg, out, err);
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return ExitCode::numerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::usage;
  }
}

}  // namespace prolate::cli
