#include "prolate/io.hpp"

#include <cmath>
#include <cstdio>

namespace prolate {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json to_json(const ProlateSpec& spec) {
  return {{"family", std::string(to_string(spec.family))},
          {"alpha", spec.alpha},
          {"c", spec.c},
          {"N", spec.N},
          {"keep_fraction", spec.keep_fraction}};
}

nlohmann::json to_json(const EigenSystem& es) {
  nlohmann::json j = to_json(es.spec());
  j["chi"] = es.chi();
  nlohmann::json cols = nlohmann::json::array();
  for (int n = 0; n < es.size(); ++n) cols.push_back(es.coeffs().column(n));
  j["coeffs"] = std::move(cols);
  if (es.extended_alpha()) j["extended_alpha"] = true;
  return j;
}

EigenSystem eigen_system_from_json(const nlohmann::json& j) {
  ProlateSpec spec;
  spec.family = parse_family(j.at("family").get<std::string>());
  spec.alpha = j.at("alpha").get<double>();
  spec.c = j.at("c").get<double>();
  spec.N = j.at("N").get<int>();
  spec.keep_fraction = j.value("keep_fraction", 0.5);
  validate(spec);
  auto chi = j.at("chi").get<std::vector<double>>();
  const auto& cols = j.at("coeffs");
  if (cols.size() != chi.size()) throw std::invalid_argument("eigen system JSON: coeffs/chi mismatch");
  Matrix coeffs(spec.N, chi.size());
  for (std::size_t n = 0; n < cols.size(); ++n) {
    const auto col = cols[n].get<std::vector<double>>();
    if (col.size() != static_cast<std::size_t>(spec.N))
      throw std::invalid_argument("eigen system JSON: coefficient column has wrong length");
    for (int k = 0; k < spec.N; ++k) coeffs(k, n) = col[k];
  }
  std::vector<int> parity;
  if (spec.family == Family::gpswf)
    for (std::size_t n = 0; n < chi.size(); ++n) parity.push_back(static_cast<int>(n % 2));
  return EigenSystem(spec, std::move(chi), std::move(coeffs), std::move(parity));
}

std::string to_csv(const EigenSystem& es) {
  const auto bounds = check_bounds(es);
  std::string out = "n,chi,lower_bound,upper_bound\n";
  for (int n = 0; n < es.size(); ++n) {
    out += std::to_string(n) + "," + format_number(es.chi()[n]) + "," +
           format_number(bounds.lower[n]) + "," + format_number(bounds.upper[n]) + "\n";
  }
  return out;
}

nlohmann::json to_json(const ConvergenceReport& rep) {
  nlohmann::json j = {{"family", std::string(to_string(rep.family))},
                      {"alpha", rep.alpha},
                      {"c", rep.c},
                      {"N", rep.N},
                      {"p", rep.p},
                      {"delta", rep.delta},
                      {"threshold", rep.threshold},
                      {"critical_exponent", rep.critical_exponent},
                      {"R", rep.R},
                      {"errors", rep.errors},
                      {"weight_counts", rep.weight_counts},
                      {"slopes_so_far", rep.slopes_so_far},
                      {"slope", rep.slope},
                      {"strictly_decreasing", rep.strictly_decreasing},
                      {"above_threshold", rep.above_threshold}};
  if (!rep.parseval_errors.empty()) j["parseval_errors"] = rep.parseval_errors;
  j["pass"] = rep.pass ? nlohmann::json(*rep.pass) : nlohmann::json(nullptr);
  return j;
}

std::string to_csv(const ConvergenceReport& rep) {
  std::string out = "R,error,weight_count,slope_so_far\n";
  for (std::size_t i = 0; i < rep.R.size(); ++i) {
    out += format_number(rep.R[i]) + "," + format_number(rep.errors[i]) + "," +
           std::to_string(rep.weight_counts[i]) + "," + format_number(rep.slopes_so_far[i]) + "\n";
  }
  return out;
}

}  // namespace prolate
