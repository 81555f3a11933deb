#pragma once

#include <string>

#include <json.hpp>

#include "prolate/analysis.hpp"
#include "prolate/prolate.hpp"

namespace prolate {

// printf("%.17g"); enough digits to round-trip any double.
std::string format_number(double v);

nlohmann::json to_json(const ProlateSpec& spec);

// {family, alpha, c, N, keep_fraction, chi: [...], coeffs: [[...], ...]}
// with one coefficient array per retained mode.
nlohmann::json to_json(const EigenSystem& es);
EigenSystem eigen_system_from_json(const nlohmann::json& j);

// n,chi,lower_bound,upper_bound
std::string to_csv(const EigenSystem& es);

nlohmann::json to_json(const ConvergenceReport& rep);
// R,error,weight_count,slope_so_far
std::string to_csv(const ConvergenceReport& rep);

}  // namespace prolate
