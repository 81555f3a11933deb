#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "prolate/prolate.hpp"

namespace prolate::cli {

enum ExitCode : int { ok = 0, usage = 1, check_failed = 2, numerical = 3 };

struct RunConfig {
  std::string command;
  Family family = Family::gpswf;
  double alpha = 0.0;
  double c = 1.0;
  int N = 128;
  double keep_fraction = 0.5;
  std::vector<double> p{2.0};
  double delta = 1.0;
  // Geometric R grid, or eigenvalue indices when r_modes is non-empty.
  double r_start = 10.0;
  double r_stop = 1000.0;
  int r_count = 8;
  std::vector<int> r_modes;
  std::string function = "exp";
  int nodes = 0;    // quadrature size; 0 picks max(2N, 512)
  int points = 33;  // kernel tabulation grid
  double eps = 0.01;
  bool allow_extended_alpha = false;
  std::string output;  // empty: stdout
  std::string format = "json";
  std::uint64_t seed = 12345;
};

// Throws std::invalid_argument on inconsistent settings.
void validate(const RunConfig& cfg);

// Executes one resolved command, writing the artifact to cfg.output or `out`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (CLI11) and runs; maps exceptions onto exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace prolate::cli
