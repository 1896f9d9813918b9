#pragma once

#include "olb/integrator.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace olb {

// Everything a scenario needs, resolved from defaults, then a JSON config
// file, then command-line overrides, in that order.
struct RunConfig {
  ModelParams params;

  int N = 64;
  Real L = 1.0;

  Real h = 0.01;
  Real T = 1.0;
  Scheme scheme = Scheme::if_rk2;
  Real cfl = 0.5;
  Real blowup = 1e12;

  int stride = 10;
  std::uint64_t seed = 1;
  Real delta = 1e-3;
  int samples = 50;

  // band range for random data, clamped to the resolved shells
  int qlo = -99;
  int qhi = 99;

  std::string v_recipe = "zero";        // zero | shear | random
  std::string source_recipe = "single"; // zero | single | random

  std::string out_dir = ".";

  std::string field_file;              // norm report input
  std::vector<std::string> norm_specs; // "l2" | "besov:s[:p[:r]]" | "hybrid:s:t:q0"

  Grid grid() const { return Grid::make(params.d, N, L); }
};

// overlays the JSON file onto rc; unknown keys are rejected
void merge_config_file(RunConfig& rc, const std::string& path);

// resolved configuration as one deterministic JSON line (sorted keys),
// embedded in every output header
std::string config_summary(const RunConfig& rc);

} // namespace olb
