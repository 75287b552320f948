#pragma once
#include <string>
#include <vector>

#include "srh/dynamics.hpp"
#include "srh/field.hpp"

namespace srh {

struct InitialData {
  std::string kind = "gaussian";  // gaussian | file
  double amplitude = 0.1;
  double width = 1.0;
  std::string path;  // BSFS file for kind = file
};

struct ScatteringConfig {
  bool enabled = false;
  double alpha = 1.0 / 300.0;
  double weight_w = 10.0;  // weight in the supdiff monitor
  std::vector<double> snapshot_times;
  double probe_xi = 0.6;  // target |xi| for the naive drift probe
};

struct LindecayConfig {
  std::string mode = "decay";  // decay | kernel
  double t_lo = 5.0, t_hi = 80.0;
  int points = 25;
  std::vector<int> ls = {2, 3, 4, 5, 6, 7, 8};
  std::vector<double> xs = {1.0, 4.0, 16.0};
};

struct DiagnosticsConfig {
  int sobolev_order = 8;
  double weight_w = 10.0;
};

struct OutputConfig {
  std::string dir;
  bool csv = true;
  bool snapshots = false;
};

struct RunConfig {
  GridSpec grid;
  bool has_grid = false;
  EvolutionParams evolution;
  InitialData initial;
  ScatteringConfig scattering;
  LindecayConfig lindecay;
  DiagnosticsConfig diagnostics;
  OutputConfig outputs;
  long seed = 0;
};

// Minimal sectioned key=value format: [section] headers, # comments, one
// key = value per line. Unknown sections/keys and duplicate keys are errors
// carrying line context; range violations name the key and its constraint.
RunConfig parse_config(const std::string& text);

// Shipped presets, embedded in the binary (mirrored under presets/).
std::string preset_text(const std::string& name);
std::vector<std::string> preset_names();

// Gaussian amplitude*exp(-|x|^2/(2 width^2)) on the configured grid, or a
// BSFS file load for kind = file.
SpectralField build_initial_data(const RunConfig& cfg);

}  // namespace srh
