#pragma once
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "srh/config.hpp"
#include "srh/diagnostics.hpp"
#include "srh/lindecay.hpp"
#include "srh/scattering.hpp"

namespace srh {

// FNV-1a 64-bit digest; used for the config hash and per-file content
// hashes in the run manifest.
std::uint64_t fnv1a64(std::string_view bytes);

struct SimulateResult {
  std::vector<DiagnosticsRecord> records;
  std::vector<std::string> files;
};

SimulateResult run_simulate(const RunConfig& cfg);

struct ScatteringResult {
  bool corrected = false;  // true for the gamma = 1 B-corrected monitor
  MonitorResult monitor;   // supdiff rows (corrected) or weighted-L2 rows
  DriftResult drift;       // naive phase drift at the probe mode
  double probe_rho = 0.0;
  double predicted_slope = 0.0;  // late-time (s+1) * density / phi_s at the probe
  std::vector<PairRow> b_consistency;  // Delta B over [t1,t2] vs log(t2/t1) * prediction
  std::vector<std::string> files;
};

ScatteringResult run_scattering(const RunConfig& cfg);

struct KernelRow {
  double radius = 0.0;
  int l = 0;
  double value = 0.0;
  double normalized_error = 0.0;  // |value - 2pi^2/radius| * radius^2 * 2^l
};

struct LindecayResult {
  std::vector<DecayCheckRow> decay_rows;
  FitResult decay_fit;
  std::vector<KernelRow> kernel_rows;
  std::vector<std::string> files;
};

LindecayResult run_lindecay(const RunConfig& cfg);

// The full oracle cross-check battery on fixed seeds; logs one line per
// check, returns false when any disagrees.
bool run_oracle_suite(long seed, std::ostream& log);

// CLI entry: subcommands simulate | scattering | lindecay | oracle.
// Exit codes: 0 ok, 2 config error, 3 invariant violation, 4 diverged run.
int cli_main(int argc, char** argv);

}  // namespace srh
