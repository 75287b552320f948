#pragma once
#include <cstddef>
#include <utility>
#include <vector>

#include "srh/diagnostics.hpp"
#include "srh/dynamics.hpp"

namespace srh {

// Accumulated phase correction B(t,xi) >= 0, nondecreasing in t. The trapezoid
// rule needs the integrand at the previous accumulation time, kept inline.
struct ScatteringState {
  GridSpec grid;
  double alpha = 1.0 / 300.0;
  double c0 = 0.0;  // (2pi)^{-3}, fixed by create()
  std::vector<double> B;
  double t_last = 0.0;
  bool have_last = false;
  std::vector<double> last_density;

  static ScatteringState create(const GridSpec& g, double alpha = 1.0 / 300.0);
};

// phi(|xi| * s^{-alpha}); equals 0 at s = 0 for xi != 0.
double phi_s(double xi_radius, double s, double alpha);

// The correction integrand d(s,xi) = c0 * phi_s(xi)/(s+1) * Int |z|^{-1}
// |uhat(s,sigma)|^2 dsigma with z = xi/<xi> - sigma/<sigma>. Radial grids use
// the closed-form angular average Int_{S^2} |a - b w|^{-1} dS = 4pi/max(|a|,b);
// periodic grids sum the lattice with the sigma = xi cell replaced by its
// analytic cell average. Depends on |uhat| only, so the profile works too.
std::vector<double> correction_density(const SpectralField& uhat, double s,
                                       double alpha);
double correction_density(const SpectralField& uhat, std::size_t mode_index,
                          double s, double alpha);

// Advance B by one trapezoid panel to the sample's time. Asserts
// nonnegativity and monotonicity.
void accumulate_B(ScatteringState& st, const TrajectorySample& sample);
void accumulate_B(ScatteringState& st,
                  const std::vector<TrajectorySample>& samples);

// g = e^{-iB} fhat. The accumulated drift of arg fhat is +B, so this rotation
// freezes the phase; |g| = |fhat| per mode.
SpectralField modified_profile(const SpectralField& fhat,
                               const ScatteringState& st);

struct PairRow {
  double t1 = 0.0, t2 = 0.0, value = 0.0;
};

struct MonitorResult {
  std::vector<PairRow> rows;
  FitResult fit;  // log value against log t1
};

// sup_xi (1+|xi|)^w |g(t2) - g(t1)| over consecutive snapshot pairs, plus the
// fitted decay rate (the p1 estimate). Needs >= 3 snapshots, increasing t.
MonitorResult scattering_monitor(
    const std::vector<std::pair<double, SpectralField>>& g_snapshots, double w);

struct DriftResult {
  double slope = 0.0;      // coefficient of log t in arg fhat(t, xi*)
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<double> phases;  // unwrapped phases at the snapshot times
};

// Fit the unwrapped phase of fhat(t, xi*) against log t. Per-step rotations
// above 0.9*pi make the unwrap ambiguous and raise invariant_error.
DriftResult naive_profile_drift(
    const std::vector<std::pair<double, SpectralField>>& fhat_snapshots,
    std::size_t mode_index);

// ||f(t2) - f(t1)||_{L2(<x>^4 dx)} over consecutive pairs of physical-space
// profile snapshots, plus the fitted decay rate. The gamma > 1 monitor.
MonitorResult linear_scattering_monitor(
    const std::vector<std::pair<double, SpectralField>>& f_snapshots);

}  // namespace srh
