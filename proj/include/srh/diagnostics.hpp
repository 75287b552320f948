#pragma once
#include <utility>
#include <vector>

#include "srh/dynamics.hpp"

namespace srh {

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0;          // ||u||_{L2}
  double energy = 0.0;
  double linf_u = 0.0;        // sup_x |u|
  double sobolev_hN = 0.0;    // ||u||_{H^N}, N configurable
  double weight1_h2 = 0.0;    // ||<x> f||_{H^2} of the profile
  double weight2_h2 = 0.0;    // ||<x>^2 f||_{H^2}
  double fourier_sup = 0.0;   // sup (1+|xi|)^w |fhat|, w configurable
  double fourier_sup_w4 = 0.0;  // same with w = 4, always recorded
  double xnorm = 0.0;         // the time-weighted norm combination at this t
};

double mass(const SpectralField& u);  // either space
double energy(const SpectralField& u, double gamma, double lambda);  // physical space

// (||<x> f||_{H^2}, ||<x>^2 f||_{H^2}) of a physical-space profile.
std::pair<double, double> weighted_profile_norms(const SpectralField& f);

double fourier_weighted_sup(const SpectralField& fhat, double w);

double sobolev_norm(const SpectralField& u, int order);  // either space

DiagnosticsRecord make_record(const TrajectorySample& sample,
                              const EvolutionParams& p, int sobolev_order = 8,
                              double w = 10.0, double p0 = 1e-3);

// sup over records of the (1+t)^{-p0}-weighted combination; p0 = 0 gives the
// plain sup of the per-record combinations.
double xt_norm(const std::vector<DiagnosticsRecord>& records, double p0 = 1e-3);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms of fit residuals
  double r2 = 0.0;
};

// Unweighted least squares y = slope*x + intercept.
FitResult fit_line(const std::vector<std::pair<double, double>>& xy);

// Least-squares line on (log t, log value) restricted to t in [t_lo, t_hi].
// Requires >= 5 points in the window, all values > 0.
FitResult decay_rate_fit(const std::vector<std::pair<double, double>>& series,
                         double t_lo, double t_hi);

}  // namespace srh
