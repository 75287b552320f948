#pragma once
#include <array>

#include "srh/field.hpp"

namespace srh {

// Smooth even bump: 1 on [-5/4, 5/4], 0 outside (-8/5, 8/5), C-infinity
// mollifier smoothstep in between. Evaluated from a 16384-cell table with
// 4-point cubic interpolation; table error stays below 1e-10.
double base_cutoff(double s);

// Direct quadrature of the same smoothstep, no table. Certifies base_cutoff.
double base_cutoff_exact(double s);

// Dyadic ring cutoffs phi_k(x) = phi(|x|/2^k) - phi(|x|/2^{k-1}), their
// telescoped sums over k in [a,b], and the floored family that replaces the
// k = m member by the full ball cutoff phi(|x|/2^m).
double phi_k(double r, int k);
double phi_k(const std::array<double, 3>& x, int k);
double phi_interval(double r, int a, int b);
double phi_k_floor(double r, int k, int m);  // requires m <= k

// Littlewood-Paley projection: mode-wise multiply by phi_k(|xi|).
SpectralField project_band(const SpectralField& f, int k);

}  // namespace srh
