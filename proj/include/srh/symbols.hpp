#pragma once
#include <vector>

#include "srh/field.hpp"

namespace srh {

// Lambda(xi) = sqrt(1 + |xi|^2) per mode; every value >= 1.
Multiplier lambda_multiplier(const GridSpec& g);

// c(gamma) = 2^{3-gamma} pi^{3/2} Gamma((3-gamma)/2) / Gamma(gamma/2),
// the constant in F(|x|^{-gamma})(xi) = c(gamma) |xi|^{-(3-gamma)}.
double riesz_constant(double gamma);

// Riesz potential symbol on a Periodic3D mode lattice, zero mode gauged to 0
// (subtracts the potential's spatial mean, a constant phase gauge).
Multiplier riesz_symbol(const GridSpec& g, double gamma);

// 2/3-rule spherical dealiasing mask (Periodic3D): 1 inside |k| < n/3, else 0.
Multiplier dealias_mask(const GridSpec& g);

// Free-space Coulomb potential of a radial density, O(n):
// V(r) = (4pi/r) Int_0^r s^2 rho ds + 4pi Int_r^{rmax} s rho ds
// by cumulative trapezoid sums. gamma = 1 only.
std::vector<double> newton_radial_convolution(const std::vector<double>& density,
                                              const GridSpec& g);

// General-gamma radial convolution through the sine-transform symbol route.
// Odd periodization across r_max leaves an O(extent^{gamma-3}) tail artifact;
// gamma = 1 callers want newton_radial_convolution instead.
std::vector<double> radial_convolution(const std::vector<double>& density,
                                       const GridSpec& g, double gamma);

}  // namespace srh
