#pragma once
#include "srh/field.hpp"

namespace srh {

// Discrete realization of F g(xi) = Int e^{-i x.xi} g dx with inverse carrying
// (2pi)^{-3}. Radial3D goes through w(r) = r*u(r) and a DST-I; Periodic3D is
// a plain 3D DFT scaled by the cell volume. forward then inverse reproduces
// the input to 1e-12 relative.
SpectralField forward_transform(const SpectralField& f);
SpectralField inverse_transform(const SpectralField& f);

// Multiply each mode by e^{-i t Lambda(xi)}, Lambda = sqrt(1+|xi|^2): the
// solution propagator. The profile map f = e^{+itLambda}u is apply(-t).
void linear_propagator_apply(SpectralField& f, double t);

}  // namespace srh
