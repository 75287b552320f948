#pragma once
#include <complex>
#include <vector>

#include "srh/grid.hpp"

namespace srh {

// A complex field on a grid, tagged by the space it lives in. Radial3D
// Fourier-space data stores rho*uhat(rho)/(4pi) so that the physical/Fourier
// map is exactly a discrete sine transform of r*u(r).
struct SpectralField {
  GridSpec grid;
  Space space = Space::Physical;
  std::vector<std::complex<double>> data;

  static SpectralField zeros(const GridSpec& g, Space s);

  void require_space(Space s, const char* where) const;
  void require_same_grid(const SpectralField& other, const char* where) const;
};

// Real Fourier multiplier over a grid's mode set.
struct Multiplier {
  GridSpec grid;
  std::vector<double> values;
};

// f.data[i] *= m.values[i]; Fourier space only.
void apply_multiplier(SpectralField& f, const Multiplier& m);

// Quadrature weights making sum(w[i] * |data[i]|^2) equal ||u||_{L2}^2 in
// either space (the Fourier-side weights absorb the (2pi)^{-3} of the
// inversion formula, so the two spaces of one field give the same value).
std::vector<double> l2_weights(const GridSpec& g, Space space);

double l2_norm_sq(const SpectralField& f);

}  // namespace srh
