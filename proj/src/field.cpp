#include "srh/field.hpp"

#include <cmath>
#include <string>

#include "srh/errors.hpp"
#include "srh/kernels.hpp"

namespace srh {
namespace {
constexpr double pi = 3.14159265358979323846;
}

SpectralField SpectralField::zeros(const GridSpec& g, Space s) {
  g.validate();
  SpectralField f;
  f.grid = g;
  f.space = s;
  f.data.assign(g.size(), {0.0, 0.0});
  return f;
}

void SpectralField::require_space(Space s, const char* where) const {
  if (space != s)
    throw contract_error(std::string(where) + ": field is in " +
                         (space == Space::Physical ? "physical" : "Fourier") +
                         " space");
  if (data.size() != grid.size())
    throw contract_error(std::string(where) + ": data length does not match grid");
}

void SpectralField::require_same_grid(const SpectralField& other,
                                      const char* where) const {
  if (!(grid == other.grid))
    throw contract_error(std::string(where) + ": grid mismatch");
}

void apply_multiplier(SpectralField& f, const Multiplier& m) {
  f.require_space(Space::Fourier, "apply_multiplier");
  if (!(f.grid == m.grid) || m.values.size() != f.data.size())
    throw contract_error("apply_multiplier: multiplier grid mismatch");
  kernels::multiply_real(f.data, m.values);
}

std::vector<double> l2_weights(const GridSpec& g, Space space) {
  g.validate();
  std::vector<double> w(g.size());
  if (g.kind == GridKind::Radial3D) {
    if (space == Space::Physical) {
      const double h = g.dr();
      for (std::size_t i = 0; i < w.size(); ++i) {
        const double r = g.radial_r(i);
        w[i] = 4.0 * pi * r * r * h;
      }
    } else {
      const double c = 8.0 * g.drho();
      for (double& v : w) v = c;
    }
    // The boundary/null slot is outside the representable subspace; weighting
    // it zero keeps Plancherel exact even if a caller left dust there.
    w.back() = 0.0;
  } else {
    const double h = g.dx();
    const double c = space == Space::Physical ? h * h * h
                                              : 1.0 / (g.extent * g.extent * g.extent);
    for (double& v : w) v = c;
  }
  return w;
}

double l2_norm_sq(const SpectralField& f) {
  if (f.data.size() != f.grid.size())
    throw contract_error("l2_norm_sq: data length does not match grid");
  const auto w = l2_weights(f.grid, f.space);
  return kernels::weighted_norm_sq(f.data, w);
}

}  // namespace srh
