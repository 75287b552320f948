#include "srh/symbols.hpp"

#include <cmath>
#include <string>

#include "srh/errors.hpp"
#include "srh/transforms.hpp"

namespace srh {
namespace {
constexpr double pi = 3.14159265358979323846;
}

Multiplier lambda_multiplier(const GridSpec& g) {
  g.validate();
  Multiplier m{g, std::vector<double>(g.size())};
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const double r = g.mode_radius(i);
    m.values[i] = std::sqrt(1.0 + r * r);
  }
  return m;
}

double riesz_constant(double gamma) {
  if (!(gamma > 0.0 && gamma < 3.0))
    throw contract_error("riesz_constant: gamma must lie in (0,3), got " +
                         std::to_string(gamma));
  return std::pow(2.0, 3.0 - gamma) * std::pow(pi, 1.5) *
         std::tgamma((3.0 - gamma) / 2.0) / std::tgamma(gamma / 2.0);
}

Multiplier riesz_symbol(const GridSpec& g, double gamma) {
  g.validate();
  if (g.kind != GridKind::Periodic3D)
    throw contract_error(
        "riesz_symbol: Periodic3D only; radial grids use the convolution routes");
  const double c = riesz_constant(gamma);
  Multiplier m{g, std::vector<double>(g.size())};
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const double r = g.mode_radius(i);
    m.values[i] = r == 0.0 ? 0.0 : c * std::pow(r, gamma - 3.0);
  }
  return m;
}

Multiplier dealias_mask(const GridSpec& g) {
  g.validate();
  if (g.kind != GridKind::Periodic3D)
    throw contract_error("dealias_mask: Periodic3D only");
  Multiplier m{g, std::vector<double>(g.size())};
  const long long cap = (long long)g.n * g.n;  // compare 9|k|^2 < n^2
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const auto k = g.mode_ints(i);
    const long long k2 =
        (long long)k[0] * k[0] + (long long)k[1] * k[1] + (long long)k[2] * k[2];
    m.values[i] = 9 * k2 < cap ? 1.0 : 0.0;
  }
  return m;
}

std::vector<double> newton_radial_convolution(const std::vector<double>& density,
                                              const GridSpec& g) {
  g.validate();
  if (g.kind != GridKind::Radial3D)
    throw contract_error("newton_radial_convolution: radial grids only");
  if (density.size() != g.size())
    throw contract_error("newton_radial_convolution: density length mismatch");
  const std::size_t n = g.size();
  const double h = g.dr();
  // inner(r_j) = Int_0^{r_j} s^2 rho ds, cumulative trapezoid from s = 0
  // (the s^2 factor zeroes the origin node exactly).
  std::vector<double> inner(n), outer(n);
  double acc = 0.5 * h * (0.0 + g.radial_r(0) * g.radial_r(0) * density[0]);
  inner[0] = acc;
  for (std::size_t j = 1; j < n; ++j) {
    const double a = g.radial_r(j - 1), b = g.radial_r(j);
    acc += 0.5 * h * (a * a * density[j - 1] + b * b * density[j]);
    inner[j] = acc;
  }
  // outer(r_j) = Int_{r_j}^{rmax} s rho ds, cumulative from the boundary.
  outer[n - 1] = 0.0;
  for (std::size_t j = n - 1; j-- > 0;) {
    const double a = g.radial_r(j), b = g.radial_r(j + 1);
    outer[j] = outer[j + 1] +
               0.5 * h * (a * density[j] + b * density[j + 1]);
  }
  std::vector<double> pot(n);
  for (std::size_t j = 0; j < n; ++j)
    pot[j] = 4.0 * pi * (inner[j] / g.radial_r(j) + outer[j]);
  return pot;
}

std::vector<double> radial_convolution(const std::vector<double>& density,
                                       const GridSpec& g, double gamma) {
  g.validate();
  if (g.kind != GridKind::Radial3D)
    throw contract_error("radial_convolution: radial grids only");
  if (density.size() != g.size())
    throw contract_error("radial_convolution: density length mismatch");
  const double c = riesz_constant(gamma);
  SpectralField f = SpectralField::zeros(g, Space::Physical);
  for (std::size_t i = 0; i < density.size(); ++i) f.data[i] = density[i];
  SpectralField fh = forward_transform(f);
  for (std::size_t i = 0; i < fh.data.size(); ++i)
    fh.data[i] *= c * std::pow(g.radial_rho(i), gamma - 3.0);
  SpectralField pot = inverse_transform(fh);
  std::vector<double> out(density.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = pot.data[i].real();
  return out;
}

}  // namespace srh
