#include "srh/grid.hpp"

#include <cmath>
#include <string>

#include "srh/errors.hpp"

namespace srh {
namespace {
constexpr double pi = 3.14159265358979323846;
}

void GridSpec::validate() const {
  // Acceptance runs the Duhamel oracle on 8^3, so 8 is the floor.
  if (n < 8 || (n & (n - 1)) != 0)
    throw contract_error("GridSpec: n must be a power of two >= 8, got " +
                         std::to_string(n));
  if (!(extent > 0.0))
    throw contract_error("GridSpec: extent must be positive");
  if (dealias && kind == GridKind::Radial3D)
    throw contract_error("GridSpec: dealiasing applies to Periodic3D only");
}

std::size_t GridSpec::size() const {
  const std::size_t m = (std::size_t)n;
  return kind == GridKind::Radial3D ? m : m * m * m;
}

double GridSpec::radial_r(std::size_t i) const {
  return (double)(i + 1) * extent / n;
}

double GridSpec::radial_rho(std::size_t i) const {
  return (double)(i + 1) * pi / extent;
}

double GridSpec::dr() const { return extent / n; }
double GridSpec::drho() const { return pi / extent; }

std::array<int, 3> GridSpec::mode_ints(std::size_t idx) const {
  const int nn = n;
  int a = (int)(idx / ((std::size_t)nn * nn));
  int b = (int)((idx / nn) % nn);
  int c = (int)(idx % nn);
  const auto wrap = [nn](int v) { return v < nn / 2 ? v : v - nn; };
  return {wrap(a), wrap(b), wrap(c)};
}

std::array<double, 3> GridSpec::mode_vec(std::size_t idx) const {
  const auto k = mode_ints(idx);
  const double d = 2.0 * pi / extent;
  return {d * k[0], d * k[1], d * k[2]};
}

std::array<double, 3> GridSpec::point(std::size_t idx) const {
  const int nn = n;
  const double h = dx();
  return {h * (double)(idx / ((std::size_t)nn * nn)),
          h * (double)((idx / nn) % nn), h * (double)(idx % nn)};
}

double GridSpec::min_image_radius(std::size_t idx) const {
  const auto p = point(idx);
  double s = 0.0;
  for (double c : p) {
    if (c > 0.5 * extent) c -= extent;
    s += c * c;
  }
  return std::sqrt(s);
}

double GridSpec::dx() const { return extent / n; }

double GridSpec::mode_cell() const {
  const double d = 2.0 * pi / extent;
  return d * d * d;
}

double GridSpec::mode_radius(std::size_t idx) const {
  if (kind == GridKind::Radial3D) return radial_rho(idx);
  const auto k = mode_ints(idx);
  const double d = 2.0 * pi / extent;
  return d * std::sqrt((double)(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]));
}

}  // namespace srh
