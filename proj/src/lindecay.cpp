#include "srh/lindecay.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "srh/cutoffs.hpp"
#include "srh/errors.hpp"
#include "srh/kernels.hpp"
#include "srh/quadrature.hpp"
#include "srh/transforms.hpp"

namespace srh {

namespace {

constexpr double pi = 3.14159265358979323846;

// same propagation rule as evolve: group speeds stay below 1, so data may
// not reach r_max within the requested horizon
void check_radial_reach(const SpectralField& u0_phys, double t) {
  const GridSpec& g = u0_phys.grid;
  double r_data = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(u0_phys.data[i]) >= 1e-12) r_data = g.radial_r(i);
  if (g.extent < r_data + t + 10.0)
    throw invariant_error(
        "dispersive_sup: radial domain too small for the propagation rule, "
        "need extent >= " +
        std::to_string(r_data + t + 10.0) + ", have " +
        std::to_string(g.extent));
}

}  // namespace

double dispersive_sup(const SpectralField& u0, double t) {
  if (!(t >= 0.0)) throw contract_error("dispersive_sup: need t >= 0");
  u0.grid.validate();
  const bool from_physical = u0.space == Space::Physical;
  SpectralField phys = from_physical ? u0 : inverse_transform(u0);
  if (u0.grid.kind == GridKind::Radial3D) check_radial_reach(phys, t);
  SpectralField fh = from_physical ? forward_transform(phys) : u0;
  linear_propagator_apply(fh, t);
  return kernels::sup_abs(inverse_transform(fh).data);
}

std::vector<DecayCheckRow> decay_bound_check(const SpectralField& u0,
                                             const std::vector<double>& times) {
  if (times.empty()) throw contract_error("decay_bound_check: no times given");
  u0.grid.validate();
  SpectralField phys =
      u0.space == Space::Physical ? u0 : inverse_transform(u0);
  SpectralField fh = u0.space == Space::Fourier ? u0 : forward_transform(u0);

  const double denom = fourier_weighted_sup(fh, 6.0);
  if (!(denom > 0.0))
    throw contract_error("decay_bound_check: initial data is identically 0");

  std::vector<double> w = l2_weights(u0.grid, Space::Physical);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double r = u0.grid.kind == GridKind::Radial3D
                         ? u0.grid.radial_r(i)
                         : u0.grid.min_image_radius(i);
    const double b2 = 1.0 + r * r;
    w[i] *= b2 * b2;
  }
  const double weighted_l2 =
      std::sqrt(kernels::weighted_norm_sq(phys.data, w));
  const double h50 = sobolev_norm(u0, 50);

  std::vector<DecayCheckRow> rows;
  rows.reserve(times.size());
  for (double t : times) {
    DecayCheckRow row;
    row.t = t;
    row.sup = dispersive_sup(phys, t);
    row.c_of_t = row.sup * std::pow(1.0 + t, 1.5) / denom;
    row.second_term = std::pow(1.0 + t, -31.0 / 20.0) * (weighted_l2 + h50);
    rows.push_back(row);
  }
  return rows;
}

std::array<double, 3> stationary_point(const std::array<double, 3>& x,
                                       double t) {
  if (!(t > 0.0)) throw contract_error("stationary_point: need t > 0");
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  if (!(r < t)) throw contract_error("stationary_point: need |x| < t");
  const double d = std::sqrt((t - r) * (t + r));
  const std::array<double, 3> xi{-x[0] / d, -x[1] / d, -x[2] / d};
  const double b =
      std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  for (int c = 0; c < 3; ++c)
    if (std::abs(xi[c] / b + x[c] / t) > 1e-12)
      throw contract_error("stationary_point: residual above 1e-12");
  return xi;
}

double truncated_riesz_kernel(double radius, int l) {
  if (!(radius > 0.0))
    throw contract_error("truncated_riesz_kernel: need radius > 0");
  if (l < -60 || l > 40)
    throw contract_error("truncated_riesz_kernel: dyadic index out of range");
  const double scale = std::ldexp(1.0, l);  // 2^l
  const double rho_max = 1.6 * scale;      // support edge of the cutoff
  const auto integrand = [&](double rho) {
    if (rho == 0.0) return radius;
    return std::sin(rho * radius) / rho * base_cutoff(rho / scale);
  };
  // one adaptive panel per sine half-period, summed with compensation
  const double half_period = pi / radius;
  double acc = 0.0, comp = 0.0;
  double lo = 0.0;
  for (long long k = 1; lo < rho_max; ++k) {
    const double hi = std::min(static_cast<double>(k) * half_period, rho_max);
    const double piece = integrate(integrand, lo, hi, 1e-13, 1e-16).value;
    const double t = acc + piece;
    if (std::abs(acc) >= std::abs(piece))
      comp += (acc - t) + piece;
    else
      comp += (piece - t) + acc;
    acc = t;
    lo = hi;
  }
  return 4.0 * pi / radius * (acc + comp);
}

}  // namespace srh
