#include "srh/dynamics.hpp"

#include <cmath>
#include <string>

#include "srh/diagnostics.hpp"
#include "srh/errors.hpp"
#include "srh/kernels.hpp"
#include "srh/symbols.hpp"
#include "srh/transforms.hpp"

namespace srh {

void EvolutionParams::validate() const {
  if (!(gamma > 0.0 && gamma < 3.0))
    throw config_error("evolution: gamma must lie in (0,3), got " +
                       std::to_string(gamma));
  if (!(dt > 0.0 && dt <= 0.1))
    throw config_error("evolution: dt must lie in (0, 0.1], got " +
                       std::to_string(dt));
  if (!(t_end >= dt))
    throw config_error("evolution: t_end must be at least dt");
  if (!std::isfinite(lambda))
    throw config_error("evolution: lambda must be finite");
  if (sample_every < 1)
    throw config_error("evolution: sample_every must be positive");
  if (!(blowup_factor > 1.0))
    throw config_error("evolution: blowup_factor must exceed 1");
}

SpectralField hartree_nonlinearity(const SpectralField& u, double gamma,
                                   double lambda) {
  u.require_space(Space::Physical, "hartree_nonlinearity");
  const GridSpec& g = u.grid;
  const std::size_t N = g.size();

  std::vector<double> density(N);
  kernels::modulus_squared(u.data, density);

  std::vector<double> potential;
  if (g.kind == GridKind::Radial3D) {
    potential = gamma == 1.0 ? newton_radial_convolution(density, g)
                             : radial_convolution(density, g, gamma);
  } else {
    SpectralField rho = SpectralField::zeros(g, Space::Physical);
    for (std::size_t i = 0; i < N; ++i) rho.data[i] = density[i];
    SpectralField rho_hat = forward_transform(rho);
    apply_multiplier(rho_hat, riesz_symbol(g, gamma));
    SpectralField v = inverse_transform(rho_hat);
    potential.resize(N);
    for (std::size_t i = 0; i < N; ++i) potential[i] = v.data[i].real();
  }

  SpectralField out = SpectralField::zeros(g, Space::Physical);
  kernels::potential_apply(potential, u.data, lambda, out.data);
  return out;
}

SpectralField profile_rhs(const SpectralField& fhat, double s,
                          const EvolutionParams& p) {
  fhat.require_space(Space::Fourier, "profile_rhs");

  SpectralField uhat = fhat;
  linear_propagator_apply(uhat, s);  // uhat = e^{-is Lambda} fhat
  SpectralField u = inverse_transform(uhat);
  SpectralField nl = hartree_nonlinearity(u, p.gamma, p.lambda);
  SpectralField rhs = forward_transform(nl);
  linear_propagator_apply(rhs, -s);  // back to the profile frame
  kernels::scale(rhs.data, {0.0, -1.0});
  if (p.dealias && fhat.grid.kind == GridKind::Periodic3D)
    apply_multiplier(rhs, dealias_mask(fhat.grid));
  return rhs;
}

SpectralField step_rk4(const SpectralField& fhat, double s, double dt,
                       const EvolutionParams& p) {
  const SpectralField k1 = profile_rhs(fhat, s, p);
  SpectralField stage = fhat;
  kernels::linear_combine(fhat.data, dt / 2.0, k1.data, stage.data);
  const SpectralField k2 = profile_rhs(stage, s + dt / 2.0, p);
  kernels::linear_combine(fhat.data, dt / 2.0, k2.data, stage.data);
  const SpectralField k3 = profile_rhs(stage, s + dt / 2.0, p);
  kernels::linear_combine(fhat.data, dt, k3.data, stage.data);
  const SpectralField k4 = profile_rhs(stage, s + dt, p);

  SpectralField next = fhat;
  kernels::rk4_combine(next.data, k1.data, k2.data, k3.data, k4.data, dt);
  return next;
}

namespace {

TrajectorySample make_sample(double t, const SpectralField& fhat) {
  TrajectorySample s;
  s.t = t;
  s.profile = fhat;
  s.mass = mass(fhat);
  s.fourier_sup = fourier_weighted_sup(fhat, 10.0);
  return s;
}

// the propagation rule: tails reaching r_max within the run are not
// representable, so demand extent >= r_data + t_end + 10
void check_radial_domain(const SpectralField& u0_phys, double t_end) {
  const GridSpec& g = u0_phys.grid;
  double r_data = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::abs(u0_phys.data[i]) >= 1e-12) r_data = g.radial_r(i);
  if (g.extent < r_data + t_end + 10.0)
    throw invariant_error(
        "evolve: radial domain too small for the propagation rule, need "
        "extent >= " +
        std::to_string(r_data + t_end + 10.0) + ", have " +
        std::to_string(g.extent));
}

}  // namespace

std::vector<TrajectorySample> evolve(const SpectralField& u0,
                                     const EvolutionParams& p,
                                     const std::vector<Observer>& observers) {
  p.validate();
  u0.grid.validate();

  SpectralField u0_phys =
      u0.space == Space::Physical ? u0 : inverse_transform(u0);
  if (u0.grid.kind == GridKind::Radial3D) check_radial_domain(u0_phys, p.t_end);
  const double sup0 = kernels::sup_abs(u0_phys.data);
  if (sup0 == 0.0) throw config_error("evolve: initial data is identically 0");

  SpectralField fhat =
      u0.space == Space::Fourier ? u0 : forward_transform(u0_phys);
  if (p.dealias) {
    if (u0.grid.kind != GridKind::Periodic3D)
      throw config_error("evolve: dealiasing applies to Periodic3D only");
    apply_multiplier(fhat, dealias_mask(fhat.grid));
  }

  const double steps_exact = p.t_end / p.dt;
  const long long n_steps = std::llround(steps_exact);
  if (n_steps < 1 || std::abs(steps_exact - static_cast<double>(n_steps)) >
                         1e-8 * std::max(1.0, steps_exact))
    throw config_error("evolve: t_end must be an integer multiple of dt");

  std::vector<TrajectorySample> samples;
  auto emit = [&](double t) {
    if (!kernels::all_finite(fhat.data)) throw diverged_error("evolve: field not finite or above the blow-up guard", t);
    SpectralField uhat = fhat;
    linear_propagator_apply(uhat, t);
    SpectralField u = inverse_transform(uhat);
    const double sup = kernels::sup_abs(u.data);
    if (!(sup <= p.blowup_factor * sup0)) throw diverged_error("evolve: field not finite or above the blow-up guard", t);
    samples.push_back(make_sample(t, fhat));
    for (const auto& obs : observers) obs(samples.back());
  };

  emit(0.0);
  for (long long step = 1; step <= n_steps; ++step) {
    const double s = static_cast<double>(step - 1) * p.dt;
    fhat = step_rk4(fhat, s, p.dt, p);
    if (!kernels::all_finite(fhat.data))
      throw diverged_error("evolve: field not finite after step", static_cast<double>(step) * p.dt);
    if (step % p.sample_every == 0 || step == n_steps)
      emit(static_cast<double>(step) * p.dt);
  }
  return samples;
}

}  // namespace srh
