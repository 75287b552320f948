#pragma once
#include <functional>
#include <vector>

#include "srh/field.hpp"

namespace srh {

struct EvolutionParams {
  double gamma = 1.0;
  double lambda = -1.0;
  double dt = 0.01;
  double t_end = 1.0;
  bool dealias = false;
  int sample_every = 1;
  double blowup_factor = 10.0;  // abort when sup|u| exceeds this multiple of its initial value

  void validate() const;  // gamma in (0,3), 0 < dt <= 0.1, t_end >= dt
};

struct TrajectorySample {
  double t = 0.0;
  SpectralField profile;     // fhat(t,.) in Fourier space
  double mass = 0.0;         // ||u(t)||_{L2}
  double fourier_sup = 0.0;  // sup_xi (1+|xi|)^10 |fhat|
};

// lambda * (|x|^{-gamma} * |u|^2) u in physical space. The convolution runs
// through riesz_symbol on Periodic3D and through the Newton fast path
// (gamma = 1) or the sine-symbol route on Radial3D.
SpectralField hartree_nonlinearity(const SpectralField& u, double gamma,
                                   double lambda);

// d/ds fhat at time s: e^{+isLambda} F[ hartree(e^{-isLambda} profile) ].
// On an undealiased Periodic3D grid this equals oracle::direct_duhamel
// mode by mode up to roundoff.
SpectralField profile_rhs(const SpectralField& fhat, double s,
                          const EvolutionParams& p);

// One classical RK4 step on the profile equation.
SpectralField step_rk4(const SpectralField& fhat, double s, double dt,
                       const EvolutionParams& p);

using Observer = std::function<void(const TrajectorySample&)>;

// March u0 to t_end, sampling the profile every sample_every steps (plus the
// initial and final instants). u0 may be given in either space. Radial grids
// are validated against the propagation rule extent >= r_data + t_end + 10.
std::vector<TrajectorySample> evolve(const SpectralField& u0,
                                     const EvolutionParams& p,
                                     const std::vector<Observer>& observers = {});

}  // namespace srh
