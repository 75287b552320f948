#pragma once
#include <array>
#include <vector>

#include "srh/diagnostics.hpp"
#include "srh/field.hpp"

namespace srh {

// sup_x |e^{-itLambda} u0|. Radial grids must satisfy the propagation rule
// extent >= r_data + t + 10 (group speeds stay below 1).
double dispersive_sup(const SpectralField& u0, double t);

struct DecayCheckRow {
  double t = 0.0;
  double sup = 0.0;          // dispersive_sup at t
  double c_of_t = 0.0;       // sup * (1+t)^{3/2} / sup_xi (1+|xi|)^6 |u0hat|
  double second_term = 0.0;  // (1+t)^{-31/20} (||<x>^2 u0||_{L2} + ||u0||_{H^50})
};

std::vector<DecayCheckRow> decay_bound_check(const SpectralField& u0,
                                             const std::vector<double>& times);

// Critical point of Lambda(xi) + xi.x/t: the returned xi0 satisfies
// grad Lambda(xi0) + x/t = 0 to 1e-12. Requires |x| < t.
std::array<double, 3> stationary_point(const std::array<double, 3>& x, double t);

// Int e^{i eta.x} |eta|^{-2} phi(eta 2^{-l}) d eta, radially reduced to
// (4pi/|x|) Int_0^inf sin(rho|x|)/rho phi(rho 2^{-l}) drho and integrated
// adaptively with splits at the sine zeros. Real by symmetry; tends to
// 2pi^2/|x| as l grows.
double truncated_riesz_kernel(double radius, int l);

}  // namespace srh
