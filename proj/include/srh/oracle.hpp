#pragma once
#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "srh/field.hpp"

// Brute-force references certifying the fast paths on tiny instances.
// Nothing here is optimized and nothing here may ever call a fast path.
namespace srh::oracle {

// (1/4pi) Int_{S^2} |a - b w|^{-1} dS(w) by adaptive polar quadrature
// (the integrand is axially symmetric about a). Closed form: 1/max(|a|,b).
double spherical_average(const std::array<double, 3>& a, double b);

// O(N^2) periodic convolution with the gauge-fixed Riesz kernel, the kernel
// column tabulated by direct summation of its Fourier series (zero mode 0).
// Guard: n <= 24.
std::vector<double> direct_convolution(const std::vector<double>& density,
                                       const GridSpec& g, double gamma);

// The Fourier-space Duhamel integrand at one mode by the direct double
// lattice sum over (eta, sigma) with wrapped mode arithmetic, eta = 0
// dropped (gauge). Guard: n <= 8.
std::complex<double> direct_duhamel(const SpectralField& fhat, double s,
                                    std::size_t mode_index, double gamma = 1.0);

struct LeadingTerm {
  std::complex<double> restricted{};  // small-eta piece of the integrand
  std::complex<double> asymptotic{};  // i c0/(s+1) * (angular average) * fhat(xi)
  double difference = 0.0;
  bool regime_ok = true;  // |xi| inside the cutoff's unit region for this s
};

// Lattice route: direct_duhamel restricted to |eta| <= (8/5)*eta_scale by the
// smooth cutoff, against the leading-term closed form. Guard: n <= 8.
LeadingTerm leading_term_check(const SpectralField& fhat, double s,
                               std::size_t mode_index, double eta_scale);

// Continuum route for radial profiles at xi = 0: the same restricted integral
// evaluated by tensor Gauss-Legendre quadrature in (|eta|, |sigma|, cos angle),
// free of lattice aliasing, usable at large s. fhat maps |xi| to the profile;
// sigma_max bounds its support.
LeadingTerm leading_term_check_radial(
    const std::function<std::complex<double>(double)>& fhat, double s,
    double eta_scale, double sigma_max, int nodes = 96);

}  // namespace srh::oracle
