#include <doctest.h>

#include <cmath>
#include <vector>

#include "srh/errors.hpp"
#include "srh/quadrature.hpp"
#include "srh/symbols.hpp"

using namespace srh;

namespace {
constexpr double pi = 3.14159265358979323846;
}

TEST_SUITE("symbols") {

TEST_CASE("dispersion multiplier takes known values on an integer lattice") {
  GridSpec g{GridKind::Periodic3D, 8, 2.0 * pi, false};
  Multiplier lam = lambda_multiplier(g);
  CHECK(lam.values[0] == doctest::Approx(1.0).epsilon(1e-15));
  const std::size_t i111 = (1 * 8 + 1) * 8 + 1;
  CHECK(lam.values[i111] == doctest::Approx(2.0).epsilon(1e-15));
  const std::size_t i004 = 4;  // wraps to k = (0,0,-4)
  CHECK(lam.values[i004] == doctest::Approx(std::sqrt(17.0)).epsilon(1e-15));
  for (double v : lam.values) CHECK(v >= 1.0);

  GridSpec rad{GridKind::Radial3D, 32, 8.0, false};
  Multiplier lr = lambda_multiplier(rad);
  for (std::size_t i = 0; i < lr.values.size(); ++i) {
    const double rho = rad.radial_rho(i);
    CHECK(lr.values[i] ==
          doctest::Approx(std::sqrt(1.0 + rho * rho)).epsilon(1e-15));
  }
}

TEST_CASE("riesz constant matches closed forms and rejects bad exponents") {
  CHECK(riesz_constant(1.0) == doctest::Approx(4.0 * pi).epsilon(1e-14));
  CHECK(riesz_constant(2.0) ==
        doctest::Approx(2.0 * pi * pi).epsilon(1e-14));
  CHECK_THROWS_AS(riesz_constant(0.0), contract_error);
  CHECK_THROWS_AS(riesz_constant(3.0), contract_error);
}

TEST_CASE("riesz symbol is gauged, radial, and decreasing in |xi|") {
  GridSpec g{GridKind::Periodic3D, 16, 2.0 * pi, false};
  Multiplier s1 = riesz_symbol(g, 1.0);
  CHECK(s1.values[0] == 0.0);
  const std::size_t i002 = 2;  // k = (0,0,2), |xi| = 2
  CHECK(s1.values[i002] == doctest::Approx(pi).epsilon(1e-14));
  const std::size_t i020 = 2 * 16;
  CHECK(s1.values[i020] == doctest::Approx(s1.values[i002]).epsilon(1e-15));
  const std::size_t i001 = 1;
  CHECK(s1.values[i001] > s1.values[i002]);
  for (double v : s1.values) CHECK(v >= 0.0);

  Multiplier s2 = riesz_symbol(g, 2.0);
  CHECK(s2.values[i001] == doctest::Approx(2.0 * pi * pi).epsilon(1e-14));

  GridSpec rad{GridKind::Radial3D, 16, 4.0, false};
  CHECK_THROWS_AS(riesz_symbol(rad, 1.0), contract_error);
}

TEST_CASE("dealiasing mask implements the spherical two-thirds rule") {
  GridSpec g{GridKind::Periodic3D, 16, 10.0, false};
  Multiplier m = dealias_mask(g);
  auto at = [&](int a, int b, int c) {
    auto wrap = [](int v) { return v < 0 ? v + 16 : v; };
    return m.values[(static_cast<std::size_t>(wrap(a)) * 16 + wrap(b)) * 16 +
                    wrap(c)];
  };
  CHECK(at(0, 0, 0) == 1.0);
  CHECK(at(5, 1, 1) == 1.0);   // |k|^2 = 27, inside
  CHECK(at(5, 2, 0) == 0.0);   // |k|^2 = 29, outside
  CHECK(at(0, 0, 5) == 1.0);
  CHECK(at(0, 0, -6) == 0.0);
  CHECK(at(3, 3, 3) == 1.0);   // |k|^2 = 27
  CHECK(at(-8, 0, 0) == 0.0);  // Nyquist column
  for (double v : m.values) CHECK((v == 0.0 || v == 1.0));

  GridSpec rad{GridKind::Radial3D, 16, 4.0, false};
  CHECK_THROWS_AS(dealias_mask(rad), contract_error);
}

TEST_CASE("newton potential of a uniform ball matches the closed form") {
  GridSpec g{GridKind::Radial3D, 2048, 20.0, false};
  const double R = 5.0;
  std::vector<double> rho(g.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = g.radial_r(i);
    rho[i] = r < R ? 1.0 : (r == R ? 0.5 : 0.0);
  }
  std::vector<double> v = newton_radial_convolution(rho, g);
  const double mass = 4.0 * pi * R * R * R / 3.0;
  for (double r : {6.25, 7.5, 10.0, 15.0}) {
    const std::size_t j = static_cast<std::size_t>(r / g.dr() + 0.5);
    CHECK(v[j - 1] == doctest::Approx(mass / r).epsilon(2e-4));
  }
  for (double r : {2.5, 3.75}) {
    const std::size_t j = static_cast<std::size_t>(r / g.dr() + 0.5);
    const double want = 2.0 * pi * R * R - 2.0 * pi * r * r / 3.0;
    CHECK(v[j - 1] == doctest::Approx(want).epsilon(2e-4));
  }
  // outside the support the potential decreases monotonically
  for (std::size_t i = 600; i + 1 < v.size(); ++i) CHECK(v[i + 1] < v[i]);

  std::vector<double> zero(g.size(), 0.0);
  for (double y : newton_radial_convolution(zero, g)) CHECK(y == 0.0);
}

TEST_CASE("coulomb routes agree on an analytic zero-mass density") {
  // rho = (3 - 2r^2) e^{-r^2} integrates to zero and has potential
  // 2 pi e^{-r^2}; no far-field tail, so both routes see the free-space
  // problem.
  GridSpec g{GridKind::Radial3D, 4096, 24.0, false};
  std::vector<double> rho(g.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = g.radial_r(i);
    rho[i] = (3.0 - 2.0 * r * r) * std::exp(-r * r);
  }
  std::vector<double> vn = newton_radial_convolution(rho, g);
  std::vector<double> vs = radial_convolution(rho, g, 1.0);
  double worst_n = 0.0, worst_s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.radial_r(i);
    if (r > 8.0) break;
    const double want = 2.0 * pi * std::exp(-r * r);
    worst_n = std::max(worst_n, std::abs(vn[i] - want));
    worst_s = std::max(worst_s, std::abs(vs[i] - want));
  }
  CHECK(worst_n <= 5e-4);   // cumulative trapezoid floor
  CHECK(worst_s <= 1e-10);  // sine-series route is spectrally accurate here
}

TEST_CASE("gamma=2 convolution matches the log-kernel quadrature oracle") {
  // radial |x|^{-2} convolution: V(r) = (2 pi / r) Int y rho(y)
  // log((r+y)/|r-y|) dy, split at the integrable log singularity y = r.
  GridSpec g{GridKind::Radial3D, 1024, 24.0, false};
  std::vector<double> rho(g.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double r = g.radial_r(i);
    rho[i] = (3.0 - 2.0 * r * r) * std::exp(-r * r);
  }
  std::vector<double> v = radial_convolution(rho, g, 2.0);
  for (double r : {0.75, 1.5, 3.0}) {
    auto f = [r](double y) {
      return y * (3.0 - 2.0 * y * y) * std::exp(-y * y) *
             std::log((r + y) / std::abs(r - y));
    };
    const double oracle =
        (2.0 * pi / r) * (integrate(f, 0.0, r, 1e-12, 1e-14).value +
                          integrate(f, r, 12.0, 1e-12, 1e-14).value);
    const std::size_t j = static_cast<std::size_t>(r / g.dr() + 0.5);
    CHECK(v[j - 1] == doctest::Approx(oracle).epsilon(2e-5));
  }
}

}  // TEST_SUITE
