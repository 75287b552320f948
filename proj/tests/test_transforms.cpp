#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "srh/errors.hpp"
#include "srh/quadrature.hpp"
#include "srh/transforms.hpp"

using namespace srh;

namespace {

constexpr double pi = 3.14159265358979323846;

SpectralField random_field(const GridSpec& g, Space s, unsigned seed) {
  SpectralField f = SpectralField::zeros(g, s);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : f.data) z = {u(rng), u(rng)};
  if (g.kind == GridKind::Radial3D) f.data.back() = 0.0;  // pinned slot
  return f;
}

double rel_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    num = std::max(num, std::abs(a.data[i] - b.data[i]));
    den = std::max(den, std::abs(b.data[i]));
  }
  return num / den;
}

}  // namespace

TEST_SUITE("transforms") {

TEST_CASE("round trip is the identity on both grid kinds") {
  GridSpec rad{GridKind::Radial3D, 256, 20.0, false};
  SpectralField f = random_field(rad, Space::Physical, 101);
  CHECK(rel_diff(inverse_transform(forward_transform(f)), f) <= 1e-12);

  GridSpec per{GridKind::Periodic3D, 16, 7.0, false};
  SpectralField p = random_field(per, Space::Physical, 102);
  CHECK(rel_diff(inverse_transform(forward_transform(p)), p) <= 1e-12);

  // starting from Fourier space works too
  SpectralField q = random_field(per, Space::Fourier, 103);
  CHECK(rel_diff(forward_transform(inverse_transform(q)), q) <= 1e-12);
}

TEST_CASE("zero maps to zero and space tags are enforced") {
  GridSpec g{GridKind::Radial3D, 64, 8.0, false};
  SpectralField z = SpectralField::zeros(g, Space::Physical);
  SpectralField zf = forward_transform(z);
  for (const auto& v : zf.data) CHECK(std::abs(v) == 0.0);
  CHECK_THROWS_AS(forward_transform(zf), contract_error);
  CHECK_THROWS_AS(inverse_transform(z), contract_error);
}

TEST_CASE("discrete Plancherel identity on random fields") {
  GridSpec rad{GridKind::Radial3D, 128, 12.0, false};
  GridSpec per{GridKind::Periodic3D, 8, 5.0, false};
  for (unsigned trial = 0; trial < 50; ++trial) {
    SpectralField f = random_field(rad, Space::Physical, 200 + trial);
    CHECK(l2_norm_sq(forward_transform(f)) ==
          doctest::Approx(l2_norm_sq(f)).epsilon(1e-12));
    SpectralField p = random_field(per, Space::Physical, 300 + trial);
    CHECK(l2_norm_sq(forward_transform(p)) ==
          doctest::Approx(l2_norm_sq(p)).epsilon(1e-12));
  }
}

TEST_CASE("radial Gaussian transform matches quadrature and closed form") {
  GridSpec g{GridKind::Radial3D, 256, 12.0, false};
  SpectralField f = SpectralField::zeros(g, Space::Physical);
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    const double r = g.radial_r(i);
    f.data[i] = std::exp(-r * r);
  }
  SpectralField fh = forward_transform(f);
  for (std::size_t k : {0, 3, 11, 29, 60}) {
    const double rho = g.radial_rho(k);
    // stored value is rho*uhat/(4pi)
    const double uhat = 4.0 * pi * fh.data[k].real() / rho;
    const double quad =
        (4.0 * pi / rho) *
        integrate([rho](double r) { return r * std::sin(rho * r) *
                                           std::exp(-r * r); },
                  0.0, 12.0, 1e-13, 1e-15)
            .value;
    const double closed = std::pow(pi, 1.5) * std::exp(-rho * rho / 4.0);
    CHECK(uhat == doctest::Approx(quad).epsilon(1e-8));
    CHECK(uhat == doctest::Approx(closed).epsilon(1e-8));
    CHECK(std::abs(fh.data[k].imag()) <= 1e-15);
  }
}

TEST_CASE("periodic Gaussian transform matches the closed form per mode") {
  GridSpec g{GridKind::Periodic3D, 64, 24.0, false};
  SpectralField f = SpectralField::zeros(g, Space::Physical);
  for (std::size_t i = 0; i < f.data.size(); ++i) {
    const double r = g.min_image_radius(i);
    f.data[i] = std::exp(-r * r / 2.0);
  }
  SpectralField fh = forward_transform(f);
  double worst = 0.0;
  for (std::size_t i = 0; i < fh.data.size(); ++i) {
    const double xi = g.mode_radius(i);
    const double want = std::pow(2.0 * pi, 1.5) * std::exp(-xi * xi / 2.0);
    worst = std::max(worst, std::abs(fh.data[i].real() - want) +
                                std::abs(fh.data[i].imag()));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("propagator is unitary, additive in t, and exact on one mode") {
  GridSpec g{GridKind::Periodic3D, 8, 2.0 * pi, false};
  SpectralField f = random_field(g, Space::Fourier, 401);
  SpectralField orig = f;

  linear_propagator_apply(f, 0.0);
  CHECK(rel_diff(f, orig) == 0.0);

  linear_propagator_apply(f, 0.7);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    CHECK(std::abs(f.data[i]) ==
          doctest::Approx(std::abs(orig.data[i])).epsilon(1e-13));
  linear_propagator_apply(f, -0.7);
  CHECK(rel_diff(f, orig) <= 1e-13);

  linear_propagator_apply(f, 0.3);
  linear_propagator_apply(f, 0.5);
  SpectralField once = orig;
  linear_propagator_apply(once, 0.8);
  CHECK(rel_diff(f, once) <= 1e-12);

  // single mode at |xi| = sqrt(3): half period flips the sign
  SpectralField one = SpectralField::zeros(g, Space::Fourier);
  const std::size_t idx = (1 * 8 + 1) * 8 + 1;  // k = (1,1,1)
  one.data[idx] = {1.0, 0.0};
  linear_propagator_apply(one, pi / 2.0);  // Lambda = 2
  CHECK(one.data[idx].real() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(one.data[idx].imag()) <= 1e-14);

  CHECK_THROWS_AS(linear_propagator_apply(f, std::nan("")), contract_error);
  SpectralField phys = SpectralField::zeros(g, Space::Physical);
  CHECK_THROWS_AS(linear_propagator_apply(phys, 1.0), contract_error);
}

TEST_CASE("forward transform pins the radial boundary slot") {
  GridSpec g{GridKind::Radial3D, 32, 6.0, false};
  SpectralField f = random_field(g, Space::Physical, 501);
  f.data.back() = {0.33, -0.1};  // dust on the boundary node
  SpectralField fh = forward_transform(f);
  CHECK(std::abs(fh.data.back()) == 0.0);
  SpectralField back = inverse_transform(fh);
  CHECK(std::abs(back.data.back()) == 0.0);
}

}  // TEST_SUITE
