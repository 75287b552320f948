#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "srh/cutoffs.hpp"
#include "srh/errors.hpp"
#include "srh/oracle.hpp"
#include "srh/quadrature.hpp"
#include "srh/scattering.hpp"

using namespace srh;
using cplx = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;

SpectralField random_radial_fourier(const GridSpec& g, unsigned seed) {
  SpectralField f = SpectralField::zeros(g, Space::Fourier);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : f.data) z = {u(rng), u(rng)};
  f.data.back() = 0.0;  // pinned slot
  return f;
}

}  // namespace

TEST_SUITE("scattering") {

TEST_CASE("phi_s follows the self-similar cutoff in |xi| * s^{-alpha}") {
  const double alpha = 1.0 / 300.0;
  // s = 0 conventions
  CHECK(phi_s(0.0, 0.0, alpha) == 1.0);
  CHECK(phi_s(0.7, 0.0, alpha) == 0.0);
  // plateau and support edges scale like s^alpha
  for (double s : {0.5, 1.0, 37.0, 4096.0}) {
    const double sc = std::pow(s, alpha);
    CHECK(phi_s(1.24 * sc, s, alpha) == 1.0);
    CHECK(phi_s(1.61 * sc, s, alpha) == 0.0);
    const double mid = phi_s(1.4 * sc, s, alpha);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
  }
  // matches the base cutoff directly
  CHECK(phi_s(1.37, 2.0, 0.25) ==
        doctest::Approx(base_cutoff(1.37 * std::pow(2.0, -0.25)))
            .epsilon(1e-15));
  CHECK_THROWS_AS(phi_s(1.0, -0.1, alpha), contract_error);
  CHECK_THROWS_AS(phi_s(-1.0, 1.0, alpha), contract_error);
  CHECK_THROWS_AS(phi_s(1.0, 1.0, 0.0), contract_error);
}

TEST_CASE("radial correction density matches the angular-average quadrature") {
  // The fast path uses Int_{S^2} |v_i e - v_k w|^{-1} dS = 4pi / max(v_i, v_k)
  // via prefix sums. Rebuild the density from oracle::spherical_average, which
  // integrates the sphere adaptively and knows nothing of the closed form:
  //   d_i = phi_s(rho_i)/(s+1) * 8 drho * sum_k |F_k|^2 * avg(v_i, v_k)^{-1!}
  // where avg = (1/4pi) Int |v_i e - v_k w|^{-1} dS.
  GridSpec g{GridKind::Radial3D, 32, 14.0, false};
  SpectralField f = random_radial_fourier(g, 911);
  const double s = 3.0, alpha = 1.0 / 300.0;
  const std::vector<double> fast = correction_density(f, s, alpha);

  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double rho_i = g.radial_rho(i);
    const double vi = rho_i / std::sqrt(1.0 + rho_i * rho_i);
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < g.size(); ++k) {
      const double rho_k = g.radial_rho(k);
      const double vk = rho_k / std::sqrt(1.0 + rho_k * rho_k);
      acc += std::norm(f.data[k]) *
             oracle::spherical_average({vi, 0.0, 0.0}, vk);
    }
    const double want =
        phi_s(rho_i, s, alpha) / (s + 1.0) * 8.0 * g.drho() * acc;
    worst = std::max(worst, std::abs(fast[i] - want) /
                                std::max(1e-30, std::abs(want)));
  }
  CHECK(worst < 1e-6);
  CHECK(fast.back() == 0.0);
}

TEST_CASE("periodic singular cell average carries the exact cube integral") {
  // Concentrate everything on the zero mode, where the Jacobian M(0) = I and
  // the density reduces to c0 * phi/(s+1) * cell^3-average of 1/|d|. The cube
  // integral Int_{[-a/2,a/2]^3} |d|^{-1} has the closed z-antiderivative
  // asinh, leaving a 2d integral evaluated here by nested adaptive quadrature.
  GridSpec g{GridKind::Periodic3D, 8, 11.0, false};
  SpectralField f = SpectralField::zeros(g, Space::Fourier);
  f.data[0] = {0.8, -0.6};  // |f|^2 = 1
  const double s = 2.0, alpha = 1.0 / 300.0;
  const double got = correction_density(f, std::size_t{0}, s, alpha);

  const double a = 2.0 * pi / g.extent;
  const auto inner = [&](double x, double y) {
    const double q = std::hypot(x, y);
    return 2.0 * std::asinh((a / 2.0) / q);
  };
  const double cube =
      integrate(
          [&](double x) {
            return integrate([&](double y) { return inner(x, y); }, -a / 2.0,
                             a / 2.0, 1e-11)
                .value;
          },
          -a / 2.0, a / 2.0, 1e-11)
          .value;
  const double avg = cube / (a * a * a);
  const double want = std::pow(2.0 * pi, -3) * phi_s(0.0, s, alpha) /
                      (s + 1.0) * g.mode_cell() * avg;
  CHECK(got == doctest::Approx(want).epsilon(1e-8));

  // bulk and per-mode overloads agree everywhere
  SpectralField r = SpectralField::zeros(g, Space::Fourier);
  std::mt19937_64 rng(313);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& z : r.data) z = {u(rng), u(rng)};
  const std::vector<double> bulk = correction_density(r, s, alpha);
  for (std::size_t idx : {std::size_t{0}, std::size_t{5}, std::size_t{77},
                          std::size_t{260}, std::size_t{511}}) {
    CHECK(correction_density(r, idx, s, alpha) ==
          doctest::Approx(bulk[idx]).epsilon(1e-13));
  }
}

TEST_CASE("periodic and radial density routes agree on a shared gaussian") {
  // uhat(xi) = exp(-|xi|^2/2) seen by both discretizations. The radial grid
  // evaluates the closed-form angular reduction; the periodic grid sums the
  // lattice with the singular cell averaged. Both approximate the same
  // continuum integral, compared here through an adaptive reference
  //   D(v_i) = 4pi Int sigma^2 |uhat|^2 / max(v_i, v(sigma)) dsigma.
  const double s = 5.0, alpha = 1.0 / 300.0;
  const double c0 = std::pow(2.0 * pi, -3);
  const auto uhat = [](double rho) { return std::exp(-rho * rho / 2.0); };
  const auto d_ref = [&](double xi) {
    const double vi = xi / std::sqrt(1.0 + xi * xi);
    const double D =
        4.0 * pi *
        integrate(
            [&](double sg) {
              const double vk = sg / std::sqrt(1.0 + sg * sg);
              const double w = uhat(sg);
              return sg * sg * w * w / std::max(vi, vk);
            },
            0.0, 9.0, 1e-12)
            .value;
    return c0 * phi_s(xi, s, alpha) / (s + 1.0) * D;
  };

  GridSpec gr{GridKind::Radial3D, 512, 160.0, false};
  SpectralField fr = SpectralField::zeros(gr, Space::Fourier);
  for (std::size_t i = 0; i + 1 < gr.size(); ++i) {
    const double rho = gr.radial_rho(i);
    fr.data[i] = rho * uhat(rho) / (4.0 * pi);  // radial storage F = rho*uhat/4pi
  }
  const std::vector<double> dr = correction_density(fr, s, alpha);
  double worst_r = 0.0;
  for (std::size_t i = 0; i + 1 < gr.size(); ++i) {
    const double rho = gr.radial_rho(i);
    if (rho > 4.0) break;
    worst_r = std::max(worst_r, std::abs(dr[i] - d_ref(rho)) / d_ref(0.0));
  }
  CHECK(worst_r < 2e-3);

  GridSpec gp{GridKind::Periodic3D, 16, 16.0, false};
  SpectralField fp = SpectralField::zeros(gp, Space::Fourier);
  for (std::size_t i = 0; i < gp.size(); ++i)
    fp.data[i] = uhat(gp.mode_radius(i));
  const std::vector<double> dp = correction_density(fp, s, alpha);
  double worst_p = 0.0;
  for (std::size_t i = 0; i < gp.size(); ++i) {
    const double xi = gp.mode_radius(i);
    if (xi > 2.5) continue;
    worst_p = std::max(worst_p, std::abs(dp[i] - d_ref(xi)) / d_ref(0.0));
  }
  CHECK(worst_p < 2e-2);
}

TEST_CASE("correction density sees |fhat| only") {
  GridSpec g{GridKind::Radial3D, 64, 18.0, false};
  SpectralField f = random_radial_fourier(g, 2024);
  SpectralField rot = f;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (auto& z : rot.data) z *= std::polar(1.0, u(rng));
  const auto a = correction_density(f, 2.5, 1.0 / 300.0);
  const auto b = correction_density(rot, 2.5, 1.0 / 300.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]) / std::max(1e-30, a[i]));
  CHECK(worst < 1e-13);
}

TEST_CASE("accumulate_B runs an exact trapezoid and stays monotone") {
  GridSpec g{GridKind::Radial3D, 32, 10.0, false};
  SpectralField f = random_radial_fourier(g, 5);
  ScatteringState st = ScatteringState::create(g, 1.0 / 300.0);
  CHECK(st.c0 == doctest::Approx(std::pow(2.0 * pi, -3)).epsilon(1e-15));

  // first sample only initializes
  accumulate_B(st, {1.0, f, 0.0, 0.0});
  for (double b : st.B) CHECK(b == 0.0);
  CHECK(st.have_last);

  // second sample adds one exact trapezoid panel
  accumulate_B(st, {1.5, f, 0.0, 0.0});
  const auto d1 = correction_density(f, 1.0, st.alpha);
  const auto d2 = correction_density(f, 1.5, st.alpha);
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    const double want = 0.25 * (d1[i] + d2[i]);
    CHECK(st.B[i] == doctest::Approx(want).epsilon(1e-14));
    CHECK(st.B[i] >= 0.0);
  }

  // further samples only grow B
  std::vector<double> before = st.B;
  accumulate_B(st, {2.25, f, 0.0, 0.0});
  for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(st.B[i] >= before[i]);

  // time must advance; equal time is a no-op
  before = st.B;
  accumulate_B(st, {2.25, f, 0.0, 0.0});
  CHECK(st.B == before);
  CHECK_THROWS_AS(accumulate_B(st, {2.0, f, 0.0, 0.0}), invariant_error);

  GridSpec other{GridKind::Radial3D, 16, 10.0, false};
  SpectralField fo = SpectralField::zeros(other, Space::Fourier);
  CHECK_THROWS_AS(accumulate_B(st, {3.0, fo, 0.0, 0.0}), contract_error);
  CHECK_THROWS_AS(ScatteringState::create(g, 0.0), contract_error);
}

TEST_CASE("modified profile rotates phases without touching magnitudes") {
  GridSpec g{GridKind::Radial3D, 64, 12.0, false};
  SpectralField f = random_radial_fourier(g, 99);
  ScatteringState st = ScatteringState::create(g);

  SpectralField g0 = modified_profile(f, st);  // B = 0
  for (std::size_t i = 0; i < f.data.size(); ++i)
    CHECK(std::abs(g0.data[i] - f.data[i]) == 0.0);

  for (auto& b : st.B) b = pi;
  SpectralField gp = modified_profile(f, st);  // e^{-i pi} = -1
  for (std::size_t i = 0; i < f.data.size(); ++i)
    CHECK(std::abs(gp.data[i] + f.data[i]) < 1e-15);

  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 20.0);
  for (auto& b : st.B) b = u(rng);
  SpectralField gr = modified_profile(f, st);
  for (std::size_t i = 0; i < f.data.size(); ++i)
    CHECK(std::abs(std::abs(gr.data[i]) - std::abs(f.data[i])) <=
          1e-15 * std::abs(f.data[i]));

  SpectralField phys = SpectralField::zeros(g, Space::Physical);
  CHECK_THROWS_AS(modified_profile(phys, st), contract_error);
}

TEST_CASE("scattering monitor recovers a planted power law") {
  GridSpec g{GridKind::Radial3D, 32, 9.0, false};
  SpectralField base = random_radial_fourier(g, 7);
  SpectralField bump = random_radial_fourier(g, 8);

  // g(t_{k+1}) = g(t_k) + t_k^{-q} h makes each pair value t1^{-q} * sup-norm
  const double q = 1.35;
  std::vector<std::pair<double, SpectralField>> snaps;
  SpectralField cur = base;
  double t = 2.0;
  for (int k = 0; k < 6; ++k) {
    snaps.emplace_back(t, cur);
    for (std::size_t i = 0; i < cur.data.size(); ++i)
      cur.data[i] += std::pow(t, -q) * bump.data[i];
    t *= 2.0;
  }
  MonitorResult m = scattering_monitor(snaps, 4.0);
  REQUIRE(m.rows.size() == 5);
  CHECK(m.fit.slope == doctest::Approx(-q).epsilon(1e-12));
  CHECK(m.fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
  for (std::size_t i = 0; i + 1 < m.rows.size(); ++i)
    CHECK(m.rows[i + 1].value < m.rows[i].value);

  // frozen sequence: all pair values are zero and no fit is attempted
  std::vector<std::pair<double, SpectralField>> frozen = {
      {1.0, base}, {2.0, base}, {4.0, base}};
  MonitorResult mf = scattering_monitor(frozen, 4.0);
  for (const auto& r : mf.rows) CHECK(r.value == 0.0);
  CHECK(mf.fit.slope == 0.0);
  CHECK(mf.fit.r2 == 0.0);

  CHECK_THROWS_AS(
      scattering_monitor({{1.0, base}, {2.0, base}}, 4.0), contract_error);
  std::vector<std::pair<double, SpectralField>> bad = {
      {1.0, base}, {3.0, base}, {2.0, base}};
  CHECK_THROWS_AS(scattering_monitor(bad, 4.0), contract_error);
}

TEST_CASE("naive profile drift fits the planted log-time coefficient") {
  GridSpec g{GridKind::Radial3D, 32, 8.0, false};
  const std::size_t probe = 5;
  const double c = 2.0, b = 0.9;

  std::vector<std::pair<double, SpectralField>> snaps;
  for (double t : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    SpectralField f = SpectralField::zeros(g, Space::Fourier);
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      f.data[i] = 0.3 * std::polar(1.0, c * std::log(t) + b);
    snaps.emplace_back(t, f);
  }
  DriftResult d = naive_profile_drift(snaps, probe);
  CHECK(d.slope == doctest::Approx(c).epsilon(1e-10));
  CHECK(d.r2 == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(d.phases.size() == 5);
  for (std::size_t i = 0; i + 1 < d.phases.size(); ++i)
    CHECK(d.phases[i + 1] - d.phases[i] ==
          doctest::Approx(c * std::log(2.0)).epsilon(1e-12));

  // per-step rotation above 0.9 pi trips the unwrap guard (4.2 * log 2 lands
  // between 0.9 pi and pi, so wrapping cannot disguise it)
  std::vector<std::pair<double, SpectralField>> fast;
  for (double t : {10.0, 20.0, 40.0}) {
    SpectralField f = SpectralField::zeros(g, Space::Fourier);
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      f.data[i] = std::polar(1.0, 4.2 * std::log(t));
    fast.emplace_back(t, f);
  }
  CHECK_THROWS_AS(naive_profile_drift(fast, probe), invariant_error);

  // nonpositive time and zero probe amplitude are contract violations
  std::vector<std::pair<double, SpectralField>> att = snaps;
  att[0].first = 0.0;
  CHECK_THROWS_AS(naive_profile_drift(att, probe), contract_error);
  std::vector<std::pair<double, SpectralField>> azero = snaps;
  azero[1].second.data[probe] = 0.0;
  CHECK_THROWS_AS(naive_profile_drift(azero, probe), contract_error);
}

TEST_CASE("linear scattering monitor recovers a planted power law") {
  GridSpec g{GridKind::Radial3D, 64, 11.0, false};
  SpectralField base = SpectralField::zeros(g, Space::Physical);
  SpectralField bump = SpectralField::zeros(g, Space::Physical);
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.radial_r(i);
    base.data[i] = u(rng) * std::exp(-r * r / 8.0);
    bump.data[i] = u(rng) * std::exp(-r * r / 6.0);
  }
  const double q = 0.85;
  std::vector<std::pair<double, SpectralField>> snaps;
  SpectralField cur = base;
  double t = 1.0;
  for (int k = 0; k < 5; ++k) {
    snaps.emplace_back(t, cur);
    for (std::size_t i = 0; i < cur.data.size(); ++i)
      cur.data[i] += std::pow(t, -q) * bump.data[i];
    t *= 3.0;
  }
  MonitorResult m = linear_scattering_monitor(snaps);
  REQUIRE(m.rows.size() == 4);
  CHECK(m.fit.slope == doctest::Approx(-q).epsilon(1e-12));
  CHECK(m.fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

  // physical-space contract
  std::vector<std::pair<double, SpectralField>> wrong = {
      {1.0, random_radial_fourier(g, 1)},
      {2.0, random_radial_fourier(g, 2)},
      {3.0, random_radial_fourier(g, 3)}};
  CHECK_THROWS_AS(linear_scattering_monitor(wrong), contract_error);
}

}  // TEST_SUITE
