#include "srh/oracle.hpp"

#include <cmath>

#include "srh/cutoffs.hpp"
#include "srh/errors.hpp"
#include "srh/quadrature.hpp"
#include "srh/symbols.hpp"

namespace srh::oracle {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr std::complex<double> iu{0.0, 1.0};

std::size_t index_of(int a, int b, int c, int n) {
  auto w = [n](int v) {
    int r = v % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
  };
  return (w(a) * n + w(b)) * n + w(c);
}

// < xi > = sqrt(1 + |xi|^2) for a raw vector.
double angle_bracket(const std::array<double, 3>& v) {
  return std::sqrt(1.0 + v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

// |M(xi) d| with M = I/<xi> - xi xi^T/<xi>^3, the Jacobian of xi -> xi/<xi>.
double image_length(const std::array<double, 3>& xi,
                    const std::array<double, 3>& d) {
  const double br = angle_bracket(xi);
  const double dot = xi[0] * d[0] + xi[1] * d[1] + xi[2] * d[2];
  std::array<double, 3> md{};
  for (int k = 0; k < 3; ++k)
    md[k] = d[k] / br - xi[k] * dot / (br * br * br);
  return std::sqrt(md[0] * md[0] + md[1] * md[1] + md[2] * md[2]);
}

// Average of |M(xi) d|^{-1} over the cube |d_k| <= a/2. In spherical
// coordinates the radial integral is exact:
//   Int_cube |M d|^{-1} dd = Int_{S^2} |M w|^{-1} R(w)^2 / 2 dS(w)
// with R(w) the distance from the center to the cube boundary along w.
double cell_average_inv_image(const std::array<double, 3>& xi, double a) {
  const int nt = 64, np = 128;
  std::vector<double> ct, wt;
  gauss_legendre(nt, -1.0, 1.0, ct, wt);
  double acc = 0.0;
  for (int it = 0; it < nt; ++it) {
    const double c = ct[it];
    const double st = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int ip = 0; ip < np; ++ip) {
      const double phi = 2.0 * pi * ip / np;
      const std::array<double, 3> w{st * std::cos(phi), st * std::sin(phi), c};
      const double mw = std::max({std::abs(w[0]), std::abs(w[1]), std::abs(w[2])});
      const double r = (a / 2.0) / mw;
      acc += wt[it] * (2.0 * pi / np) * (r * r / 2.0) / image_length(xi, w);
    }
  }
  return acc / (a * a * a);
}

// Shared double lattice sum for the Duhamel integrand at one mode, with an
// optional full-ball cutoff on eta. lambda = -1 throughout; the integrand is
// linear in lambda.
std::complex<double> duhamel_sum(const SpectralField& fhat, double s,
                                 std::size_t mode_index, double gamma,
                                 double eta_scale) {
  const GridSpec& g = fhat.grid;
  if (g.kind != GridKind::Periodic3D)
    throw contract_error("duhamel oracle: Periodic3D only");
  if (g.n > 8) throw contract_error("duhamel oracle: n <= 8 only");
  fhat.require_space(Space::Fourier, "duhamel oracle");
  const int n = g.n;
  const std::size_t N = g.size();

  std::vector<std::array<int, 3>> m(N);
  std::vector<double> lam(N);
  for (std::size_t i = 0; i < N; ++i) {
    m[i] = g.mode_ints(i);
    const double r = g.mode_radius(i);
    lam[i] = std::sqrt(1.0 + r * r);
  }

  const double c = riesz_constant(gamma);
  const auto xi = m[mode_index];
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t ie = 0; ie < N; ++ie) {
    const auto eta = m[ie];
    if (eta[0] == 0 && eta[1] == 0 && eta[2] == 0) continue;  // gauge
    const double eta_len = g.mode_radius(ie);
    double kernel = c * std::pow(eta_len, gamma - 3.0);
    if (eta_scale > 0.0) {
      const double cut = base_cutoff(eta_len / eta_scale);
      if (cut == 0.0) continue;
      kernel *= cut;
    }
    const std::size_t ia = index_of(xi[0] + eta[0], xi[1] + eta[1],
                                    xi[2] + eta[2], n);
    for (std::size_t is = 0; is < N; ++is) {
      const auto sig = m[is];
      const std::size_t ib =
          index_of(xi[0] + sig[0], xi[1] + sig[1], xi[2] + sig[2], n);
      const std::size_t ic = index_of(xi[0] + eta[0] + sig[0],
                                      xi[1] + eta[1] + sig[1],
                                      xi[2] + eta[2] + sig[2], n);
      const double phase = -lam[mode_index] + lam[ia] + lam[ib] - lam[ic];
      acc += kernel * std::polar(1.0, -s * phase) * fhat.data[ia] *
             fhat.data[ib] * std::conj(fhat.data[ic]);
    }
  }
  const double L = g.extent;
  return iu / std::pow(L, 6) * acc;  // -i lambda = +i at lambda = -1
}

}  // namespace

double spherical_average(const std::array<double, 3>& a, double b) {
  const double A = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (A == 0.0 && b == 0.0)
    throw contract_error("spherical_average: a = 0 and b = 0");
  // reduce to the polar angle and substitute mu = 1 - t^2, which absorbs the
  // inverse square root at mu = 1 when A = b:
  //   (1/2) Int_{-1}^{1} dmu / sqrt(A^2 + b^2 - 2 A b mu)
  //     = Int_0^{sqrt 2} t dt / sqrt((A - b)^2 + 2 A b t^2)
  const double d2 = (A - b) * (A - b);
  const double ab2 = 2.0 * A * b;
  return integrate(
             [d2, ab2](double t) {
               return t / std::sqrt(d2 + ab2 * t * t);
             },
             0.0, std::sqrt(2.0), 1e-13, 1e-15)
      .value;
}

std::vector<double> direct_convolution(const std::vector<double>& density,
                                       const GridSpec& g, double gamma) {
  if (g.kind != GridKind::Periodic3D)
    throw contract_error("direct_convolution: Periodic3D only");
  if (g.n > 24) throw contract_error("direct_convolution: n <= 24 only");
  const std::size_t N = g.size();
  if (density.size() != N)
    throw contract_error("direct_convolution: density length mismatch");
  const int n = g.n;
  const double L = g.extent;
  const double c = riesz_constant(gamma);

  // kernel column T[d] = L^{-3} sum_k c |xi_k|^{gamma-3} cos(2 pi k.d / n)
  std::vector<double> column(N, 0.0);
  std::vector<std::array<int, 3>> m(N);
  std::vector<double> sym(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    m[i] = g.mode_ints(i);
    const double r = g.mode_radius(i);
    sym[i] = r == 0.0 ? 0.0 : c * std::pow(r, gamma - 3.0);
  }
  for (std::size_t d = 0; d < N; ++d) {
    const int dx = static_cast<int>(d) / (n * n);
    const int dy = (static_cast<int>(d) / n) % n;
    const int dz = static_cast<int>(d) % n;
    double t = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
      if (sym[k] == 0.0) continue;
      const double ang =
          2.0 * pi * (m[k][0] * dx + m[k][1] * dy + m[k][2] * dz) / n;
      t += sym[k] * std::cos(ang);
    }
    column[d] = t / (L * L * L);
  }

  const double h3 = std::pow(g.dx(), 3);
  std::vector<double> out(N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const int ix = static_cast<int>(i) / (n * n);
    const int iy = (static_cast<int>(i) / n) % n;
    const int iz = static_cast<int>(i) % n;
    double acc = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      const int jx = static_cast<int>(j) / (n * n);
      const int jy = (static_cast<int>(j) / n) % n;
      const int jz = static_cast<int>(j) % n;
      acc += column[index_of(ix - jx, iy - jy, iz - jz, n)] * density[j];
    }
    out[i] = h3 * acc;
  }
  return out;
}

std::complex<double> direct_duhamel(const SpectralField& fhat, double s,
                                    std::size_t mode_index, double gamma) {
  return duhamel_sum(fhat, s, mode_index, gamma, 0.0);
}

LeadingTerm leading_term_check(const SpectralField& fhat, double s,
                               std::size_t mode_index, double eta_scale) {
  if (eta_scale <= 0.0)
    throw contract_error("leading_term_check: eta_scale must be positive");
  LeadingTerm out;
  out.restricted = duhamel_sum(fhat, s, mode_index, 1.0, eta_scale);

  const GridSpec& g = fhat.grid;
  const std::size_t N = g.size();
  const auto xi = g.mode_vec(mode_index);
  const double xib = angle_bracket(xi);
  const std::array<double, 3> v{xi[0] / xib, xi[1] / xib, xi[2] / xib};

  // D = Int |xi/<xi> - sigma/<sigma>|^{-1} |fhat(sigma)|^2 dsigma on the mode
  // lattice, the sigma = xi cell by its analytic average.
  const double dxi = 2.0 * pi / g.extent;
  double density = 0.0;
  for (std::size_t is = 0; is < N; ++is) {
    const double a2 = std::norm(fhat.data[is]);
    if (a2 == 0.0) continue;
    double inv;
    if (is == mode_index) {
      inv = cell_average_inv_image(xi, dxi);
    } else {
      const auto sg = g.mode_vec(is);
      const double sb = angle_bracket(sg);
      const std::array<double, 3> z{v[0] - sg[0] / sb, v[1] - sg[1] / sb,
                                    v[2] - sg[2] / sb};
      inv = 1.0 / std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
    }
    density += inv * a2;
  }
  density *= g.mode_cell();

  const double c0 = 1.0 / std::pow(2.0 * pi, 3);
  out.asymptotic = iu * c0 * density * fhat.data[mode_index] / (s + 1.0);
  out.difference = std::abs(out.restricted - out.asymptotic);
  out.regime_ok = base_cutoff(g.mode_radius(mode_index) / eta_scale) == 1.0;
  return out;
}

LeadingTerm leading_term_check_radial(
    const std::function<std::complex<double>(double)>& fhat, double s,
    double eta_scale, double sigma_max, int nodes) {
  if (eta_scale <= 0.0 || sigma_max <= 0.0 || nodes < 8)
    throw contract_error("leading_term_check_radial: bad parameters");
  // the cutoff transition is smooth but not analytic, so the eta axis
  // converges slowest and gets the full node budget
  const double R = eta_scale;
  const int n_eta = std::max(24, nodes);
  const int n_sig = std::max(32, nodes);
  const int n_mu = std::max(16, nodes / 2);

  std::vector<double> xe, we, xs, ws, xm, wm;
  gauss_legendre(n_eta, 0.0, 1.6 * R, xe, we);
  gauss_legendre(n_sig, 0.0, sigma_max, xs, ws);
  gauss_legendre(n_mu, -1.0, 1.0, xm, wm);

  // restricted integrand at xi = 0 reduced to (|eta|, |sigma|, cos angle);
  // eta^2 from the measure cancels the |eta|^{-2} kernel:
  //   i c1 8 pi^2 Int phi(eta/R) fhat(eta) sigma^2 fhat(sigma)
  //                  conj(fhat(Sigma)) e^{is(1 - <eta> - <sigma> + <Sigma>)}
  const double c1 = 2.0 * std::pow(2.0 * pi, -5);
  std::complex<double> acc{0.0, 0.0};
  for (int a = 0; a < n_eta; ++a) {
    const double eta = xe[a];
    const double cut = base_cutoff(eta / R);
    if (cut == 0.0) continue;
    const std::complex<double> fe = fhat(eta) * (cut * we[a]);
    const double be = std::sqrt(1.0 + eta * eta);
    for (int b = 0; b < n_sig; ++b) {
      const double sig = xs[b];
      const std::complex<double> fs = fhat(sig) * (sig * sig * ws[b]);
      const double bs = std::sqrt(1.0 + sig * sig);
      for (int cdx = 0; cdx < n_mu; ++cdx) {
        const double mu = xm[cdx];
        const double S2 = eta * eta + sig * sig + 2.0 * eta * sig * mu;
        const double S = std::sqrt(std::max(0.0, S2));
        const double phase = s * (1.0 - be - bs + std::sqrt(1.0 + S2));
        acc += fe * fs * std::conj(fhat(S)) * std::polar(wm[cdx], phase);
      }
    }
  }
  LeadingTerm out;
  out.restricted = iu * c1 * 8.0 * pi * pi * acc;

  // D at xi = 0: |z| = sigma/<sigma>, so D = 4 pi Int sigma <sigma> |fhat|^2
  const double density =
      4.0 * pi *
      integrate(
          [&fhat](double sig) {
            return sig * std::sqrt(1.0 + sig * sig) * std::norm(fhat(sig));
          },
          0.0, sigma_max, 1e-12, 1e-15)
          .value;
  const double c0 = 1.0 / std::pow(2.0 * pi, 3);
  out.asymptotic = iu * c0 * density * fhat(0.0) / (s + 1.0);
  out.difference = std::abs(out.restricted - out.asymptotic);
  out.regime_ok = 1.6 * eta_scale <= 1.0;
  return out;
}

}  // namespace srh::oracle
