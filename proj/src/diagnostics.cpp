#include "srh/diagnostics.hpp"

#include <cmath>

#include "srh/errors.hpp"
#include "srh/kernels.hpp"
#include "srh/symbols.hpp"
#include "srh/transforms.hpp"

namespace srh {

double mass(const SpectralField& u) { return std::sqrt(l2_norm_sq(u)); }

double energy(const SpectralField& u, double gamma, double lambda) {
  u.require_space(Space::Physical, "energy");
  const std::size_t N = u.grid.size();

  SpectralField uhat = forward_transform(u);
  std::vector<double> wf = l2_weights(u.grid, Space::Fourier);
  const Multiplier lam = lambda_multiplier(u.grid);
  for (std::size_t i = 0; i < N; ++i) wf[i] *= lam.values[i];
  const double kinetic = 0.5 * kernels::weighted_norm_sq(uhat.data, wf);

  // (lambda/4) Int V |u|^2 through the unit-coupling nonlinearity V*u
  const SpectralField vu = hartree_nonlinearity(u, gamma, 1.0);
  const std::vector<double> wp = l2_weights(u.grid, Space::Physical);
  std::vector<double> integrand(N);
  for (std::size_t i = 0; i < N; ++i)
    integrand[i] = wp[i] * (std::conj(u.data[i]) * vu.data[i]).real();
  const double potential = kernels::sum(integrand);

  return kinetic + lambda / 4.0 * potential;
}

namespace {

// <x> at a physical grid point (min-image on periodic grids)
double space_bracket(const GridSpec& g, std::size_t i) {
  const double r = g.kind == GridKind::Radial3D ? g.radial_r(i)
                                                : g.min_image_radius(i);
  return std::sqrt(1.0 + r * r);
}

double h2_norm(const SpectralField& phys) {
  SpectralField fh = forward_transform(phys);
  std::vector<double> w = l2_weights(fh.grid, Space::Fourier);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double xi = fh.grid.mode_radius(i);
    const double b2 = 1.0 + xi * xi;
    w[i] *= b2 * b2;
  }
  return std::sqrt(kernels::weighted_norm_sq(fh.data, w));
}

}  // namespace

std::pair<double, double> weighted_profile_norms(const SpectralField& f) {
  f.require_space(Space::Physical, "weighted_profile_norms");
  const std::size_t N = f.grid.size();
  SpectralField w1 = f, w2 = f;
  for (std::size_t i = 0; i < N; ++i) {
    const double b = space_bracket(f.grid, i);
    w1.data[i] *= b;
    w2.data[i] *= b * b;
  }
  return {h2_norm(w1), h2_norm(w2)};
}

double fourier_weighted_sup(const SpectralField& fhat, double w) {
  fhat.require_space(Space::Fourier, "fourier_weighted_sup");
  constexpr double pi = 3.14159265358979323846;
  const GridSpec& g = fhat.grid;
  std::vector<double> weight(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi = g.mode_radius(i);
    weight[i] = std::pow(1.0 + xi, w);
    // radial slots store rho*uhat/(4pi); unwind to |uhat|
    if (g.kind == GridKind::Radial3D) weight[i] *= 4.0 * pi / xi;
  }
  if (g.kind == GridKind::Radial3D) weight.back() = 0.0;  // pinned slot
  return kernels::weighted_sup(fhat.data, weight);
}

double sobolev_norm(const SpectralField& u, int order) {
  if (order < 0) throw contract_error("sobolev_norm: order must be >= 0");
  SpectralField uhat = u.space == Space::Fourier ? u : forward_transform(u);
  std::vector<double> w = l2_weights(u.grid, Space::Fourier);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double xi = u.grid.mode_radius(i);
    w[i] *= std::pow(1.0 + xi * xi, order);
  }
  return std::sqrt(kernels::weighted_norm_sq(uhat.data, w));
}

DiagnosticsRecord make_record(const TrajectorySample& sample,
                              const EvolutionParams& p, int sobolev_order,
                              double w, double p0) {
  const SpectralField& fhat = sample.profile;
  fhat.require_space(Space::Fourier, "make_record");

  DiagnosticsRecord rec;
  rec.t = sample.t;
  rec.mass = sample.mass;

  SpectralField uhat = fhat;
  linear_propagator_apply(uhat, sample.t);
  SpectralField u = inverse_transform(uhat);
  rec.energy = energy(u, p.gamma, p.lambda);
  rec.linf_u = kernels::sup_abs(u.data);
  // |uhat| = |fhat| mode by mode, so H^N reads off the profile directly
  rec.sobolev_hN = sobolev_norm(fhat, sobolev_order);

  SpectralField f_phys = inverse_transform(fhat);
  const auto [w1, w2] = weighted_profile_norms(f_phys);
  rec.weight1_h2 = w1;
  rec.weight2_h2 = w2;
  rec.fourier_sup = fourier_weighted_sup(fhat, w);
  rec.fourier_sup_w4 = fourier_weighted_sup(fhat, 4.0);

  const double tw = 1.0 + rec.t;
  rec.xnorm = std::pow(tw, -p0) * (rec.sobolev_hN + rec.weight1_h2) +
              std::pow(tw, -2.0 * p0) * rec.weight2_h2 + rec.fourier_sup;
  return rec;
}

double xt_norm(const std::vector<DiagnosticsRecord>& records, double p0) {
  double sup = 0.0;
  for (const auto& r : records) {
    const double tw = 1.0 + r.t;
    const double v = std::pow(tw, -p0) * (r.sobolev_hN + r.weight1_h2) +
                     std::pow(tw, -2.0 * p0) * r.weight2_h2 + r.fourier_sup;
    sup = std::max(sup, v);
  }
  return sup;
}

FitResult fit_line(const std::vector<std::pair<double, double>>& xy) {
  if (xy.size() < 2) throw contract_error("fit_line: need at least 2 points");
  const double n = static_cast<double>(xy.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : xy) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw contract_error("fit_line: degenerate abscissae");
  FitResult fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (const auto& [x, y] : xy) {
    const double e = y - (fit.slope * x + fit.intercept);
    ss_res += e * e;
    ss_tot += (y - ybar) * (y - ybar);
  }
  fit.residual = std::sqrt(ss_res / n);
  fit.r2 = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

FitResult decay_rate_fit(const std::vector<std::pair<double, double>>& series,
                         double t_lo, double t_hi) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : series) {
    if (t < t_lo || t > t_hi) continue;
    if (!(v > 0.0))
      throw contract_error("decay_rate_fit: values must be positive");
    pts.emplace_back(std::log(t), std::log(v));
  }
  if (pts.size() < 5)
    throw contract_error("decay_rate_fit: need at least 5 points in window");
  return fit_line(pts);
}

}  // namespace srh
