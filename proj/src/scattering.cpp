#include "srh/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "srh/cutoffs.hpp"
#include "srh/errors.hpp"
#include "srh/kernels.hpp"
#include "srh/quadrature.hpp"

namespace srh {

namespace {

constexpr double pi = 3.14159265358979323846;

// |M(xi) d| with M = I/<xi> - xi xi^T/<xi>^3, the Jacobian of xi -> xi/<xi>
double image_length(const std::array<double, 3>& xi,
                    const std::array<double, 3>& d) {
  const double b =
      std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  const double dot = xi[0] * d[0] + xi[1] * d[1] + xi[2] * d[2];
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double c = d[k] / b - xi[k] * dot / (b * b * b);
    s += c * c;
  }
  return std::sqrt(s);
}

// Average of |M(xi) d|^{-1} over the mode cell. The radial reduction
// Int_cube |M d|^{-1} dd = Int_{S^2} |M w|^{-1} R(w)^2/2 dS is kinked along
// the cube-edge directions, so each face cone is pulled back to its face:
// with p on a face of the unit cube, dS = (1/2)|p|^{-3} dA and R = |p| give
// Int_{unit cube} = (1/4) sum_faces Int_face |M(p/|p|)|^{-1} |p|^{-1} dA,
// a smooth integrand. Scaling in the cell side a contributes a^2, so the
// average over the side-a cell is (unit-cube integral) / a.
double cell_average(const std::array<double, 3>& xi, double a) {
  static std::vector<double> nd, wt;
  static std::once_flag once;
  std::call_once(once, [] { gauss_legendre(32, -0.5, 0.5, nd, wt); });
  double acc = 0.0;
  for (int f = 0; f < 6; ++f) {
    const int axis = f / 2;
    const double face = f % 2 ? -0.5 : 0.5;
    for (std::size_t i = 0; i < nd.size(); ++i) {
      for (std::size_t j = 0; j < nd.size(); ++j) {
        std::array<double, 3> p;
        p[axis] = face;
        p[(axis + 1) % 3] = nd[i];
        p[(axis + 2) % 3] = nd[j];
        const double plen =
            std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        const std::array<double, 3> w{p[0] / plen, p[1] / plen, p[2] / plen};
        acc += wt[i] * wt[j] / (image_length(xi, w) * plen);
      }
    }
  }
  return acc / (4.0 * a);
}

// per-mode cell averages of one periodic grid, built once
const std::vector<double>& cached_cell_averages(const GridSpec& g) {
  static std::map<std::pair<int, double>, std::vector<double>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = cache.try_emplace({g.n, g.extent});
  if (fresh) {
    const double a = 2.0 * pi / g.extent;
    it->second.resize(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
      it->second[i] = cell_average(g.mode_vec(i), a);
  }
  return it->second;
}

}  // namespace

ScatteringState ScatteringState::create(const GridSpec& g, double alpha) {
  g.validate();
  if (!(alpha > 0.0))
    throw contract_error("scattering: alpha must be positive");
  ScatteringState st;
  st.grid = g;
  st.alpha = alpha;
  st.c0 = std::pow(2.0 * pi, -3);
  st.B.assign(g.size(), 0.0);
  return st;
}

double phi_s(double xi_radius, double s, double alpha) {
  if (!(alpha > 0.0) || xi_radius < 0.0 || s < 0.0)
    throw contract_error("phi_s: need alpha > 0, xi_radius >= 0, s >= 0");
  if (xi_radius == 0.0) return 1.0;
  if (s == 0.0) return 0.0;  // the s -> 0 limit for xi != 0
  return base_cutoff(xi_radius * std::pow(s, -alpha));
}

std::vector<double> correction_density(const SpectralField& uhat, double s,
                                       double alpha) {
  uhat.require_space(Space::Fourier, "correction_density");
  const GridSpec& g = uhat.grid;
  const std::size_t N = g.size();
  std::vector<double> out(N, 0.0);
  const double c0 = std::pow(2.0 * pi, -3);

  if (g.kind == GridKind::Radial3D) {
    // closed-form angular average Int_{S^2} |v_i - v_k w|^{-1} dS =
    // 4 pi / max(v_i, v_k) with v = rho/<rho> increasing in rho, so the k-sum
    // splits into prefix (v_k <= v_i, weight 1/v_i) and suffix (weight 1/v_k)
    std::vector<double> a(N), v(N);
    for (std::size_t i = 0; i < N; ++i) {
      a[i] = std::norm(uhat.data[i]);
      const double rho = g.radial_rho(i);
      v[i] = rho / std::sqrt(1.0 + rho * rho);
    }
    a[N - 1] = 0.0;  // pinned slot
    std::vector<double> prefix(N), suffix(N);
    double run = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      run += a[i];
      prefix[i] = run;
    }
    run = 0.0;
    for (std::size_t i = N; i-- > 0;) {
      suffix[i] = run;
      run += a[i] / v[i];
    }
    const double w = 8.0 * g.drho();
    for (std::size_t i = 0; i + 1 < N; ++i) {
      const double d = prefix[i] / v[i] + suffix[i];
      out[i] = phi_s(g.radial_rho(i), s, alpha) / (s + 1.0) * w * d;
    }
    return out;
  }

  const std::vector<double>& avg = cached_cell_averages(g);
  std::vector<double> amp(N);
  for (std::size_t i = 0; i < N; ++i) amp[i] = std::norm(uhat.data[i]);
  const double cell = g.mode_cell();
  for (std::size_t i = 0; i < N; ++i) {
    const auto xi = g.mode_vec(i);
    const double bi =
        std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
    double d = amp[i] * avg[i];
    for (std::size_t k = 0; k < N; ++k) {
      if (k == i || amp[k] == 0.0) continue;
      const auto sg = g.mode_vec(k);
      const double bk =
          std::sqrt(1.0 + sg[0] * sg[0] + sg[1] * sg[1] + sg[2] * sg[2]);
      double z = 0.0;
      for (int c = 0; c < 3; ++c) {
        const double e = xi[c] / bi - sg[c] / bk;
        z += e * e;
      }
      d += amp[k] / std::sqrt(z);
    }
    out[i] =
        c0 * phi_s(g.mode_radius(i), s, alpha) / (s + 1.0) * cell * d;
  }
  return out;
}

double correction_density(const SpectralField& uhat, std::size_t mode_index,
                          double s, double alpha) {
  uhat.require_space(Space::Fourier, "correction_density");
  const GridSpec& g = uhat.grid;
  const std::size_t N = g.size();
  if (mode_index >= N) throw contract_error("correction_density: bad mode");
  const double c0 = std::pow(2.0 * pi, -3);

  if (g.kind == GridKind::Radial3D) {
    if (mode_index + 1 == N) return 0.0;  // pinned slot
    const double rho_i = g.radial_rho(mode_index);
    const double vi = rho_i / std::sqrt(1.0 + rho_i * rho_i);
    double d = 0.0;
    for (std::size_t k = 0; k + 1 < N; ++k) {
      const double rho = g.radial_rho(k);
      const double vk = rho / std::sqrt(1.0 + rho * rho);
      d += std::norm(uhat.data[k]) / std::max(vi, vk);
    }
    return phi_s(rho_i, s, alpha) / (s + 1.0) * 8.0 * g.drho() * d;
  }

  const std::vector<double>& avg = cached_cell_averages(g);
  const auto xi = g.mode_vec(mode_index);
  const double bi =
      std::sqrt(1.0 + xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
  double d = std::norm(uhat.data[mode_index]) * avg[mode_index];
  for (std::size_t k = 0; k < N; ++k) {
    if (k == mode_index) continue;
    const auto sg = g.mode_vec(k);
    const double bk =
        std::sqrt(1.0 + sg[0] * sg[0] + sg[1] * sg[1] + sg[2] * sg[2]);
    double z = 0.0;
    for (int c = 0; c < 3; ++c) {
      const double e = xi[c] / bi - sg[c] / bk;
      z += e * e;
    }
    d += std::norm(uhat.data[k]) / std::sqrt(z);
  }
  return c0 * phi_s(g.mode_radius(mode_index), s, alpha) / (s + 1.0) *
         g.mode_cell() * d;
}

void accumulate_B(ScatteringState& st, const TrajectorySample& sample) {
  if (!(sample.profile.grid == st.grid))
    throw contract_error("accumulate_B: grid mismatch");
  std::vector<double> d =
      correction_density(sample.profile, sample.t, st.alpha);
  for (double v : d)
    if (!(v >= 0.0))
      throw invariant_error("accumulate_B: correction density not >= 0 at t " +
                            std::to_string(sample.t));
  if (!st.have_last) {
    st.t_last = sample.t;
    st.last_density = std::move(d);
    st.have_last = true;
    return;
  }
  const double dt = sample.t - st.t_last;
  if (dt < 0.0)
    throw invariant_error("accumulate_B: samples must advance in time");
  if (dt == 0.0) return;
  for (std::size_t i = 0; i < st.B.size(); ++i) {
    st.B[i] += dt / 2.0 * (st.last_density[i] + d[i]);
    if (!std::isfinite(st.B[i]))
      throw invariant_error("accumulate_B: B not finite");
  }
  st.t_last = sample.t;
  st.last_density = std::move(d);
}

void accumulate_B(ScatteringState& st,
                  const std::vector<TrajectorySample>& samples) {
  for (const auto& s : samples) accumulate_B(st, s);
}

SpectralField modified_profile(const SpectralField& fhat,
                               const ScatteringState& st) {
  fhat.require_space(Space::Fourier, "modified_profile");
  if (!(fhat.grid == st.grid))
    throw contract_error("modified_profile: grid mismatch");
  SpectralField g = fhat;
  kernels::phase_rotate(g.data, st.B, -1.0);  // g = e^{-iB} fhat
  return g;
}

namespace {

// common shape checks for snapshot sequences
template <typename Seq>
void require_snapshots(const Seq& snaps, Space space, const char* where) {
  if (snaps.size() < 3)
    throw contract_error(std::string(where) + ": need at least 3 snapshots");
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    snaps[i].second.require_space(space, where);
    if (!(snaps[i].second.grid == snaps[0].second.grid))
      throw contract_error(std::string(where) + ": grid mismatch");
    if (i > 0 && !(snaps[i].first > snaps[i - 1].first))
      throw contract_error(std::string(where) +
                           ": snapshot times must increase");
  }
}

// fit log value against log t1 when every value is positive; otherwise
// (an exactly frozen sequence) leave the zero fit
MonitorResult finish_monitor(std::vector<PairRow> rows) {
  MonitorResult out;
  out.rows = std::move(rows);
  std::vector<std::pair<double, double>> xy;
  for (const auto& r : out.rows) {
    if (!(r.value > 0.0)) return out;
    xy.emplace_back(std::log(r.t1), std::log(r.value));
  }
  out.fit = fit_line(xy);
  return out;
}

}  // namespace

MonitorResult scattering_monitor(
    const std::vector<std::pair<double, SpectralField>>& g_snapshots,
    double w) {
  require_snapshots(g_snapshots, Space::Fourier, "scattering_monitor");
  const GridSpec& g = g_snapshots[0].second.grid;
  std::vector<double> weight(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double xi = g.mode_radius(i);
    weight[i] = std::pow(1.0 + xi, w);
    if (g.kind == GridKind::Radial3D) weight[i] *= 4.0 * pi / xi;
  }
  if (g.kind == GridKind::Radial3D) weight.back() = 0.0;

  std::vector<PairRow> rows;
  for (std::size_t i = 0; i + 1 < g_snapshots.size(); ++i) {
    SpectralField diff = g_snapshots[i + 1].second;
    for (std::size_t k = 0; k < diff.data.size(); ++k)
      diff.data[k] -= g_snapshots[i].second.data[k];
    rows.push_back({g_snapshots[i].first, g_snapshots[i + 1].first,
                    kernels::weighted_sup(diff.data, weight)});
  }
  return finish_monitor(std::move(rows));
}

DriftResult naive_profile_drift(
    const std::vector<std::pair<double, SpectralField>>& fhat_snapshots,
    std::size_t mode_index) {
  require_snapshots(fhat_snapshots, Space::Fourier, "naive_profile_drift");
  DriftResult out;
  std::vector<std::pair<double, double>> xy;
  double prev = 0.0;
  for (std::size_t i = 0; i < fhat_snapshots.size(); ++i) {
    const auto& [t, f] = fhat_snapshots[i];
    if (!(t > 0.0))
      throw contract_error("naive_profile_drift: need t > 0 for log t");
    if (mode_index >= f.data.size())
      throw contract_error("naive_profile_drift: bad mode");
    const std::complex<double> z = f.data[mode_index];
    if (std::abs(z) == 0.0)
      throw contract_error("naive_profile_drift: zero amplitude at the probe");
    const double raw = std::arg(z);
    double theta;
    if (i == 0) {
      theta = raw;
    } else {
      double delta = raw - std::remainder(prev, 2.0 * pi);
      delta = std::remainder(delta, 2.0 * pi);
      if (std::abs(delta) > 0.9 * pi)
        throw invariant_error(
            "naive_profile_drift: rotation between snapshots exceeds 0.9 pi, "
            "unwrap ambiguous");
      theta = prev + delta;
    }
    out.phases.push_back(theta);
    xy.emplace_back(std::log(t), theta);
    prev = theta;
  }
  const FitResult fit = fit_line(xy);
  out.slope = fit.slope;
  out.intercept = fit.intercept;
  out.r2 = fit.r2;
  return out;
}

MonitorResult linear_scattering_monitor(
    const std::vector<std::pair<double, SpectralField>>& f_snapshots) {
  require_snapshots(f_snapshots, Space::Physical, "linear_scattering_monitor");
  const GridSpec& g = f_snapshots[0].second.grid;
  std::vector<double> weight = l2_weights(g, Space::Physical);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.kind == GridKind::Radial3D ? g.radial_r(i)
                                                  : g.min_image_radius(i);
    const double b2 = 1.0 + r * r;
    weight[i] *= b2 * b2;  // L2(<x>^4 dx)
  }
  std::vector<PairRow> rows;
  for (std::size_t i = 0; i + 1 < f_snapshots.size(); ++i) {
    SpectralField diff = f_snapshots[i + 1].second;
    for (std::size_t k = 0; k < diff.data.size(); ++k)
      diff.data[k] -= f_snapshots[i].second.data[k];
    rows.push_back({f_snapshots[i].first, f_snapshots[i + 1].first,
                    std::sqrt(kernels::weighted_norm_sq(diff.data, weight))});
  }
  return finish_monitor(std::move(rows));
}

}  // namespace srh
