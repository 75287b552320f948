#include "srh/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "srh/errors.hpp"
#include "srh/kernels.hpp"
#include "srh/symbols.hpp"

namespace srh {
namespace {

// The FFTW planner mutates global state; creation is serialized. Execution
// reuses plan-owned buffers, serialized per plan. FFTW_ESTIMATE everywhere:
// measured planning picks algorithms by timing and would break bit-identical
// reruns.
std::mutex planner_mutex;

struct RadialPlan {
  int m = 0;  // transform length n-1
  double* buf = nullptr;
  fftw_plan plan = nullptr;
  std::mutex use;
};

RadialPlan& radial_plan(int n) {
  static std::map<int, std::unique_ptr<RadialPlan>> cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lk(cache_mutex);
  auto& slot = cache[n];
  if (!slot) {
    slot = std::make_unique<RadialPlan>();
    slot->m = n - 1;
    std::lock_guard<std::mutex> plk(planner_mutex);
    slot->buf = fftw_alloc_real(slot->m);
    slot->plan = fftw_plan_r2r_1d(slot->m, slot->buf, slot->buf, FFTW_RODFT00,
                                  FFTW_ESTIMATE);
  }
  return *slot;
}

struct PeriodicPlan {
  std::size_t size = 0;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;
  std::mutex use;
};

PeriodicPlan& periodic_plan(int n, int sign) {
  static std::map<std::pair<int, int>, std::unique_ptr<PeriodicPlan>> cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lk(cache_mutex);
  auto& slot = cache[{n, sign}];
  if (!slot) {
    slot = std::make_unique<PeriodicPlan>();
    slot->size = (std::size_t)n * n * n;
    std::lock_guard<std::mutex> plk(planner_mutex);
    slot->in = fftw_alloc_complex(slot->size);
    slot->out = fftw_alloc_complex(slot->size);
    slot->plan =
        fftw_plan_dft_3d(n, n, n, slot->in, slot->out, sign, FFTW_ESTIMATE);
  }
  return *slot;
}

// DST-I of the real and imaginary parts in place of a complex array.
// RODFT00 of length m is its own inverse up to the factor 2(m+1) = 2n.
void radial_dst(int n, std::vector<std::complex<double>>& a) {
  RadialPlan& rp = radial_plan(n);
  std::lock_guard<std::mutex> lk(rp.use);
  for (int part = 0; part < 2; ++part) {
    for (int i = 0; i < rp.m; ++i)
      rp.buf[i] = part == 0 ? a[i].real() : a[i].imag();
    fftw_execute(rp.plan);
    for (int i = 0; i < rp.m; ++i) {
      if (part == 0)
        a[i] = {rp.buf[i], a[i].imag()};
      else
        a[i] = {a[i].real(), rp.buf[i]};
    }
  }
}

void periodic_fft(int n, int sign, std::vector<std::complex<double>>& a) {
  PeriodicPlan& pp = periodic_plan(n, sign);
  std::lock_guard<std::mutex> lk(pp.use);
  for (std::size_t i = 0; i < pp.size; ++i) {
    pp.in[i][0] = a[i].real();
    pp.in[i][1] = a[i].imag();
  }
  fftw_execute(pp.plan);
  for (std::size_t i = 0; i < pp.size; ++i) a[i] = {pp.out[i][0], pp.out[i][1]};
}

const std::vector<double>& cached_lambda(const GridSpec& g) {
  static std::map<std::tuple<int, int, double>, std::unique_ptr<std::vector<double>>>
      cache;
  static std::mutex cache_mutex;
  std::lock_guard<std::mutex> lk(cache_mutex);
  auto& slot = cache[{(int)g.kind, g.n, g.extent}];
  if (!slot)
    slot = std::make_unique<std::vector<double>>(lambda_multiplier(g).values);
  return *slot;
}

}  // namespace

SpectralField forward_transform(const SpectralField& f) {
  f.require_space(Space::Physical, "forward_transform");
  f.grid.validate();
  SpectralField out = f;
  out.space = Space::Fourier;
  if (f.grid.kind == GridKind::Radial3D) {
    const int n = f.grid.n;
    // F_k = (h/2) * DST[r u(r)]_k realizes rho uhat(rho)/(4pi); the k = n
    // mode vanishes at every node and stays zero.
    for (int i = 0; i < n - 1; ++i) out.data[i] *= f.grid.radial_r(i);
    out.data[n - 1] = 0.0;
    radial_dst(n, out.data);
    kernels::scale(out.data, 0.5 * f.grid.dr());
    out.data[n - 1] = 0.0;
  } else {
    periodic_fft(f.grid.n, FFTW_FORWARD, out.data);
    const double h = f.grid.dx();
    kernels::scale(out.data, h * h * h);
  }
  return out;
}

SpectralField inverse_transform(const SpectralField& f) {
  f.require_space(Space::Fourier, "inverse_transform");
  f.grid.validate();
  SpectralField out = f;
  out.space = Space::Physical;
  if (f.grid.kind == GridKind::Radial3D) {
    const int n = f.grid.n;
    out.data[n - 1] = 0.0;
    radial_dst(n, out.data);
    // DST twice is 2n * identity; with the forward's h/2 the remaining
    // divisor is r_j * (n h) = r_j * extent.
    for (int i = 0; i < n - 1; ++i)
      out.data[i] /= f.grid.radial_r(i) * f.grid.extent;
    out.data[n - 1] = 0.0;
  } else {
    periodic_fft(f.grid.n, FFTW_BACKWARD, out.data);
    const double L = f.grid.extent;
    kernels::scale(out.data, 1.0 / (L * L * L));
  }
  return out;
}

void linear_propagator_apply(SpectralField& f, double t) {
  if (!std::isfinite(t))
    throw contract_error("linear_propagator_apply: non-finite t");
  f.require_space(Space::Fourier, "linear_propagator_apply");
  kernels::phase_rotate(f.data, cached_lambda(f.grid), -t);
}

}  // namespace srh
