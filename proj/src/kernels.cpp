#include "srh/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace srh::kernels {
namespace {

// Parallelizing tiny arrays costs more than it saves.
constexpr std::size_t par_threshold = 1 << 14;

// Neumaier-compensated sum of one block; the rounding sequence is fixed by
// the index order.
template <class F>
double block_partial(std::size_t lo, std::size_t hi, F&& term) {
  double s = 0.0, comp = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double v = term(i);
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
      comp += (s - t) + v;
    else
      comp += (v - t) + s;
    s = t;
  }
  return s + comp;
}

template <class F>
double blocked_sum(std::size_t size, bool parallel, F&& term) {
  const std::size_t nblocks = (size + reduction_block - 1) / reduction_block;
  if (nblocks <= 1) return block_partial(0, size, term);
  std::vector<double> partial(nblocks);
  if (parallel && size >= par_threshold) {
#pragma omp parallel for schedule(static)
    for (long long b = 0; b < (long long)nblocks; ++b) {
      const std::size_t lo = (std::size_t)b * reduction_block;
      partial[b] = block_partial(lo, std::min(lo + reduction_block, size), term);
    }
  } else {
    for (std::size_t b = 0; b < nblocks; ++b) {
      const std::size_t lo = b * reduction_block;
      partial[b] = block_partial(lo, std::min(lo + reduction_block, size), term);
    }
  }
  return block_partial(0, nblocks, [&](std::size_t b) { return partial[b]; });
}

double abs2(cplx z) {
  return z.real() * z.real() + z.imag() * z.imag();
}

}  // namespace

double sum(std::span<const double> v) {
  return blocked_sum(v.size(), true, [&](std::size_t i) { return v[i]; });
}

double weighted_norm_sq(std::span<const cplx> a, std::span<const double> w) {
  return blocked_sum(a.size(), true,
                     [&](std::size_t i) { return w[i] * abs2(a[i]); });
}

double weighted_sup(std::span<const cplx> a, std::span<const double> w) {
  double m = 0.0;
  const long long n = (long long)a.size();
#pragma omp parallel for schedule(static) reduction(max : m) if (a.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) m = std::max(m, w[i] * std::abs(a[i]));
  return m;
}

double sup_abs(std::span<const cplx> a) {
  double m = 0.0;
  const long long n = (long long)a.size();
#pragma omp parallel for schedule(static) reduction(max : m) if (a.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

bool all_finite(std::span<const cplx> a) {
  bool ok = true;
  const long long n = (long long)a.size();
#pragma omp parallel for schedule(static) reduction(&& : ok) if (a.size() >= par_threshold)
  for (long long i = 0; i < n; ++i)
    ok = ok && std::isfinite(a[i].real()) && std::isfinite(a[i].imag());
  return ok;
}

void scale(std::span<cplx> a, cplx c) {
  const long long n = (long long)a.size();
#pragma omp parallel for schedule(static) if (a.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) a[i] *= c;
}

void multiply_real(std::span<cplx> a, std::span<const double> m) {
  const long long n = (long long)a.size();
#pragma omp parallel for schedule(static) if (a.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) a[i] *= m[i];
}

void phase_rotate(std::span<cplx> a, std::span<const double> theta, double t) {
  const long long n = (long long)a.size();
#pragma omp parallel for schedule(static) if (a.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) {
    const double ph = t * theta[i];
    a[i] *= cplx(std::cos(ph), std::sin(ph));
  }
}

void modulus_squared(std::span<const cplx> a, std::span<double> out) {
  const long long n = (long long)a.size();
#pragma omp parallel for schedule(static) if (a.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) out[i] = abs2(a[i]);
}

void potential_apply(std::span<const double> pot, std::span<const cplx> u,
                     double lambda, std::span<cplx> out) {
  const long long n = (long long)u.size();
#pragma omp parallel for schedule(static) if (u.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) out[i] = lambda * pot[i] * u[i];
}

void linear_combine(std::span<const cplx> y, double c, std::span<const cplx> k,
                    std::span<cplx> out) {
  const long long n = (long long)y.size();
#pragma omp parallel for schedule(static) if (y.size() >= par_threshold)
  for (long long i = 0; i < n; ++i) out[i] = y[i] + c * k[i];
}

void rk4_combine(std::span<cplx> y, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4, double dt) {
  const double c = dt / 6.0;
  const long long n = (long long)y.size();
#pragma omp parallel for schedule(static) if (y.size() >= par_threshold)
  for (long long i = 0; i < n; ++i)
    y[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

namespace ref {

double sum(std::span<const double> v) {
  return blocked_sum(v.size(), false, [&](std::size_t i) { return v[i]; });
}

double weighted_norm_sq(std::span<const cplx> a, std::span<const double> w) {
  return blocked_sum(a.size(), false,
                     [&](std::size_t i) { return w[i] * abs2(a[i]); });
}

double weighted_sup(std::span<const cplx> a, std::span<const double> w) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, w[i] * std::abs(a[i]));
  return m;
}

double sup_abs(std::span<const cplx> a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

bool all_finite(std::span<const cplx> a) {
  for (const cplx& z : a)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void scale(std::span<cplx> a, cplx c) {
  for (cplx& z : a) z *= c;
}

void multiply_real(std::span<cplx> a, std::span<const double> m) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= m[i];
}

void phase_rotate(std::span<cplx> a, std::span<const double> theta, double t) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ph = t * theta[i];
    a[i] *= cplx(std::cos(ph), std::sin(ph));
  }
}

void modulus_squared(std::span<const cplx> a, std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = abs2(a[i]);
}

void potential_apply(std::span<const double> pot, std::span<const cplx> u,
                     double lambda, std::span<cplx> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = lambda * pot[i] * u[i];
}

void linear_combine(std::span<const cplx> y, double c, std::span<const cplx> k,
                    std::span<cplx> out) {
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + c * k[i];
}

void rk4_combine(std::span<cplx> y, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4, double dt) {
  const double c = dt / 6.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] += c * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
}

}  // namespace ref

}  // namespace srh::kernels
