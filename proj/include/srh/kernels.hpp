#pragma once
#include <complex>
#include <cstddef>
#include <span>

// Hot array loops shared by the spectral core and the integrator. Every
// function here has a serial twin in srh::kernels::ref with identical
// semantics; the parallel versions must agree with the twins bit for bit.
//
// Reductions are blocked: each reduction_block-sized chunk is summed serially
// with Neumaier compensation, then the per-block partials are combined in
// index order. Parallelism distributes whole blocks, so the rounding sequence
// is independent of the thread count.
namespace srh::kernels {

using cplx = std::complex<double>;

inline constexpr std::size_t reduction_block = 4096;

double sum(std::span<const double> v);
// sum_i w[i] * |a[i]|^2
double weighted_norm_sq(std::span<const cplx> a, std::span<const double> w);
// max_i w[i] * |a[i]|
double weighted_sup(std::span<const cplx> a, std::span<const double> w);
double sup_abs(std::span<const cplx> a);
bool all_finite(std::span<const cplx> a);

void scale(std::span<cplx> a, cplx c);
void multiply_real(std::span<cplx> a, std::span<const double> m);
// a[i] *= exp(i * t * theta[i])
void phase_rotate(std::span<cplx> a, std::span<const double> theta, double t);
void modulus_squared(std::span<const cplx> a, std::span<double> out);
// out[i] = lambda * pot[i] * u[i]
void potential_apply(std::span<const double> pot, std::span<const cplx> u,
                     double lambda, std::span<cplx> out);
// out[i] = y[i] + c * k[i]
void linear_combine(std::span<const cplx> y, double c, std::span<const cplx> k,
                    std::span<cplx> out);
// y[i] += dt/6 * (k1[i] + 2 k2[i] + 2 k3[i] + k4[i])
void rk4_combine(std::span<cplx> y, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4, double dt);

namespace ref {
double sum(std::span<const double> v);
double weighted_norm_sq(std::span<const cplx> a, std::span<const double> w);
double weighted_sup(std::span<const cplx> a, std::span<const double> w);
double sup_abs(std::span<const cplx> a);
bool all_finite(std::span<const cplx> a);
void scale(std::span<cplx> a, cplx c);
void multiply_real(std::span<cplx> a, std::span<const double> m);
void phase_rotate(std::span<cplx> a, std::span<const double> theta, double t);
void modulus_squared(std::span<const cplx> a, std::span<double> out);
void potential_apply(std::span<const double> pot, std::span<const cplx> u,
                     double lambda, std::span<cplx> out);
void linear_combine(std::span<const cplx> y, double c, std::span<const cplx> k,
                    std::span<cplx> out);
void rk4_combine(std::span<cplx> y, std::span<const cplx> k1,
                 std::span<const cplx> k2, std::span<const cplx> k3,
                 std::span<const cplx> k4, double dt);
}  // namespace ref

}  // namespace srh::kernels
