#include "srh/cutoffs.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <vector>

#include "srh/errors.hpp"
#include "srh/quadrature.hpp"

namespace srh {
namespace {

constexpr double lo = 1.25;   // cutoff is 1 below this radius
constexpr double hi = 1.6;    // and 0 above this one
constexpr int table_cells = 16384;

// The mollifier driving the smoothstep; positive on (lo,hi), flat-zero at both
// ends to all orders.
double bump(double s) {
  if (s <= lo || s >= hi) return 0.0;
  return std::exp(-1.0 / ((s - lo) * (hi - s)));
}

struct Table {
  std::array<double, table_cells + 1> value;  // cutoff at lo + i*step
  double step;
};

const Table& table() {
  static Table tab;
  static std::once_flag once;
  std::call_once(once, [] {
    tab.step = (hi - lo) / table_cells;
    // Right-to-left cumulative of the bump over the cells; each cell by a
    // fixed Gauss-Legendre 15 rule (the integrand is smooth, the cells tiny).
    std::vector<double> gl_x, gl_w;
    gauss_legendre(15, 0.0, 1.0, gl_x, gl_w);
    std::vector<double> cell(table_cells);
    for (int i = 0; i < table_cells; ++i) {
      const double a = lo + i * tab.step;
      double acc = 0.0;
      for (int q = 0; q < 15; ++q) acc += gl_w[q] * bump(a + gl_x[q] * tab.step);
      cell[i] = acc * tab.step;
    }
    tab.value[table_cells] = 0.0;
    for (int i = table_cells - 1; i >= 0; --i)
      tab.value[i] = tab.value[i + 1] + cell[i];
    const double total = tab.value[0];
    for (double& v : tab.value) v /= total;
  });
  return tab;
}

}  // namespace

double base_cutoff(double s) {
  const double r = std::abs(s);
  if (r <= lo) return 1.0;
  if (r >= hi) return 0.0;
  const Table& tab = table();
  const double u = (r - lo) / tab.step;
  int i = (int)u;
  if (i > table_cells - 1) i = table_cells - 1;
  // 4-point cubic Lagrange on the uniform nodes around the cell.
  int base = i - 1;
  if (base < 0) base = 0;
  if (base > table_cells - 3) base = table_cells - 3;
  const double x = u - base;
  double out = 0.0;
  for (int j = 0; j < 4; ++j) {
    double lj = 1.0;
    for (int m = 0; m < 4; ++m)
      if (m != j) lj *= (x - m) / (j - m);
    out += lj * tab.value[base + j];
  }
  // Interpolation can overshoot [0,1] by well under the documented 1e-10.
  if (out < 0.0) out = 0.0;
  if (out > 1.0) out = 1.0;
  return out;
}

double base_cutoff_exact(double s) {
  const double r = std::abs(s);
  if (r <= lo) return 1.0;
  if (r >= hi) return 0.0;
  static const double total = integrate([](double x) { return bump(x); }, lo,
                                        hi, 1e-14, 0.0)
                                  .value;
  return integrate([](double x) { return bump(x); }, r, hi, 1e-14, 0.0).value /
         total;
}

double phi_k(double r, int k) {
  return base_cutoff(std::ldexp(std::abs(r), -k)) -
         base_cutoff(std::ldexp(std::abs(r), -(k - 1)));
}

double phi_k(const std::array<double, 3>& x, int k) {
  return phi_k(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]), k);
}

double phi_interval(double r, int a, int b) {
  if (a > b) throw contract_error("phi_interval: empty interval");
  // Telescopes: sum_{k=a..b} phi_k = phi(r/2^b) - phi(r/2^{a-1}).
  return base_cutoff(std::ldexp(std::abs(r), -b)) -
         base_cutoff(std::ldexp(std::abs(r), -(a - 1)));
}

double phi_k_floor(double r, int k, int m) {
  if (m > k) throw contract_error("phi_k_floor: floor m exceeds k");
  if (k == m) return base_cutoff(std::ldexp(std::abs(r), -m));
  return phi_k(r, k);
}

SpectralField project_band(const SpectralField& f, int k) {
  f.require_space(Space::Fourier, "project_band");
  SpectralField out = f;
  for (std::size_t i = 0; i < out.data.size(); ++i)
    out.data[i] *= phi_k(out.grid.mode_radius(i), k);
  return out;
}

}  // namespace srh
