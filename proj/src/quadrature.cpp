#include "srh/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "srh/errors.hpp"

namespace srh {
namespace {

// Gauss-Kronrod 7-15 abscissae/weights on [-1,1], nonnegative half.
// Even-indexed Kronrod nodes coincide with the embedded Gauss-7 nodes.
constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993945, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
constexpr double wg[4] = {0.1294849661688697, 0.2797053914892767,
                          0.3818300505051189, 0.4179591836734694};

struct Panel {
  double a, b;
  double value;  // Kronrod value
  double err;    // |Kronrod - Gauss|
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b,
                 int& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double k15 = 0.0, g7 = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double fv = (i == 7) ? f(c)
                               : f(c - h * xgk[i]) + f(c + h * xgk[i]);
    k15 += wgk[i] * fv;
    if (i % 2 == 1) g7 += wg[i / 2] * fv;
  }
  evals += 15;
  return {a, b, k15 * h, std::abs((k15 - g7) * h)};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol, int max_depth) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0};
    QuadResult r = integrate(f, b, a, rel_tol, abs_tol, max_depth);
    r.value = -r.value;
    return r;
  }
  QuadResult out;
  std::vector<Panel> panels;
  panels.push_back(eval_panel(f, a, b, out.evaluations));
  // Split the worst panel until the summed error estimate meets tolerance.
  const std::size_t max_panels =
      std::size_t(1) << std::min(max_depth, 14);
  while (panels.size() < max_panels) {
    double total = 0.0, err = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].err;
      if (panels[i].err > panels[worst].err) worst = i;
    }
    if (err <= std::max(abs_tol, rel_tol * std::abs(total)) * 0.5 ||
        panels[worst].err == 0.0)
      break;
    const Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    panels[worst] = eval_panel(f, p.a, mid, out.evaluations);
    panels.push_back(eval_panel(f, mid, p.b, out.evaluations));
  }
  // Final pass in interval order keeps the summation order fixed.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.err;
  }
  return out;
}

void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n < 1) throw contract_error("gauss_legendre: need n >= 1");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    nodes[i] = mid + half * nodes[i];
    weights[i] *= half;
  }
}

}  // namespace srh
