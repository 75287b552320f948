#pragma once
#include <functional>
#include <vector>

namespace srh {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated Kronrod error estimate
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod 7-15 on [a,b]. Bisects until the local error estimate
// satisfies abs_tol + rel_tol * |whole integral estimate| split across
// subintervals, or max_depth is reached.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-12, double abs_tol = 0.0,
                     int max_depth = 48);

// Nodes and weights of the n-point Gauss-Legendre rule mapped to [a,b].
// Computed by Newton iteration on P_n; deterministic for fixed n.
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes,
                    std::vector<double>& weights);

}  // namespace srh
