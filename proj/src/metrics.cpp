#include "oscatter/metrics.hpp"

#include <cmath>

#include "oscatter/finite_difference.hpp"

namespace oscatter {

double weighted_sobolev_norm(const SlowField& psi, const NormSpec& spec) {
  if (spec.order < 0 || spec.order > 2)
    throw OutOfDomain("norm order must be in {0, 1, 2}");
  if (!(spec.gamma >= 0.0)) throw OutOfDomain("gamma must be >= 0");

  double total = 0.0;
  SlowField level = psi;
  for (int k = 0; k <= spec.order; ++k) {
    if (k > 0) level = slow_derivative(psi, k);
    SlowField weighted(psi.grid);
    for (int i = 0; i < psi.size(); ++i) {
      const double x = psi.grid.node(i);
      weighted[i] = std::norm(level[i]) / std::pow(1.0 + x * x, spec.gamma);
    }
    total += trapezoid_window(weighted, spec.window).real();
  }
  return std::sqrt(total);
}

double sup_norm(const SlowField& psi, double window) {
  double mx = 0.0;
  for (int i = 0; i < psi.size(); ++i) {
    if (std::abs(psi.grid.node(i)) > window * (1.0 + 1e-12)) continue;
    mx = std::max(mx, std::abs(psi[i]));
  }
  return mx;
}

RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& err) {
  if (eps.size() != err.size()) throw DegenerateFit("eps/err length mismatch");
  const int n = static_cast<int>(eps.size());
  if (n < 3) throw DegenerateFit("rate fit needs at least 3 samples");
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(eps[i] > 0.0) || !(err[i] > 0.0))
      throw DegenerateFit("rate fit needs positive eps and err");
    lx[i] = std::log(eps[i]);
    ly[i] = std::log(err[i]);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dx = lx[i] - mx, dy = ly[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw DegenerateFit("all eps coincide");
  RateFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.samples = n;
  return fit;
}

}  // namespace oscatter
