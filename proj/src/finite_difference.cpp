#include "oscatter/finite_difference.hpp"

#include <algorithm>
#include <cmath>

namespace oscatter {

std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  if (m < 0 || n <= m) throw GridTooCoarse("stencil too small for derivative order");
  std::vector<std::vector<double>> C(n, std::vector<double>(m + 1, 0.0));
  C[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          C[i][k] = c1 * (k * C[i - 1][k - 1] - c5 * C[i - 1][k]) / c2;
        C[i][0] = -c1 * c5 * C[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) C[j][k] = (c4 * C[j][k] - k * C[j][k - 1]) / c3;
      C[j][0] = c4 * C[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = C[j][m];
  return w;
}

namespace {

// Applies a stencil whose window starts at node `start`.
Complex apply_stencil(const SlowField& f, int start, const std::vector<double>& w) {
  Complex s(0.0, 0.0);
  for (int j = 0; j < static_cast<int>(w.size()); ++j) s += w[j] * f[start + j];
  return s;
}

}  // namespace

SlowField slow_derivative(const SlowField& f, int order) {
  if (order != 1 && order != 2)
    throw OutOfDomain("slow_derivative supports orders 1 and 2");
  const int n = f.size();
  const int edge_window = (order == 1) ? 7 : 8;
  if (n < edge_window) throw GridTooCoarse("grid cannot host an order-6 stencil");

  const double h = f.grid.spacing();
  // Centered 7-point weights on the unit-spaced template, scaled by h.
  std::vector<double> tmpl(7);
  for (int j = 0; j < 7; ++j) tmpl[j] = (j - 3);
  std::vector<double> center = fd_weights(0.0, tmpl, order);
  const double scale = (order == 1) ? 1.0 / h : 1.0 / (h * h);
  for (double& w : center) w *= scale;

  SlowField out(f.grid);
  for (int i = 3; i + 3 < n; ++i) out[i] = apply_stencil(f, i - 3, center);

  // One-sided windows at the edges, weights per node (still order 6).
  for (int i = 0; i < 3; ++i) {
    std::vector<double> nodes(edge_window);
    for (int j = 0; j < edge_window; ++j) nodes[j] = f.grid.node(j);
    std::vector<double> w = fd_weights(f.grid.node(i), nodes, order);
    out[i] = apply_stencil(f, 0, w);
  }
  for (int i = n - 3; i < n; ++i) {
    if (i < 3) continue;
    std::vector<double> nodes(edge_window);
    const int start = n - edge_window;
    for (int j = 0; j < edge_window; ++j) nodes[j] = f.grid.node(start + j);
    std::vector<double> w = fd_weights(f.grid.node(i), nodes, order);
    out[i] = apply_stencil(f, start, w);
  }
  return out;
}

Complex interpolate(const SlowField& f, double x) {
  const SlowGrid& g = f.grid;
  if (!g.contains(x)) throw OutOfDomain("interpolation point outside grid");
  const int n = g.n;
  if (n < 7) throw GridTooCoarse("interpolation needs at least 7 nodes");
  const double h = g.spacing();
  // Bracketing interval, then a 7-node window centered on it.
  int i = static_cast<int>(std::floor((x + g.half_width) / h));
  i = std::clamp(i, 0, n - 2);
  int start = std::clamp(i - 3, 0, n - 7);

  // Barycentric weights for 7 uniform nodes: w_j = (-1)^j C(6, j).
  static const double bary[7] = {1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0};
  Complex num(0.0, 0.0);
  double den = 0.0;
  for (int j = 0; j < 7; ++j) {
    const double dx = x - g.node(start + j);
    if (dx == 0.0) return f[start + j];
    const double w = bary[j] / dx;
    num += w * f[start + j];
    den += w;
  }
  return num / den;
}

std::vector<Complex> interpolate(const SlowField& f, const std::vector<double>& xs) {
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = interpolate(f, xs[i]);
  return out;
}

}  // namespace oscatter
