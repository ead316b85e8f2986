#include "oscatter/slow_grid.hpp"

#include <cmath>

namespace oscatter {

SlowGrid::SlowGrid(double X, int nodes) : half_width(X), n(nodes) {
  if (!(X > 0.0)) throw ConfigInvalid("grid half-width must be positive");
  if (n < 2) throw GridTooCoarse("grid needs at least 2 nodes");
}

std::vector<double> SlowGrid::nodes() const {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = node(i);
  return xs;
}

bool SlowGrid::contains(double x) const {
  return std::abs(x) <= half_width * (1.0 + 1e-12);
}

SlowField::SlowField(SlowGrid g, std::vector<Complex> v)
    : grid(g), values(std::move(v)) {
  if (static_cast<int>(values.size()) != grid.n)
    throw GridMismatch("value count does not match grid");
}

double SlowField::max_abs() const {
  double mx = 0.0;
  for (const Complex& c : values) mx = std::max(mx, std::abs(c));
  return mx;
}

bool SlowField::all_finite() const {
  for (const Complex& c : values)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

SlowField& SlowField::operator+=(const SlowField& o) {
  require_same_grid(*this, o);
  for (int i = 0; i < size(); ++i) values[i] += o.values[i];
  return *this;
}

SlowField& SlowField::operator-=(const SlowField& o) {
  require_same_grid(*this, o);
  for (int i = 0; i < size(); ++i) values[i] -= o.values[i];
  return *this;
}

SlowField& SlowField::operator*=(Complex s) {
  for (Complex& c : values) c *= s;
  return *this;
}

void require_same_grid(const SlowField& a, const SlowField& b) {
  if (!(a.grid == b.grid)) throw GridMismatch("fields live on different grids");
}

Complex trapezoid(const SlowField& f) {
  const double h = f.grid.spacing();
  Complex s(0.0, 0.0);
  for (int i = 0; i < f.size(); ++i) {
    const double w = (i == 0 || i == f.size() - 1) ? 0.5 : 1.0;
    s += w * f[i];
  }
  return h * s;
}

Complex trapezoid_window(const SlowField& f, double window) {
  if (window <= 0.0) throw OutOfDomain("window must be positive");
  const double h = f.grid.spacing();
  const double X = f.grid.half_width;
  if (window > X * (1.0 + 1e-12)) throw OutOfDomain("window exceeds grid cover");
  // Clamp to nearest node index.
  int lo = static_cast<int>(std::lround((X - window) / h));
  int hi = f.size() - 1 - lo;
  if (hi - lo < 1) throw GridTooCoarse("window holds fewer than 2 nodes");
  Complex s(0.0, 0.0);
  for (int i = lo; i <= hi; ++i) {
    const double w = (i == lo || i == hi) ? 0.5 : 1.0;
    s += w * f[i];
  }
  return h * s;
}

}  // namespace oscatter
