#pragma once

#include <complex>
#include <vector>

#include "oscatter/errors.hpp"

namespace oscatter {

using Complex = std::complex<double>;

// Uniform 1-d grid on [-X, X], node i at -X + i h, h = 2X/(n-1).
struct SlowGrid {
  double half_width = 0.0;
  int n = 0;

  SlowGrid() = default;
  SlowGrid(double X, int nodes);

  double spacing() const { return 2.0 * half_width / (n - 1); }
  double node(int i) const { return -half_width + spacing() * i; }
  std::vector<double> nodes() const;
  bool contains(double x) const;
  bool operator==(const SlowGrid& o) const {
    return half_width == o.half_width && n == o.n;
  }
};

// Complex-valued samples on a SlowGrid.
struct SlowField {
  SlowGrid grid;
  std::vector<Complex> values;

  SlowField() = default;
  explicit SlowField(SlowGrid g) : grid(g), values(g.n, Complex(0, 0)) {}
  SlowField(SlowGrid g, std::vector<Complex> v);

  int size() const { return grid.n; }
  Complex& operator[](int i) { return values[i]; }
  const Complex& operator[](int i) const { return values[i]; }

  double max_abs() const;
  bool all_finite() const;

  SlowField& operator+=(const SlowField& o);
  SlowField& operator-=(const SlowField& o);
  SlowField& operator*=(Complex s);
  friend SlowField operator+(SlowField a, const SlowField& b) { return a += b; }
  friend SlowField operator-(SlowField a, const SlowField& b) { return a -= b; }
  friend SlowField operator*(Complex s, SlowField a) { return a *= s; }
};

void require_same_grid(const SlowField& a, const SlowField& b);

// Fills a field from a callable x -> Complex (or double).
template <typename F>
SlowField sample_field(const SlowGrid& g, F&& f) {
  SlowField out(g);
  for (int i = 0; i < g.n; ++i) out[i] = Complex(f(g.node(i)));
  return out;
}

// Trapezoid integral of the sampled values over the whole grid.
Complex trapezoid(const SlowField& f);

// Trapezoid integral restricted to |x| <= window (window must be node-aligned
// within rounding; it is clamped to the nearest node).
Complex trapezoid_window(const SlowField& f, double window);

}  // namespace oscatter
