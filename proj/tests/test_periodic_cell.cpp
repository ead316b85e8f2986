#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oscatter/periodic_cell.hpp"

using namespace oscatter;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Random spectrum of a real-valued function with zero mean.
CellSpectrum random_hermitian(const PeriodicCell& cell, int M, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CellSpectrum g(cell, M);
  for (int flat = 0; flat < g.size(); ++flat) {
    const std::vector<int> m = g.multi_index(flat);
    bool zero = true, lead_positive = false;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m[j] != 0) {
        zero = false;
        lead_positive = m[j] > 0;
        break;
      }
    }
    if (zero) continue;  // keep the mean at zero
    if (!lead_positive) continue;  // fill conjugates afterwards
    g[flat] = Complex(u(rng), u(rng));
  }
  for (int flat = 0; flat < g.size(); ++flat) {
    std::vector<int> m = g.multi_index(flat);
    for (int& mj : m) mj = -mj;
    const Complex c = g[flat];
    if (c != Complex(0.0, 0.0)) g.at(m) = std::conj(c);
  }
  return g;
}

}  // namespace

TEST_CASE("cell geometry") {
  const PeriodicCell unit({1.0});
  CHECK(unit.dim() == 1);
  CHECK(unit.volume() == 1.0);
  const PeriodicCell box({0.5, 2.0, 3.0});
  CHECK(box.dim() == 3);
  CHECK(box.volume() == doctest::Approx(3.0));
  CHECK_THROWS_AS(PeriodicCell({1.0, -2.0}), ConfigInvalid);
}

TEST_CASE("flat index and multi index invert each other") {
  const PeriodicCell cell({1.0, 2.0});
  const CellSpectrum s(cell, 3);
  CHECK(s.size() == 49);
  for (int flat = 0; flat < s.size(); ++flat)
    CHECK(s.index(s.multi_index(flat)) == flat);
  CHECK_THROWS_AS(s.index({4, 0}), OutOfDomain);
  CHECK_THROWS_AS(s.index({0}), CellMismatch);
}

TEST_CASE("wavevector of a mode") {
  const PeriodicCell cell({0.5});
  CellSpectrum s(cell, 2);
  const int flat = s.index({2});
  CHECK(s.wavevector(flat)[0] == doctest::Approx(2.0 * kTwoPi / 0.5));
  CHECK(s.wavevector_sq(flat) == doctest::Approx(std::pow(4.0 * kTwoPi, 2)));
}

TEST_CASE("evaluate sums the Fourier series") {
  const PeriodicCell cell({1.0});
  CellSpectrum s(cell, 2);
  s.at({0}) = 1.0;
  s.at({1}) = s.at({-1}) = 0.5;
  s.at({2}) = s.at({-2}) = 0.25;
  for (double y : {0.0, 0.3, 0.71, 1.4, -0.2}) {
    const double want =
        1.0 + std::cos(kTwoPi * y) + 0.5 * std::cos(2.0 * kTwoPi * y);
    CHECK(std::abs(s.evaluate(y) - Complex(want, 0.0)) <= 1e-14);
  }
  CHECK(s.is_hermitian());
  CHECK(cell_average(s) == Complex(1.0, 0.0));
}

TEST_CASE("hermitian detection flags a complex-valued function") {
  const PeriodicCell cell({1.0});
  CellSpectrum s(cell, 1);
  s.at({1}) = Complex(0.5, 0.5);
  s.at({-1}) = Complex(0.5, -0.5);
  CHECK(s.is_hermitian());
  s.at({-1}) = Complex(0.5, -0.5 + 1e-9);
  CHECK(!s.is_hermitian());
}

TEST_CASE("poisson solve round-trips through the laplacian") {
  const PeriodicCell cell({1.0});
  const CellSpectrum g = random_hermitian(cell, 5, 17u);
  const CellSpectrum u = solve_cell_poisson(g);

  // zero-mean preservation is exact, not approximate
  CHECK(cell_average(u) == Complex(0.0, 0.0));

  const CellSpectrum back = cell_laplacian(u);
  const CellSpectrum diff = back - g;
  CHECK(diff.max_abs() <= 1e-12 * g.max_abs());

  // the solution itself is real-valued when the data is
  CHECK(u.is_hermitian());
}

TEST_CASE("poisson solve round-trips on a two-axis cell") {
  const PeriodicCell cell({1.0, 0.5});
  const CellSpectrum g = random_hermitian(cell, 3, 99u);
  const CellSpectrum u = solve_cell_poisson(g);
  CHECK(cell_average(u) == Complex(0.0, 0.0));
  CHECK((cell_laplacian(u) - g).max_abs() <= 1e-12 * g.max_abs());
}

TEST_CASE("poisson solve rejects data with a mean") {
  const PeriodicCell cell({1.0});
  CellSpectrum g(cell, 1);
  g.at({0}) = 1e-6;
  g.at({1}) = g.at({-1}) = 0.5;
  CHECK_THROWS_AS(solve_cell_poisson(g), SolvabilityViolation);
  // a mean at rounding level is tolerated
  g.at({0}) = 1e-14;
  CHECK_NOTHROW(solve_cell_poisson(g));
}

TEST_CASE("gradient multiplies by i k per axis") {
  const PeriodicCell cell({1.0, 2.0});
  CellSpectrum s(cell, 2);
  s.at({1, -2}) = Complex(0.3, -0.7);
  const CellSpectrum gx = cell_gradient(s, 0);
  const CellSpectrum gy = cell_gradient(s, 1);
  CHECK(std::abs(gx.at({1, -2}) - Complex(0.0, kTwoPi) * s.at({1, -2})) <= 1e-15);
  CHECK(std::abs(gy.at({1, -2}) - Complex(0.0, -kTwoPi) * s.at({1, -2})) <= 1e-15);

  // agreement with a directional difference quotient of evaluate
  const double h = 1e-6;
  const std::vector<double> y{0.37, 0.91};
  const Complex dq =
      (s.evaluate({y[0] + h, y[1]}) - s.evaluate({y[0] - h, y[1]})) / (2.0 * h);
  CHECK(std::abs(gx.evaluate(y) - dq) <= 1e-8 * s.max_abs());
}

TEST_CASE("product matches pointwise evaluation when the bound suffices") {
  const PeriodicCell cell({1.0});
  CellSpectrum u(cell, 8);
  u.at({0}) = 1.0;
  u.at({1}) = u.at({-1}) = 0.5;
  u.at({2}) = u.at({-2}) = 0.25;
  CellSpectrum v(cell, 2);
  v.at({1}) = Complex(0.0, 0.5);
  v.at({-1}) = Complex(0.0, -0.5);
  const CellSpectrum w = cell_product(u, v);
  CHECK(w.max_mode() == 8);
  for (double y : {0.0, 0.13, 0.42, 0.77}) {
    CHECK(std::abs(w.evaluate(y) - u.evaluate(y) * v.evaluate(y)) <= 1e-14);
  }
}

TEST_CASE("product truncates outside the working bound") {
  const PeriodicCell cell({1.0});
  CellSpectrum u(cell, 1), v(cell, 1);
  u.at({1}) = 1.0;
  v.at({1}) = 1.0;
  const CellSpectrum w = cell_product(u, v);  // true product is mode 2
  CHECK(w.max_mode() == 1);
  CHECK(w.max_abs() == 0.0);
}

TEST_CASE("mismatched cells are rejected") {
  CellSpectrum a(PeriodicCell({1.0}), 1), b(PeriodicCell({2.0}), 1);
  CHECK_THROWS_AS(require_same_cell(a, b), CellMismatch);
  CHECK_THROWS_AS(cell_product(a, b), CellMismatch);
  CellSpectrum c(PeriodicCell({1.0}), 2);
  CHECK_THROWS_AS(a += c, CellMismatch);
}
