#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oscatter/config.hpp"
#include "oscatter/radiating.hpp"
#include "test_util.hpp"

using namespace oscatter;
using testutil::rel_err;

namespace {

const SlowGrid kGrid(4.0, 1601);

SlowField bump_field(double amplitude, double radius) {
  return sample_field(kGrid,
                      [=](double x) { return bump(x, amplitude, radius); });
}

}  // namespace

TEST_CASE("free-space solve reproduces the convolution with the kernel") {
  // references: 50-digit quadrature of (i/2) Int e^{i|x-y|} exp(-1/(1-y^2)) dy
  struct Row {
    int node;
    Complex want;
  };
  const Row rows[] = {
      {800, {-0.071076645916637481, 0.20492956619517218}},   // x = 0
      {900, {-0.10541100599069730, 0.17984261370864192}},    // x = 0.5
      {1200, {-0.18634192722177327, -0.085280790687099112}}, // x = 2
  };
  const SlowField zero(kGrid);
  const SlowField f = bump_field(1.0, 1.0);
  const RadiatingSolution sol = solve_radiating(zero, f, 1.0);
  CHECK(sol.residual <= 1e-12);
  for (const Row& row : rows) {
    CAPTURE(row.node);
    CHECK(rel_err(sol.field[row.node], row.want) <= 1e-8);
  }
}

TEST_CASE("field beyond the sources is a pure outgoing wave") {
  const SlowField p = bump_field(5.0, 1.0);
  const SlowField f = bump_field(1.0, 1.0);
  const RadiatingSolution sol = solve_radiating(p, f, 1.0);
  const Amplitude amp = far_field(p, f, sol.field, 1.0);

  // right of the support every discrete node satisfies psi = T(+1) e^{ikx}
  // exactly (same quadrature on both sides), and mirrored on the left
  for (int i : {1300, 1500, 1600}) {
    const double x = kGrid.node(i);
    const Complex out_r = amp.value(1.0) * std::exp(Complex(0.0, x));
    CHECK(std::abs(sol.field[i] - out_r) <= 1e-13);
    const Complex out_l = amp.value(-1.0) * std::exp(Complex(0.0, -kGrid.node(1600 - i)));
    CHECK(std::abs(sol.field[1600 - i] - out_l) <= 1e-13);
  }
}

TEST_CASE("agreement with an independent boundary-value solve") {
  const SlowField p = bump_field(5.0, 1.0);
  const SlowField f = bump_field(1.0, 1.0);
  const RadiatingSolution sol = solve_radiating(p, f, 1.0);

  const int n_oracle = 64001;  // oracle spacing is 1/40 of the grid spacing
  const std::vector<Complex> oracle = testutil::outgoing_bvp(
      [](double x) { return bump(x, 5.0, 1.0); },
      [](double x) { return Complex(bump(x, 1.0, 1.0), 0.0); }, 1.0, 4.0,
      n_oracle);

  double scale = 0.0, diff = 0.0;
  for (int i = 0; i < kGrid.n; ++i) {
    scale = std::max(scale, std::abs(oracle[40 * i]));
    diff = std::max(diff, std::abs(sol.field[i] - oracle[40 * i]));
  }
  CHECK(diff / scale <= 1e-6);
}

TEST_CASE("plane-wave solve equals incident plus scattered source solve") {
  const SlowField p = bump_field(5.0, 1.0);
  const double k = 1.0;
  const RadiatingSolution total = solve_plane_wave(p, k * k, 1.0);

  SlowField minus_p_inc(kGrid);
  SlowField inc(kGrid);
  for (int i = 0; i < kGrid.n; ++i) {
    inc[i] = std::exp(Complex(0.0, k * kGrid.node(i)));
    minus_p_inc[i] = -p[i] * inc[i];
  }
  const RadiatingSolution scat = solve_radiating(p, minus_p_inc, k * k);
  const SlowField recomposed = inc + scat.field;
  CHECK((total.field - recomposed).max_abs() <= 1e-12);
}

TEST_CASE("flux is conserved for a real potential") {
  const SlowField p = bump_field(5.0, 1.0);
  const SlowField zero(kGrid);
  for (double khat : {1.0, -1.0}) {
    const RadiatingSolution total = solve_plane_wave(p, 1.0, khat);
    const Amplitude amp = far_field(p, zero, total.field, 1.0, khat);
    CHECK(flux_defect(amp) <= 1e-12);
  }
}

TEST_CASE("weak potential matches the single-scattering integral") {
  const double delta = 1e-4;
  const SlowField p = bump_field(delta, 1.0);
  const SlowField zero(kGrid);
  const RadiatingSolution total = solve_plane_wave(p, 1.0, 1.0);
  const Amplitude amp = far_field(p, zero, total.field, 1.0, 1.0);

  for (double xhat : {1.0, -1.0}) {
    const Complex born =
        Complex(0.0, -0.5) *
        testutil::integrate(
            [&](double y) {
              return Complex(bump(y, delta, 1.0), 0.0) *
                     std::exp(Complex(0.0, (1.0 - xhat) * y));
            },
            -1.0, 1.0, {-0.5, 0.0, 0.5});
    CAPTURE(xhat);
    CHECK(std::abs(amp.value(xhat) - born) <= delta * delta);
  }
}

TEST_CASE("solver guards") {
  const SlowField p = bump_field(1.0, 1.0);
  SlowField f_other((SlowGrid(4.0, 801)));
  CHECK_THROWS_AS(solve_radiating(p, f_other, 1.0), GridMismatch);
  CHECK_THROWS_AS(solve_plane_wave(p, 1.0, 0.5), OutOfDomain);
  const SlowField f = bump_field(1.0, 1.0);
  CHECK_THROWS_AS(solve_radiating(p, f, -1.0), OutOfDomain);
  // an impossible residual demand must not be silently ignored
  CHECK_THROWS_AS(solve_radiating(p, f, 1.0, 1e-30), SingularSystem);

  Amplitude a;
  a.energy = 1.0;
  a.incident = 0.0;
  a.directions = {1.0, -1.0};
  a.values = {Complex(0.1, 0.0), Complex(0.2, 0.0)};
  CHECK_THROWS_AS(flux_defect(a), WrongProblemKind);
  CHECK_THROWS_AS(a.value(0.0), OutOfDomain);
}
