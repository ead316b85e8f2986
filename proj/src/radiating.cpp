#include "oscatter/radiating.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "oscatter/green.hpp"

namespace oscatter {

Complex Amplitude::value(double direction) const {
  for (std::size_t j = 0; j < directions.size(); ++j)
    if (directions[j] == direction) return values[j];
  throw OutOfDomain("amplitude has no sample for that direction");
}

double flux_defect(const Amplitude& a) {
  if (a.incident == 0.0)
    throw WrongProblemKind("flux defect is defined for plane-wave amplitudes");
  const Complex t = 1.0 + a.value(a.incident);
  const Complex r = a.value(-a.incident);
  return std::abs(std::norm(t) + std::norm(r) - 1.0);
}

namespace {

struct Quadrature {
  double h = 0.0;
  std::vector<double> weights;  // trapezoid weights per node
};

Quadrature grid_weights(const SlowGrid& g) {
  Quadrature q;
  q.h = g.spacing();
  q.weights.assign(g.n, q.h);
  q.weights.front() = 0.5 * q.h;
  q.weights.back() = 0.5 * q.h;
  return q;
}

// Quadrature of Int G0(x_i - y) g(y) dy over the grid for every node i,
// restricted to source indices where g is nonzero. The integrand's kink at
// y = x_i sits on a node, so trapezoid overshoots by (h^2/12) g(x_i); the
// correction removes it.
std::vector<Complex> convolve_green(const SlowGrid& g, const Quadrature& q,
                                    const std::vector<int>& support,
                                    const std::vector<Complex>& gv,
                                    double energy) {
  const double k = std::sqrt(energy);
  const double corr = q.h * q.h / 12.0;
  std::vector<Complex> out(g.n, Complex(0.0, 0.0));
  for (int i = 0; i < g.n; ++i) {
    Complex s(0.0, 0.0);
    const double xi = g.node(i);
    for (int j : support) {
      const double r = std::abs(xi - g.node(j));
      const Complex e(std::cos(k * r), std::sin(k * r));
      s += q.weights[j] * (Complex(0.0, 1.0) * e / (2.0 * k)) * gv[j];
    }
    out[i] = s - corr * gv[i];
  }
  return out;
}

std::vector<int> nonzero_support(const SlowField& f) {
  std::vector<int> idx;
  for (int i = 0; i < f.size(); ++i)
    if (f[i] != Complex(0.0, 0.0)) idx.push_back(i);
  return idx;
}

// Shared core: solves psi + G0*(p psi) = rhs for rhs given on the grid.
RadiatingSolution solve_integral_equation(const SlowField& p,
                                          const SlowField& rhs, double energy,
                                          double residual_tol) {
  require_same_grid(p, rhs);
  if (!(energy > 0.0)) throw OutOfDomain("solver needs energy > 0");
  if (!p.all_finite() || !rhs.all_finite())
    throw OutOfDomain("solver input contains non-finite values");

  const SlowGrid& grid = p.grid;
  const Quadrature q = grid_weights(grid);
  const double k = std::sqrt(energy);
  const double corr = q.h * q.h / 12.0;
  const std::vector<int> sup = nonzero_support(p);
  const int ns = static_cast<int>(sup.size());

  SlowField psi(grid);
  double rhs_scale = rhs.max_abs();
  if (rhs_scale == 0.0) rhs_scale = 1.0;

  if (ns > 0) {
    // Dense system on supp(p): the full-grid system is block triangular in
    // (support, exterior), so this loses nothing.
    Eigen::MatrixXcd A(ns, ns);
    Eigen::VectorXcd b(ns);
    for (int a = 0; a < ns; ++a) {
      const int i = sup[a];
      const double xi = grid.node(i);
      for (int c = 0; c < ns; ++c) {
        const int j = sup[c];
        const double r = std::abs(xi - grid.node(j));
        const Complex e(std::cos(k * r), std::sin(k * r));
        Complex m = q.weights[j] * (Complex(0.0, 1.0) * e / (2.0 * k)) * p[j];
        if (i == j) m += Complex(1.0, 0.0) - corr * p[j];
        A(a, c) = m;
      }
      b(a) = rhs[i];
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    if (lu.rcond() < 1e-14)
      throw SingularSystem("scattering system is numerically singular");
    Eigen::VectorXcd x = lu.solve(b);
    for (int a = 0; a < ns; ++a) psi[sup[a]] = x(a);
  }

  // Exterior nodes from the representation psi = rhs - G0*(p psi).
  std::vector<Complex> pp(grid.n, Complex(0.0, 0.0));
  for (int j : sup) pp[j] = p[j] * psi[j];
  const std::vector<Complex> gpp = convolve_green(grid, q, sup, pp, energy);
  for (int i = 0; i < grid.n; ++i) {
    bool in_support = p[i] != Complex(0.0, 0.0);
    if (!in_support) psi[i] = rhs[i] - gpp[i];
  }

  // Residual of the discrete equation on every node.
  double res = 0.0;
  for (int i = 0; i < grid.n; ++i)
    res = std::max(res, std::abs(psi[i] + gpp[i] - rhs[i]));
  res /= rhs_scale;
  if (!psi.all_finite() || !(res <= residual_tol))
    throw SingularSystem("discrete residual exceeds tolerance");

  RadiatingSolution out;
  out.field = std::move(psi);
  out.residual = res;
  return out;
}

}  // namespace

RadiatingSolution solve_radiating(const SlowField& p, const SlowField& f,
                                  double energy, double residual_tol) {
  require_same_grid(p, f);
  const Quadrature q = grid_weights(p.grid);
  const std::vector<int> fsup = nonzero_support(f);
  const std::vector<Complex> rhs_v =
      convolve_green(p.grid, q, fsup, f.values, energy);
  SlowField rhs(p.grid, rhs_v);
  return solve_integral_equation(p, rhs, energy, residual_tol);
}

RadiatingSolution solve_plane_wave(const SlowField& p, double energy,
                                   double khat, double residual_tol) {
  if (khat != 1.0 && khat != -1.0)
    throw OutOfDomain("incident direction must be +1 or -1");
  const double k = std::sqrt(energy);
  SlowField inc(p.grid);
  for (int i = 0; i < p.size(); ++i) {
    const double ph = k * khat * p.grid.node(i);
    inc[i] = Complex(std::cos(ph), std::sin(ph));
  }
  return solve_integral_equation(p, inc, energy, residual_tol);
}

Amplitude far_field(const SlowField& p, const SlowField& f,
                    const SlowField& psi, double energy, double incident) {
  require_same_grid(p, f);
  require_same_grid(p, psi);
  if (!(energy > 0.0)) throw OutOfDomain("far field needs energy > 0");
  const double k = std::sqrt(energy);
  const Complex c1 = far_field_coefficient(1, energy);
  const Quadrature q = grid_weights(p.grid);

  Amplitude amp;
  amp.energy = energy;
  amp.incident = incident;
  amp.directions = {1.0, -1.0};
  for (double xhat : amp.directions) {
    // Smooth compactly supported integrand: plain trapezoid suffices.
    Complex s(0.0, 0.0);
    for (int j = 0; j < p.size(); ++j) {
      const Complex g = f[j] - p[j] * psi[j];
      if (g == Complex(0.0, 0.0)) continue;
      const double ph = -k * xhat * p.grid.node(j);
      s += q.weights[j] * Complex(std::cos(ph), std::sin(ph)) * g;
    }
    amp.values.push_back(c1 * s);
  }
  return amp;
}

}  // namespace oscatter
