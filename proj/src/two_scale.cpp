#include "oscatter/two_scale.hpp"

#include <cmath>

#include "oscatter/finite_difference.hpp"
#include "oscatter/reference.hpp"

namespace oscatter {

TwoScalePotential::TwoScalePotential(SlowGrid grid, double support_radius,
                                     std::vector<CellSpectrum> spectra)
    : grid_(grid), support_radius_(support_radius) {
  if (static_cast<int>(spectra.size()) != grid_.n)
    throw GridMismatch("need one spectrum per slow node");
  if (!(support_radius_ > 0.0))
    throw ConfigInvalid("support radius must be positive");
  if (support_radius_ > grid_.half_width)
    throw ConfigInvalid("support must sit inside the grid");
  cell_ = spectra.front().cell();
  max_mode_ = spectra.front().max_mode();
  for (const CellSpectrum& s : spectra) require_same_cell(spectra.front(), s);

  real_ = true;
  for (int i = 0; i < grid_.n; ++i) {
    if (std::abs(grid_.node(i)) >= support_radius_ && spectra[i].max_abs() != 0.0)
      throw ConfigInvalid("potential spectra must vanish for |x| >= support radius");
    if (!spectra[i].is_hermitian()) real_ = false;
  }

  modes_.assign(spectra.front().size(), SlowField(grid_));
  for (int i = 0; i < grid_.n; ++i)
    for (int f = 0; f < spectra[i].size(); ++f) modes_[f][i] = spectra[i][f];
}

CellSpectrum TwoScalePotential::spectrum_at(int node) const {
  CellSpectrum s(cell_, max_mode_);
  for (int f = 0; f < s.size(); ++f) s[f] = modes_[f][node];
  return s;
}

Complex TwoScalePotential::evaluate(double x, double y_fast) const {
  if (cell_.dim() != 1)
    throw UnsupportedDimension("pointwise evaluation needs a 1-d cell");
  if (!grid_.contains(x)) throw OutOfDomain("evaluation point outside grid");
  const double k1 = 2.0 * std::numbers::pi / cell_.periods[0];
  Complex sum(0.0, 0.0);
  for (int f = 0; f < mode_count(); ++f) {
    const int m = f - max_mode_;
    const Complex c = interpolate(modes_[f], x);
    const double ph = k1 * m * y_fast;
    sum += c * Complex(std::cos(ph), std::sin(ph));
  }
  return sum;
}

SlowField average_potential(const TwoScalePotential& q) {
  return q.mode_field(q.max_mode());  // flat index of mode 0 in 1-d
}

CellSpectrum ExpansionTerm::phi_at(const TwoScalePotential& q, int node) const {
  CellSpectrum s(q.cell(), q.max_mode());
  for (int f = 0; f < s.size(); ++f) s[f] = phi[f][node];
  return s;
}

namespace {

// Mode-major x-derivative of a phi block, mode by mode.
std::vector<SlowField> phi_x_derivative(const std::vector<SlowField>& phi,
                                        int order) {
  std::vector<SlowField> out;
  out.reserve(phi.size());
  for (const SlowField& m : phi) out.push_back(slow_derivative(m, order));
  return out;
}

AsymptoticSolution expand_impl(const TwoScalePotential& q, const SlowField* f,
                               double energy, double khat, int order,
                               ProblemKind kind) {
  if (order < 0) throw ConfigInvalid("expansion order must be >= 0");
  if (!(energy > 0.0)) throw OutOfDomain("expansion needs energy > 0");
  if (q.cell().dim() != 1)
    throw UnsupportedDimension("expansion built for 1-d cells");

  const SlowGrid& grid = q.grid();
  const int n_modes = q.mode_count();
  const SlowField q_hat = average_potential(q);

  AsymptoticSolution sol;
  sol.kind = kind;
  sol.energy = energy;
  sol.kappa_hat = (kind == ProblemKind::plane_wave) ? khat : 0.0;
  sol.order = order;
  sol.potential = q;
  sol.source = (kind == ProblemKind::source) ? *f : SlowField(grid);
  if (kind == ProblemKind::source) require_same_grid(sol.source, q_hat);

  const std::vector<SlowField> zero_phi(n_modes, SlowField(grid));

  // Per-node q spectra and the rolling q*phi products of the last two orders.
  std::vector<CellSpectrum> q_spec(grid.n);
  for (int i = 0; i < grid.n; ++i) q_spec[i] = q.spectrum_at(i);
  std::vector<std::vector<CellSpectrum>> q_phi(2);  // [n-2, n-1] ring

  for (int n = 0; n <= order; ++n) {
    ExpansionTerm term;
    term.order = n;
    term.phi = zero_phi;

    if (n >= 2) {
      const ExpansionTerm& prev1 = sol.terms[n - 1];
      const ExpansionTerm& prev2 = sol.terms[n - 2];
      const std::vector<SlowField> dphi1 = phi_x_derivative(prev1.phi, 1);
      const std::vector<SlowField> ddphi2 = phi_x_derivative(prev2.phi, 2);

      for (int i = 0; i < grid.n; ++i) {
        // Cell right-hand side at this node:
        //   -2 dy dx phi_{n-1} + (-dxx + q - E) phi_{n-2}
        //   + (q - q_hat) psi_{n-2} - cell mean of q phi_{n-2}.
        CellSpectrum dphi_i(q.cell(), q.max_mode());
        CellSpectrum rhs(q.cell(), q.max_mode());
        for (int m = 0; m < n_modes; ++m) {
          dphi_i[m] = dphi1[m][i];
          rhs[m] = -ddphi2[m][i] - energy * prev2.phi[m][i];
        }
        rhs += Complex(-2.0, 0.0) * cell_gradient(dphi_i, 0);

        const CellSpectrum& prod = q_phi[(n - 2) % 2][i];
        rhs += prod;
        // Subtracting the product's own mean makes mode 0 cancel exactly.
        rhs.coeffs()[q.max_mode()] -= cell_average(prod);

        CellSpectrum dq = q_spec[i];
        dq.coeffs()[q.max_mode()] = Complex(0.0, 0.0);
        rhs += prev2.psi[i] * dq;

        const CellSpectrum phi_i = solve_cell_poisson(rhs);
        for (int m = 0; m < n_modes; ++m) term.phi[m][i] = phi_i[m];
      }
    }

    // q * phi_n products feed both r_n below and the rhs two orders up.
    std::vector<CellSpectrum>& prod_n = q_phi[n % 2];
    prod_n.resize(grid.n);
    SlowField r_n(grid);
    for (int i = 0; i < grid.n; ++i) {
      CellSpectrum phi_i(q.cell(), q.max_mode());
      for (int m = 0; m < n_modes; ++m) phi_i[m] = term.phi[m][i];
      prod_n[i] = cell_product(q_spec[i], phi_i);
      r_n[i] = -cell_average(prod_n[i]);
    }
    if (kind == ProblemKind::source && n == 0) r_n += *f;

    if (kind == ProblemKind::plane_wave && n == 0) {
      RadiatingSolution rs = solve_plane_wave(q_hat, energy, khat);
      term.psi = std::move(rs.field);
      sol.term_amplitudes.push_back(
          far_field(q_hat, SlowField(grid), term.psi, energy, khat));
    } else {
      RadiatingSolution rs = solve_radiating(q_hat, r_n, energy);
      term.psi = std::move(rs.field);
      sol.term_amplitudes.push_back(
          far_field(q_hat, r_n, term.psi, energy, sol.kappa_hat));
    }
    sol.terms.push_back(std::move(term));
  }
  return sol;
}

}  // namespace

AsymptoticSolution expand_source(const TwoScalePotential& q, const SlowField& f,
                                 double energy, int order) {
  return expand_impl(q, &f, energy, 0.0, order, ProblemKind::source);
}

AsymptoticSolution expand_plane_wave(const TwoScalePotential& q, double energy,
                                     double khat, int order) {
  if (khat != 1.0 && khat != -1.0)
    throw OutOfDomain("incident direction must be +1 or -1");
  return expand_impl(q, nullptr, energy, khat, order, ProblemKind::plane_wave);
}

std::vector<Complex> evaluate(const AsymptoticSolution& sol, double eps,
                              const std::vector<double>& points, int max_order) {
  if (!(eps > 0.0)) throw OutOfDomain("eps must be positive");
  const int top = (max_order < 0) ? sol.order : max_order;
  if (top > sol.order) throw OutOfDomain("partial-sum order exceeds expansion");
  const TwoScalePotential& q = sol.potential;
  const int n_modes = q.mode_count();
  const int M = q.max_mode();
  const double k1 = 2.0 * std::numbers::pi / q.cell().periods[0];

  std::vector<Complex> out(points.size(), Complex(0.0, 0.0));
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double x = points[j];
    if (!q.grid().contains(x)) throw OutOfDomain("evaluation point outside grid");
    const double y = x / eps;
    double epsn = 1.0;
    Complex sum(0.0, 0.0);
    for (int n = 0; n <= top; ++n, epsn *= eps) {
      const ExpansionTerm& t = sol.terms[n];
      Complex v = interpolate(t.psi, x);
      for (int m = 0; m < n_modes; ++m) {
        const Complex c = interpolate(t.phi[m], x);
        if (c == Complex(0.0, 0.0)) continue;
        const double ph = k1 * (m - M) * y;
        v += c * Complex(std::cos(ph), std::sin(ph));
      }
      sum += epsn * v;
    }
    out[j] = sum;
  }
  return out;
}

SlowField evaluate(const AsymptoticSolution& sol, double eps,
                   const SlowGrid& grid, int max_order) {
  return SlowField(grid, evaluate(sol, eps, grid.nodes(), max_order));
}

SlowField discrepancy(const AsymptoticSolution& sol, double eps,
                      int points_per_period, int max_fine_nodes) {
  if (sol.order < 2) throw OutOfDomain("discrepancy needs expansion order >= 2");
  const SlowGrid fine =
      fine_grid_for(sol.potential.grid().half_width, sol.potential, sol.energy,
                    eps, points_per_period, max_fine_nodes);
  const SlowField u = evaluate(sol, eps, fine);
  const SlowField q_eps =
      assemble_oscillatory_potential(sol.potential, eps, sol.energy, fine);
  const SlowField lap = slow_derivative(u, 2);

  SlowField disc(fine);
  const bool with_f = sol.kind == ProblemKind::source;
  for (int i = 0; i < fine.n; ++i) {
    Complex v = -lap[i] + (q_eps[i] - sol.energy) * u[i];
    if (with_f) v -= interpolate(sol.source, fine.node(i));
    disc[i] = v;
  }
  return disc;
}

std::vector<Amplitude> amplitude_series(const AsymptoticSolution& sol) {
  return sol.term_amplitudes;
}

Complex amplitude_partial_sum(const AsymptoticSolution& sol, double eps,
                              double xhat, int max_order) {
  const int top = (max_order < 0) ? sol.order : max_order;
  if (top > sol.order) throw OutOfDomain("partial-sum order exceeds expansion");
  Complex sum(0.0, 0.0);
  double epsn = 1.0;
  for (int n = 0; n <= top; ++n, epsn *= eps)
    sum += epsn * sol.term_amplitudes[n].value(xhat);
  return sum;
}

}  // namespace oscatter
