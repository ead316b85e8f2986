#pragma once

#include "oscatter/periodic_cell.hpp"
#include "oscatter/radiating.hpp"
#include "oscatter/slow_grid.hpp"

namespace oscatter {

// Potential q(x, y) = sum_m c_m(x) e^{i k_m y}: slow profile per cell mode,
// sampled on a slow grid and identically zero for |x| >= support_radius.
class TwoScalePotential {
 public:
  TwoScalePotential() = default;
  // spectra[i] is q(x_i, .); every spectrum must share cell and mode bound.
  TwoScalePotential(SlowGrid grid, double support_radius,
                    std::vector<CellSpectrum> spectra);

  const SlowGrid& grid() const { return grid_; }
  const PeriodicCell& cell() const { return cell_; }
  int max_mode() const { return max_mode_; }
  double support_radius() const { return support_radius_; }
  bool real_valued() const { return real_; }

  // q(x_i, .) as a spectrum.
  CellSpectrum spectrum_at(int node) const;
  // Coefficient field of one flat mode index over the slow grid.
  const SlowField& mode_field(int flat) const { return modes_[flat]; }
  int mode_count() const { return static_cast<int>(modes_.size()); }

  // q(x, x_fast) with slow dependence interpolated (degree-6) and the fast
  // sum taken exactly; 1-d cell only.
  Complex evaluate(double x, double y_fast) const;

 private:
  SlowGrid grid_;
  PeriodicCell cell_;
  int max_mode_ = 0;
  double support_radius_ = 0.0;
  bool real_ = false;
  std::vector<SlowField> modes_;  // mode-major: modes_[flat][node]
};

// Cell average q_hat(x) (the mode-0 coefficient field).
SlowField average_potential(const TwoScalePotential& q);

enum class ProblemKind { source, plane_wave };

// One order of the expansion: psi_n(x) + phi_n(x, y), phi stored mode-major
// on the same slow grid, zero-mean in y at every node.
struct ExpansionTerm {
  int order = 0;
  SlowField psi;
  std::vector<SlowField> phi;  // phi[flat mode][node]

  // phi_n(x_i, .) as a spectrum.
  CellSpectrum phi_at(const TwoScalePotential& q, int node) const;
};

// Terms 0..order of the two-scale expansion plus the per-term scattering
// amplitudes of the slow solves.
struct AsymptoticSolution {
  ProblemKind kind = ProblemKind::source;
  double energy = 0.0;
  double kappa_hat = 0.0;  // plane-wave incident direction, 0 for source
  int order = 0;
  TwoScalePotential potential;
  SlowField source;  // the f of a source problem; zero field otherwise
  std::vector<ExpansionTerm> terms;
  std::vector<Amplitude> term_amplitudes;
};

// Builds the expansion for (-Lap + q(x, x/eps) - E) psi = f, f on q's grid.
// Terms follow the solvable cell recurrence: each phi_n solves a cell
// Poisson problem whose right-hand side mean cancels exactly; each psi_n is
// an outgoing solve against the averaged potential.
AsymptoticSolution expand_source(const TwoScalePotential& q, const SlowField& f,
                                 double energy, int order);

// Plane-wave variant: psi_0 is the averaged-potential total field for the
// incident wave e^{i sqrt(E) khat x}; higher psi_n are pure outgoing solves.
AsymptoticSolution expand_plane_wave(const TwoScalePotential& q, double energy,
                                     double khat, int order);

// Partial sum Psi^(p)(x, eps) = sum_n eps^n (phi_n(x, x/eps) + psi_n(x)) at
// arbitrary points inside the grid. max_order < 0 means every stored term.
std::vector<Complex> evaluate(const AsymptoticSolution& sol, double eps,
                              const std::vector<double>& points,
                              int max_order = -1);
SlowField evaluate(const AsymptoticSolution& sol, double eps,
                   const SlowGrid& grid, int max_order = -1);

// (H_eps - E) Psi^(p) - f on an eps-resolving fine grid, computed by
// applying the discrete operator (order-6 FD Laplacian plus the assembled
// oscillatory potential) to the evaluated partial sum. Needs order >= 2.
// points_per_period controls the fine grid density (>= 10).
SlowField discrepancy(const AsymptoticSolution& sol, double eps,
                      int points_per_period = 20, int max_fine_nodes = 20000);

// Per-term amplitudes F_n (stored during expansion).
std::vector<Amplitude> amplitude_series(const AsymptoticSolution& sol);

// Sum_n eps^n F_n(xhat) up to max_order (< 0 means all).
Complex amplitude_partial_sum(const AsymptoticSolution& sol, double eps,
                              double xhat, int max_order = -1);

}  // namespace oscatter
