#pragma once

#include "oscatter/radiating.hpp"
#include "oscatter/two_scale.hpp"

namespace oscatter {

// Fine grid on [-X, X] resolving both the fast period eps*L_min and the
// wavelength 2 pi / sqrt(E) with points_per_period nodes each.
// Throws ResourceCap when more than max_nodes would be needed.
SlowGrid fine_grid_for(double half_width, const TwoScalePotential& q,
                       double energy, double eps, int points_per_period = 20,
                       int max_nodes = 20000);

// Samples q(x_i, x_i / eps) on the fine grid: slow coefficients
// interpolated (degree 6), fast Fourier sum exact. Enforces the grid rule
// h <= min(eps L_min, 2 pi / sqrt(E)) / 10, else GridTooCoarse.
SlowField assemble_oscillatory_potential(const TwoScalePotential& q, double eps,
                                         double energy, const SlowGrid& fine);

struct DirectSolution {
  SlowField field;
  Amplitude amplitude;
  double residual = 0.0;
};

// Direct fine-grid solve of (-Lap + q(x, x/eps) - E) psi = f, outgoing.
// f is interpolated from its slow grid onto the fine grid.
DirectSolution direct_solve_source(const TwoScalePotential& q, const SlowField& f,
                                   double energy, double eps, const SlowGrid& fine);

// Direct fine-grid total field for an incident plane wave from khat.
DirectSolution direct_solve_plane_wave(const TwoScalePotential& q, double energy,
                                       double khat, double eps,
                                       const SlowGrid& fine);

}  // namespace oscatter
