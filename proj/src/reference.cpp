#include "oscatter/reference.hpp"

#include <cmath>
#include <numbers>

#include "oscatter/finite_difference.hpp"

namespace oscatter {

namespace {

double min_period(const TwoScalePotential& q) {
  double m = q.cell().periods.front();
  for (double L : q.cell().periods) m = std::min(m, L);
  return m;
}

}  // namespace

SlowGrid fine_grid_for(double half_width, const TwoScalePotential& q,
                       double energy, double eps, int points_per_period,
                       int max_nodes) {
  if (!(eps > 0.0)) throw OutOfDomain("eps must be positive");
  if (points_per_period < 10)
    throw ConfigInvalid("fine grids need at least 10 points per period");
  const double wavelength = 2.0 * std::numbers::pi / std::sqrt(energy);
  const double h_max =
      std::min(eps * min_period(q), wavelength) / points_per_period;
  const int n = static_cast<int>(std::ceil(2.0 * half_width / h_max)) + 1;
  if (n > max_nodes)
    throw ResourceCap("fine grid would exceed the node cap; raise it or coarsen");
  return SlowGrid(half_width, n);
}

SlowField assemble_oscillatory_potential(const TwoScalePotential& q, double eps,
                                         double energy, const SlowGrid& fine) {
  if (!(eps > 0.0)) throw OutOfDomain("eps must be positive");
  if (!(energy > 0.0)) throw OutOfDomain("energy must be positive");
  if (fine.half_width > q.grid().half_width * (1.0 + 1e-12))
    throw GridMismatch("fine grid exceeds the potential's slow grid");
  const double wavelength = 2.0 * std::numbers::pi / std::sqrt(energy);
  const double rule = std::min(eps * min_period(q), wavelength) / 10.0;
  if (fine.spacing() > rule * (1.0 + 1e-9))
    throw GridTooCoarse("fine grid violates the 10-points-per-period rule");

  SlowField out(fine);
  for (int i = 0; i < fine.n; ++i) {
    const double x = fine.node(i);
    if (std::abs(x) >= q.support_radius()) continue;
    out[i] = q.evaluate(x, x / eps);
  }
  return out;
}

DirectSolution direct_solve_source(const TwoScalePotential& q, const SlowField& f,
                                   double energy, double eps,
                                   const SlowGrid& fine) {
  const SlowField p_eps = assemble_oscillatory_potential(q, eps, energy, fine);
  SlowField f_fine(fine);
  for (int i = 0; i < fine.n; ++i) f_fine[i] = interpolate(f, fine.node(i));
  RadiatingSolution rs = solve_radiating(p_eps, f_fine, energy);
  DirectSolution out;
  out.amplitude = far_field(p_eps, f_fine, rs.field, energy);
  out.field = std::move(rs.field);
  out.residual = rs.residual;
  return out;
}

DirectSolution direct_solve_plane_wave(const TwoScalePotential& q, double energy,
                                       double khat, double eps,
                                       const SlowGrid& fine) {
  const SlowField p_eps = assemble_oscillatory_potential(q, eps, energy, fine);
  RadiatingSolution rs = solve_plane_wave(p_eps, energy, khat);
  DirectSolution out;
  out.amplitude = far_field(p_eps, SlowField(fine), rs.field, energy, khat);
  out.field = std::move(rs.field);
  out.residual = rs.residual;
  return out;
}

}  // namespace oscatter
