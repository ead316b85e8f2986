#pragma once

#include "oscatter/slow_grid.hpp"

namespace oscatter {

// Scattering amplitude samples at energy E for a fixed problem:
// values[j] belongs to direction directions[j] (d = 1: {+1, -1}).
// incident is the incident direction for plane-wave problems, 0 for
// source problems.
struct Amplitude {
  double energy = 0.0;
  double incident = 0.0;
  std::vector<double> directions;
  std::vector<Complex> values;

  Complex value(double direction) const;
};

// |t|^2 + |r|^2 - 1 for a d = 1 plane-wave amplitude (t = 1 + F(khat, khat),
// r = F(-khat, khat)); vanishes for real potentials.
double flux_defect(const Amplitude& a);

// Solution of the outgoing source problem (-Lap + p - E) psi = f via the
// integral equation psi + G0*(p psi) = G0*f on the field grid.
// Composite trapezoid with the kink at x = y handled by the Euler-Maclaurin
// diagonal correction (observed order 4); the dense system is restricted to
// supp(p) and the exterior filled in with the outgoing representation,
// which reproduces the full-grid system exactly.
// The discrete residual, relative to max |rhs|, must be <= residual_tol.
struct RadiatingSolution {
  SlowField field;
  double residual = 0.0;  // relative discrete residual over all nodes
};

RadiatingSolution solve_radiating(const SlowField& p, const SlowField& f,
                                  double energy, double residual_tol = 1e-10);

// Total field chi = e^{i sqrt(E) khat x} + scattered for a plane wave
// incident from direction khat in {+1, -1}; chi + G0*(p chi) = incident.
RadiatingSolution solve_plane_wave(const SlowField& p, double energy,
                                   double khat, double residual_tol = 1e-10);

// Far-field amplitude of the outgoing part of psi:
//   T(xhat) = c_1 Int e^{-i sqrt(E) xhat y} (f(y) - p(y) psi(y)) dy.
// For plane-wave problems pass the total field as psi and a zero f; the
// integrand then represents the scattered part -G0*(p chi).
Amplitude far_field(const SlowField& p, const SlowField& f,
                    const SlowField& psi, double energy, double incident = 0.0);

}  // namespace oscatter
