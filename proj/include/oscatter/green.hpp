#pragma once

#include <complex>

#include "oscatter/errors.hpp"

namespace oscatter {

using Complex = std::complex<double>;

// Outgoing free resolvent kernel G_0(r; E) of -Laplace - E at energy E > 0,
// as a function of r = |x - y|:
//   d = 1: i e^{i k r} / (2k)        (finite at r = 0)
//   d = 3: e^{i k r} / (4 pi r)      (SingularEvaluation at r = 0)
// with k = sqrt(E). d = 2 is an optional feature (off unless enable_dim2):
//   d = 2: (i/4) H0^(1)(k r)         (SingularEvaluation at r = 0)
// Any other d throws UnsupportedDimension.
Complex green_kernel(int d, double energy, double r, bool enable_dim2 = false);

// Far-field normalization c_d in T(xhat) = c_d Int e^{-i sqrt(E) <xhat,y>} ...
//   d = 1: i / (2 sqrt(E)),  d = 3: 1 / (4 pi).
Complex far_field_coefficient(int d, double energy);

// Hankel function H0^(1)(z) for z > 0: ascending series for z <= 12,
// truncated asymptotic expansion beyond. Absolute/relative accuracy ~1e-10
// near the switch, better elsewhere.
Complex hankel1_0(double z);

}  // namespace oscatter
