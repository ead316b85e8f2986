#pragma once

#include "oscatter/slow_grid.hpp"

namespace oscatter {

// Finite-difference weights for the m-th derivative at evaluation point x0
// from arbitrary nodes (Fornberg's recursion). Exact for polynomials of
// degree < nodes.size().
std::vector<double> fd_weights(double x0, const std::vector<double>& nodes, int m);

// Derivative of order 1 or 2 on the field's own grid. Interior points use
// centered 7-point stencils (order 6); edge points use one-sided windows of
// 7 nodes (order 1) or 8 nodes (order 2) so the edge order stays 6.
// Throws GridTooCoarse when the grid cannot host the stencil.
SlowField slow_derivative(const SlowField& f, int order);

// Local polynomial interpolation of degree 6 (barycentric form on the
// 7-node window around the bracketing interval). Exact at nodes.
// Throws OutOfDomain for points outside the grid.
Complex interpolate(const SlowField& f, double x);
std::vector<Complex> interpolate(const SlowField& f, const std::vector<double>& xs);

}  // namespace oscatter
