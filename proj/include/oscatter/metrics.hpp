#pragma once

#include "oscatter/slow_grid.hpp"

namespace oscatter {

// Weighted Sobolev norm spec: sum_{k <= order} Int |d^k psi|^2 (1+x^2)^{-gamma}
// over |x| <= window.
struct NormSpec {
  int order = 0;       // s in {0, 1, 2}
  double gamma = 2.0;  // weight decay
  double window = 4.0; // clamp of the integration window
};

// Discrete H^s_gamma norm: order-6 finite differences for derivatives,
// trapezoid on the node-aligned window. Nonnegative; zero only for the zero
// field; homogeneous of degree 1.
double weighted_sobolev_norm(const SlowField& psi, const NormSpec& spec);

// Sup of |psi| over the node-aligned window |x| <= window.
double sup_norm(const SlowField& psi, double window);

// Least-squares fit of log(err) against log(eps).
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int samples = 0;
};

// Requires >= 3 samples with matching lengths, strictly positive eps and err,
// and non-constant eps; throws DegenerateFit otherwise.
RateFit fit_rate(const std::vector<double>& eps, const std::vector<double>& err);

}  // namespace oscatter
