#pragma once

#include <optional>
#include <string>

#include "oscatter/serialize.hpp"

namespace oscatter {

// One experiment: potential, source, sweep and output parameters.
// Parsed from a single JSON document; CLI flags override scalar fields.
struct ExperimentConfig {
  // Potential q(x, y) = bump(x; amplitude, radius) * sum_m b_m e^{2 pi i m y / L}.
  double bump_amplitude = 5.0;
  double support_radius = 1.0;
  std::vector<Complex> y_coefficients = {{1.0, 0.0}, {0.5, 0.0}, {0.25, 0.0}};
  std::vector<double> cell_periods = {1.0};
  int max_mode = 8;

  // Source bump f (source problems).
  double source_amplitude = 1.0;
  double source_radius = 1.0;

  double energy = 1.0;
  std::vector<double> incident_directions = {1.0, -1.0};
  int expansion_order = 3;
  std::vector<double> epsilons = {0.1, 0.07, 0.05, 0.035, 0.025};

  double half_width = 4.0;
  int slow_nodes = 1601;
  int points_per_period = 20;
  int max_fine_nodes = 20000;

  double norm_gamma = 2.0;
  double norm_window = 4.0;
  double fit_floor = 1e-8;

  std::string problem = "source";  // "source" | "plane_wave"
  std::string out_dir = "out";
  std::string basename = "sweep";
  bool write_svg = true;
  int jobs = 0;  // 0: take OSCATTER_JOBS or hardware default

  void validate() const;
  Json to_json() const;
  static ExperimentConfig from_json(const Json& j);
  static ExperimentConfig load(const std::string& path);
  std::string hash() const;
};

// Smooth compactly supported profile A exp(-1 / (1 - (x/R)^2)) for |x| < R.
double bump(double x, double amplitude, double radius);

// The experiment's slow grid.
SlowGrid slow_grid_of(const ExperimentConfig& cfg);

// q(x, y) = bump(x) * b(y) from the config's y-coefficients (m >= 0 given,
// negative modes filled Hermitian so q is real).
TwoScalePotential build_potential(const ExperimentConfig& cfg);

// Source field f on the slow grid.
SlowField build_source(const ExperimentConfig& cfg);

// Worker count: explicit jobs, else OSCATTER_JOBS, else hardware.
int resolve_jobs(const ExperimentConfig& cfg);

}  // namespace oscatter
