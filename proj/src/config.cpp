#include "oscatter/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <thread>

namespace oscatter {

namespace {

// A silently ignored key (a typo, a block name from another tool) would make
// the run fall back to defaults without a trace, so reject anything unknown.
void reject_unknown_keys(const Json& j,
                         std::initializer_list<const char*> allowed,
                         const char* where) {
  if (!j.is_object()) throw ConfigInvalid(std::string(where) + " must be a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known)
      throw ConfigInvalid("unknown key '" + item.key() + "' in " + where);
  }
}

}  // namespace

double bump(double x, double amplitude, double radius) {
  const double t = x / radius;
  if (std::abs(t) >= 1.0) return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - t * t));
}

void ExperimentConfig::validate() const {
  if (!(energy > 0.0)) throw ConfigInvalid("energy must be positive");
  if (expansion_order < 0) throw ConfigInvalid("expansion order must be >= 0");
  if (!(support_radius > 0.0) || !(source_radius > 0.0))
    throw ConfigInvalid("support radii must be positive");
  if (!(half_width >= support_radius) || !(half_width >= source_radius))
    throw ConfigInvalid("grid half-width must cover the supports");
  if (slow_nodes < 8) throw ConfigInvalid("slow grid too coarse");
  if (max_mode < 0) throw ConfigInvalid("max_mode must be >= 0");
  if (static_cast<int>(y_coefficients.size()) > max_mode + 1)
    throw ConfigInvalid("y coefficients exceed max_mode");
  if (y_coefficients.empty()) throw ConfigInvalid("need at least the mean y-mode");
  if (cell_periods.empty()) throw ConfigInvalid("need at least one cell period");
  for (double L : cell_periods)
    if (!(L > 0.0)) throw ConfigInvalid("cell periods must be positive");
  if (epsilons.empty()) throw ConfigInvalid("need at least one eps");
  double prev = 1e300;
  for (double e : epsilons) {
    if (!(e > 0.0) || e > 0.5) throw ConfigInvalid("eps must lie in (0, 0.5]");
    if (e >= prev) throw ConfigInvalid("eps list must be strictly decreasing");
    prev = e;
  }
  if (points_per_period < 10)
    throw ConfigInvalid("points_per_period must be >= 10");
  if (max_fine_nodes < 100) throw ConfigInvalid("max_fine_nodes too small");
  if (!(norm_gamma >= 0.0)) throw ConfigInvalid("gamma must be >= 0");
  if (!(norm_window > 0.0) || norm_window > half_width * (1.0 + 1e-12))
    throw ConfigInvalid("norm window must lie inside the grid");
  if (!(fit_floor >= 0.0)) throw ConfigInvalid("fit floor must be >= 0");
  if (problem != "source" && problem != "plane_wave")
    throw ConfigInvalid("problem must be 'source' or 'plane_wave'");
  for (double k : incident_directions)
    if (k != 1.0 && k != -1.0)
      throw ConfigInvalid("incident directions must be +1 or -1");
  if (incident_directions.empty())
    throw ConfigInvalid("need at least one incident direction");
  if (jobs < 0) throw ConfigInvalid("jobs must be >= 0");
}

Json ExperimentConfig::to_json() const {
  Json y = Json::array();
  for (const Complex& c : y_coefficients) y.push_back({c.real(), c.imag()});
  return {{"schema_version", 1},
          {"potential",
           {{"bump_amplitude", bump_amplitude},
            {"support_radius", support_radius},
            {"y_coefficients", y},
            {"cell_periods", cell_periods},
            {"max_mode", max_mode}}},
          {"source",
           {{"bump_amplitude", source_amplitude}, {"support_radius", source_radius}}},
          {"energy", energy},
          {"incident_directions", incident_directions},
          {"expansion_order", expansion_order},
          {"epsilons", epsilons},
          {"grid",
           {{"half_width", half_width},
            {"slow_nodes", slow_nodes},
            {"points_per_period", points_per_period},
            {"max_fine_nodes", max_fine_nodes}}},
          {"norm",
           {{"gamma", norm_gamma}, {"window", norm_window}, {"fit_floor", fit_floor}}},
          {"problem", problem},
          {"output",
           {{"directory", out_dir}, {"basename", basename}, {"svg", write_svg}}},
          {"jobs", jobs}};
}

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
  ExperimentConfig c;
  reject_unknown_keys(j,
                      {"schema_version", "potential", "source", "energy",
                       "incident_directions", "expansion_order", "epsilons",
                       "grid", "norm", "problem", "output", "jobs"},
                      "config");
  try {
    if (j.contains("potential")) {
      const Json& p = j.at("potential");
      reject_unknown_keys(p,
                          {"bump_amplitude", "support_radius", "y_coefficients",
                           "cell_periods", "max_mode"},
                          "potential");
      if (p.contains("bump_amplitude")) c.bump_amplitude = p.at("bump_amplitude");
      if (p.contains("support_radius")) c.support_radius = p.at("support_radius");
      if (p.contains("y_coefficients")) {
        c.y_coefficients.clear();
        for (const Json& e : p.at("y_coefficients")) {
          if (e.is_array())
            c.y_coefficients.emplace_back(e.at(0).get<double>(),
                                          e.size() > 1 ? e.at(1).get<double>() : 0.0);
          else
            c.y_coefficients.emplace_back(e.get<double>(), 0.0);
        }
      }
      if (p.contains("cell_periods"))
        c.cell_periods = p.at("cell_periods").get<std::vector<double>>();
      if (p.contains("max_mode")) c.max_mode = p.at("max_mode");
    }
    if (j.contains("source")) {
      const Json& s = j.at("source");
      reject_unknown_keys(s, {"bump_amplitude", "support_radius"}, "source");
      if (s.contains("bump_amplitude")) c.source_amplitude = s.at("bump_amplitude");
      if (s.contains("support_radius")) c.source_radius = s.at("support_radius");
    }
    if (j.contains("energy")) c.energy = j.at("energy");
    if (j.contains("incident_directions"))
      c.incident_directions = j.at("incident_directions").get<std::vector<double>>();
    if (j.contains("expansion_order")) c.expansion_order = j.at("expansion_order");
    if (j.contains("epsilons")) c.epsilons = j.at("epsilons").get<std::vector<double>>();
    if (j.contains("grid")) {
      const Json& g = j.at("grid");
      reject_unknown_keys(
          g, {"half_width", "slow_nodes", "points_per_period", "max_fine_nodes"},
          "grid");
      if (g.contains("half_width")) c.half_width = g.at("half_width");
      if (g.contains("slow_nodes")) c.slow_nodes = g.at("slow_nodes");
      if (g.contains("points_per_period")) c.points_per_period = g.at("points_per_period");
      if (g.contains("max_fine_nodes")) c.max_fine_nodes = g.at("max_fine_nodes");
    }
    if (j.contains("norm")) {
      const Json& n = j.at("norm");
      reject_unknown_keys(n, {"gamma", "window", "fit_floor"}, "norm");
      if (n.contains("gamma")) c.norm_gamma = n.at("gamma");
      if (n.contains("window")) c.norm_window = n.at("window");
      if (n.contains("fit_floor")) c.fit_floor = n.at("fit_floor");
    }
    if (j.contains("problem")) c.problem = j.at("problem");
    if (j.contains("output")) {
      const Json& o = j.at("output");
      reject_unknown_keys(o, {"directory", "basename", "svg"}, "output");
      if (o.contains("directory")) c.out_dir = o.at("directory");
      if (o.contains("basename")) c.basename = o.at("basename");
      if (o.contains("svg")) c.write_svg = o.at("svg");
    }
    if (j.contains("jobs")) c.jobs = j.at("jobs");
  } catch (const Json::exception& e) {
    throw ConfigInvalid(std::string("malformed config: ") + e.what());
  }
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open config: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

std::string ExperimentConfig::hash() const { return hash_hex(to_json()); }

SlowGrid slow_grid_of(const ExperimentConfig& cfg) {
  return SlowGrid(cfg.half_width, cfg.slow_nodes);
}

TwoScalePotential build_potential(const ExperimentConfig& cfg) {
  const SlowGrid grid = slow_grid_of(cfg);
  const PeriodicCell cell(cfg.cell_periods);
  if (cell.dim() != 1)
    throw ConfigInvalid("the harness builds 1-d cells");
  CellSpectrum b(cell, cfg.max_mode);
  for (int m = 0; m < static_cast<int>(cfg.y_coefficients.size()); ++m) {
    b.at({m}) = cfg.y_coefficients[m];
    if (m > 0) b.at({-m}) = std::conj(cfg.y_coefficients[m]);
  }
  std::vector<CellSpectrum> spectra(grid.n, CellSpectrum(cell, cfg.max_mode));
  for (int i = 0; i < grid.n; ++i) {
    const double a = bump(grid.node(i), cfg.bump_amplitude, cfg.support_radius);
    if (a == 0.0) continue;
    CellSpectrum s = b;
    s *= Complex(a, 0.0);
    spectra[i] = std::move(s);
  }
  return TwoScalePotential(grid, cfg.support_radius, std::move(spectra));
}

SlowField build_source(const ExperimentConfig& cfg) {
  return sample_field(slow_grid_of(cfg), [&](double x) {
    return Complex(bump(x, cfg.source_amplitude, cfg.source_radius), 0.0);
  });
}

int resolve_jobs(const ExperimentConfig& cfg) {
  if (cfg.jobs > 0) return cfg.jobs;
  if (const char* env = std::getenv("OSCATTER_JOBS")) {
    const int j = std::atoi(env);
    if (j > 0) return j;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace oscatter
