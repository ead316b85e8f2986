#pragma once

#include <functional>
#include <map>

#include "oscatter/config.hpp"
#include "oscatter/metrics.hpp"

namespace oscatter {

inline constexpr const char* kCodeVersion = "0.1.0";

// One sweep row: the deterministic values that go to CSV, plus wall-clock
// (JSON only, so CSV stays byte-stable across runs).
struct SweepRow {
  double eps = 0.0;
  int fine_nodes = 0;
  std::vector<double> values;
  double wall_ms = 0.0;
};

struct ColumnFit {
  RateFit fit;
  int below_floor = 0;  // rows excluded as under the solver floor
  bool fitted = false;
};

struct SweepResult {
  std::string kind;                  // "source_sweep" | "amplitude_sweep"
  std::vector<std::string> columns;  // names of SweepRow::values entries
  std::vector<SweepRow> rows;
  std::map<std::string, ColumnFit> fits;
  bool exact_case = false;  // every rate column sat below the fit threshold
  std::string config_hash;
  Json config_echo;
  double expand_ms = 0.0;
};

// Columns named err_*, amp_*, disc_* carry convergence data; slopes are
// fitted on the rows above 10x the solver floor.
bool is_rate_column(const std::string& name);

// Source-problem sweep: for each eps, a direct fine-grid solve against the
// expansion's partial sums of every order 0..p. Error columns per order in
// H0_gamma, H1_gamma and sup over the norm window, plus the discrepancy sup
// (orders >= 2) and the direct solve residual.
SweepResult run_sweep(const ExperimentConfig& cfg);

// Plane-wave amplitude sweep over all configured incident directions:
// per order, |F_eps - sum_{n<=order} eps^n F_n| per (incident, outgoing)
// pair and the sup over pairs; plus flux defects of the direct solves.
SweepResult run_amplitude_table(const ExperimentConfig& cfg);

// Runs fn(0..count-1) on `jobs` workers; results must be written into
// index-addressed slots so the schedule cannot change anything observable.
void parallel_for_index(int count, int jobs, const std::function<void(int)>& fn);

}  // namespace oscatter
