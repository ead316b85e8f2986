#include "oscatter/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "oscatter/reference.hpp"

namespace oscatter {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Fits every rate column on the rows above 10x the solver floor; the
// excluded rows are counted so the result can say why a slope is missing.
void fit_columns(SweepResult& res, double floor) {
  const double threshold = 10.0 * floor;
  bool all_below = true;
  for (std::size_t c = 0; c < res.columns.size(); ++c) {
    const std::string& name = res.columns[c];
    if (!is_rate_column(name)) continue;
    ColumnFit cf;
    std::vector<double> eps, err;
    for (const SweepRow& row : res.rows) {
      const double v = row.values[c];
      if (v > threshold) {
        eps.push_back(row.eps);
        err.push_back(v);
        all_below = false;
      } else {
        ++cf.below_floor;
      }
    }
    try {
      cf.fit = fit_rate(eps, err);
      cf.fitted = true;
    } catch (const DegenerateFit&) {
      cf.fitted = false;
    }
    res.fits[name] = cf;
  }
  // judged on the values themselves, not on whether a fit succeeded: a sweep
  // too short to fit must not masquerade as an exactly collapsing one
  res.exact_case = all_below;
}

}  // namespace

bool is_rate_column(const std::string& name) {
  return name.rfind("err_", 0) == 0 || name.rfind("amp_", 0) == 0 ||
         name.rfind("disc_", 0) == 0;
}

void parallel_for_index(int count, int jobs, const std::function<void(int)>& fn) {
  if (count <= 0) return;
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.problem != "source")
    throw WrongProblemKind("run_sweep drives source problems");

  SweepResult res;
  res.kind = "source_sweep";
  res.config_hash = cfg.hash();
  res.config_echo = cfg.to_json();

  const TwoScalePotential q = build_potential(cfg);
  const SlowField f = build_source(cfg);

  const Clock::time_point t0 = Clock::now();
  const AsymptoticSolution sol =
      expand_source(q, f, cfg.energy, cfg.expansion_order);
  res.expand_ms = ms_since(t0);

  const int p = cfg.expansion_order;
  for (int n = 0; n <= p; ++n) {
    res.columns.push_back("err_h0_p" + std::to_string(n));
    res.columns.push_back("err_h1_p" + std::to_string(n));
    res.columns.push_back("err_sup_p" + std::to_string(n));
  }
  if (p >= 2) res.columns.push_back("disc_sup");
  res.columns.push_back("residual_direct");

  const NormSpec h0{0, cfg.norm_gamma, cfg.norm_window};
  const NormSpec h1{1, cfg.norm_gamma, cfg.norm_window};

  res.rows.assign(cfg.epsilons.size(), SweepRow{});
  parallel_for_index(
      static_cast<int>(cfg.epsilons.size()), resolve_jobs(cfg), [&](int r) {
        const Clock::time_point row_t0 = Clock::now();
        const double eps = cfg.epsilons[r];
        const SlowGrid fine = fine_grid_for(cfg.half_width, q, cfg.energy, eps,
                                            cfg.points_per_period,
                                            cfg.max_fine_nodes);
        const DirectSolution direct =
            direct_solve_source(q, f, cfg.energy, eps, fine);

        SweepRow row;
        row.eps = eps;
        row.fine_nodes = fine.n;
        for (int n = 0; n <= p; ++n) {
          const SlowField approx = evaluate(sol, eps, fine, n);
          const SlowField diff = direct.field - approx;
          row.values.push_back(weighted_sobolev_norm(diff, h0));
          row.values.push_back(weighted_sobolev_norm(diff, h1));
          row.values.push_back(sup_norm(diff, cfg.norm_window));
        }
        if (p >= 2) {
          const SlowField disc =
              discrepancy(sol, eps, cfg.points_per_period, cfg.max_fine_nodes);
          row.values.push_back(sup_norm(disc, cfg.half_width));
        }
        row.values.push_back(direct.residual);
        row.wall_ms = ms_since(row_t0);
        res.rows[r] = std::move(row);
      });

  fit_columns(res, cfg.fit_floor);
  return res;
}

SweepResult run_amplitude_table(const ExperimentConfig& cfg) {
  cfg.validate();

  SweepResult res;
  res.kind = "amplitude_sweep";
  res.config_hash = cfg.hash();
  res.config_echo = cfg.to_json();

  const TwoScalePotential q = build_potential(cfg);
  const int p = cfg.expansion_order;

  const Clock::time_point t0 = Clock::now();
  std::vector<AsymptoticSolution> sols;
  for (double khat : cfg.incident_directions)
    sols.push_back(expand_plane_wave(q, cfg.energy, khat, p));
  res.expand_ms = ms_since(t0);

  const auto tag = [](double dir) { return dir > 0 ? std::string("p") : std::string("m"); };
  for (int n = 0; n <= p; ++n) {
    res.columns.push_back("amp_sup_p" + std::to_string(n));
    for (double khat : cfg.incident_directions)
      for (double xhat : {1.0, -1.0})
        res.columns.push_back("amp_err_k" + tag(khat) + "_x" + tag(xhat) + "_p" +
                              std::to_string(n));
  }
  for (double khat : cfg.incident_directions)
    res.columns.push_back("flux_k" + tag(khat));
  res.columns.push_back("residual_direct");

  res.rows.assign(cfg.epsilons.size(), SweepRow{});
  parallel_for_index(
      static_cast<int>(cfg.epsilons.size()), resolve_jobs(cfg), [&](int r) {
        const Clock::time_point row_t0 = Clock::now();
        const double eps = cfg.epsilons[r];
        const SlowGrid fine = fine_grid_for(cfg.half_width, q, cfg.energy, eps,
                                            cfg.points_per_period,
                                            cfg.max_fine_nodes);
        std::vector<DirectSolution> direct;
        for (double khat : cfg.incident_directions)
          direct.push_back(
              direct_solve_plane_wave(q, cfg.energy, khat, eps, fine));

        SweepRow row;
        row.eps = eps;
        row.fine_nodes = fine.n;
        double worst_residual = 0.0;
        for (const DirectSolution& d : direct)
          worst_residual = std::max(worst_residual, d.residual);

        for (int n = 0; n <= p; ++n) {
          std::vector<double> pair_errors;
          for (std::size_t ki = 0; ki < cfg.incident_directions.size(); ++ki) {
            for (double xhat : {1.0, -1.0}) {
              const Complex f_eps = direct[ki].amplitude.value(xhat);
              const Complex f_exp = amplitude_partial_sum(sols[ki], eps, xhat, n);
              pair_errors.push_back(std::abs(f_eps - f_exp));
            }
          }
          double sup = 0.0;
          for (double e : pair_errors) sup = std::max(sup, e);
          row.values.push_back(sup);
          for (double e : pair_errors) row.values.push_back(e);
        }
        for (const DirectSolution& d : direct)
          row.values.push_back(flux_defect(d.amplitude));
        row.values.push_back(worst_residual);
        row.wall_ms = ms_since(row_t0);
        res.rows[r] = std::move(row);
      });

  fit_columns(res, cfg.fit_floor);
  return res;
}

}  // namespace oscatter
