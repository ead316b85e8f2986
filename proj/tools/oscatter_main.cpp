#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscatter/emit.hpp"
#include "oscatter/reference.hpp"

namespace {

using namespace oscatter;

struct CommonArgs {
  std::string config_path;
  std::vector<double> eps_override;
  int order_override = -1;
  double energy_override = 0.0;
  std::string out_override;
  int jobs_override = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "experiment config JSON");
  cmd->add_option("--eps", args.eps_override, "override the eps list");
  cmd->add_option("--order", args.order_override, "override expansion order");
  cmd->add_option("--energy", args.energy_override, "override energy E");
  cmd->add_option("--out", args.out_override, "override output directory");
  cmd->add_option("--jobs", args.jobs_override, "worker count (0 = auto)");
}

ExperimentConfig make_config(const CommonArgs& args) {
  ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = ExperimentConfig::load(args.config_path);
  if (!args.eps_override.empty()) cfg.epsilons = args.eps_override;
  if (args.order_override >= 0) cfg.expansion_order = args.order_override;
  if (args.energy_override > 0.0) cfg.energy = args.energy_override;
  if (!args.out_override.empty()) cfg.out_dir = args.out_override;
  if (args.jobs_override > 0) cfg.jobs = args.jobs_override;
  cfg.validate();
  return cfg;
}

void print_fits(const SweepResult& res) {
  if (res.exact_case) {
    std::printf("exact case: every rate column below the fit threshold\n");
    return;
  }
  for (const auto& [name, cf] : res.fits) {
    if (cf.fitted)
      std::printf("%-24s slope %7.3f  r2 %.4f  samples %d%s\n", name.c_str(),
                  cf.fit.slope, cf.fit.r_squared, cf.fit.samples,
                  cf.below_floor ? "  (some rows below floor)" : "");
    else
      std::printf("%-24s not fitted (%d rows below floor; a fit needs 3 above)\n",
                  name.c_str(), cf.below_floor);
  }
}

int cmd_avg(const CommonArgs& args, int stride) {
  const ExperimentConfig cfg = make_config(args);
  const TwoScalePotential q = build_potential(cfg);
  const SlowField qhat = average_potential(q);
  std::printf("x,qhat_re,qhat_im\n");
  for (int i = 0; i < qhat.grid.n; i += std::max(1, stride))
    std::printf("%s,%s,%s\n", format_full(qhat.grid.node(i)).c_str(),
                format_full(qhat.values[i].real()).c_str(),
                format_full(qhat.values[i].imag()).c_str());
  return 0;
}

int cmd_expand(const CommonArgs& args) {
  const ExperimentConfig cfg = make_config(args);
  const TwoScalePotential q = build_potential(cfg);
  const std::filesystem::path cache_dir =
      std::filesystem::path(cfg.out_dir) / "cache";

  const auto cache_one = [&](const AsymptoticSolution& sol) {
    const std::string path =
        (cache_dir / (expansion_cache_key(sol) + ".json")).string();
    if (std::filesystem::exists(path)) {
      std::printf("cache hit %s\n", path.c_str());
      return;
    }
    write_text_file(path, to_json(sol).dump() + "\n");
    std::printf("cached %s\n", path.c_str());
  };

  if (cfg.problem == "source") {
    const SlowField f = build_source(cfg);
    cache_one(expand_source(q, f, cfg.energy, cfg.expansion_order));
  } else {
    for (double khat : cfg.incident_directions)
      cache_one(expand_plane_wave(q, cfg.energy, khat, cfg.expansion_order));
  }
  return 0;
}

int cmd_solve(const CommonArgs& args) {
  const ExperimentConfig cfg = make_config(args);
  const TwoScalePotential q = build_potential(cfg);
  const double eps = cfg.epsilons.front();
  const SlowGrid fine = fine_grid_for(cfg.half_width, q, cfg.energy, eps,
                                      cfg.points_per_period, cfg.max_fine_nodes);

  const auto report = [&](const DirectSolution& d, const std::string& label) {
    std::printf("%s eps=%g nodes=%d residual=%.3e\n", label.c_str(), eps,
                fine.n, d.residual);
    for (std::size_t i = 0; i < d.amplitude.directions.size(); ++i)
      std::printf("  F(%+g) = %.12g %+.12gi\n", d.amplitude.directions[i],
                  d.amplitude.values[i].real(), d.amplitude.values[i].imag());
    if (q.real_valued() && cfg.problem == "plane_wave")
      std::printf("  flux defect = %.3e\n", flux_defect(d.amplitude));
    const std::string path =
        (std::filesystem::path(cfg.out_dir) / (cfg.basename + "_field.csv"))
            .string();
    std::string csv = "x,re,im\n";
    for (int i = 0; i < d.field.grid.n; ++i)
      csv += format_full(d.field.grid.node(i)) + ',' +
             format_full(d.field.values[i].real()) + ',' +
             format_full(d.field.values[i].imag()) + '\n';
    write_text_file(path, csv);
    std::printf("  field -> %s\n", path.c_str());
  };

  if (cfg.problem == "source") {
    const SlowField f = build_source(cfg);
    report(direct_solve_source(q, f, cfg.energy, eps, fine), "source solve");
  } else {
    for (double khat : cfg.incident_directions)
      report(direct_solve_plane_wave(q, cfg.energy, khat, eps, fine),
             "plane-wave solve khat=" + std::to_string(khat));
  }
  return 0;
}

int cmd_sweep(const CommonArgs& args, bool amplitude) {
  ExperimentConfig cfg = make_config(args);
  if (amplitude) cfg.problem = "plane_wave";
  const SweepResult res = amplitude ? run_amplitude_table(cfg) : run_sweep(cfg);
  for (const std::string& path : emit_result(res, cfg))
    std::printf("wrote %s\n", path.c_str());
  print_fits(res);
  return 0;
}

int cmd_plot(const std::string& input, const std::string& out_override) {
  std::ifstream in(input);
  if (!in) throw IoFailure("cannot read " + input);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw ConfigInvalid(std::string("malformed result document: ") + e.what());
  }
  const SweepResult res = sweep_from_json(j);
  std::filesystem::path out = std::filesystem::path(input).replace_extension(".svg");
  if (!out_override.empty())
    out = std::filesystem::path(out_override) / out.filename();
  write_text_file(out.string(), rate_plot_svg(res));
  std::printf("wrote %s\n", out.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-scale Helmholtz scattering workbench"};
  app.require_subcommand(1);

  CommonArgs args;
  int stride = 50;
  std::string plot_input, plot_out;

  CLI::App* avg = app.add_subcommand("avg", "print averaged potential samples");
  add_common(avg, args);
  avg->add_option("--stride", stride, "print every k-th node");

  CLI::App* expand =
      app.add_subcommand("expand", "build and cache an expansion");
  add_common(expand, args);

  CLI::App* solve = app.add_subcommand("solve", "one direct fine-grid solve");
  add_common(solve, args);

  CLI::App* sweep =
      app.add_subcommand("sweep", "field-error sweep against direct solves");
  add_common(sweep, args);

  CLI::App* amp =
      app.add_subcommand("amplitude", "far-field amplitude error sweep");
  add_common(amp, args);

  CLI::App* plot = app.add_subcommand("plot", "render SVG from a result JSON");
  plot->add_option("input", plot_input, "result JSON path")->required();
  plot->add_option("--out", plot_out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (avg->parsed()) return cmd_avg(args, stride);
    if (expand->parsed()) return cmd_expand(args);
    if (solve->parsed()) return cmd_solve(args);
    if (sweep->parsed()) return cmd_sweep(args, false);
    if (amp->parsed()) return cmd_sweep(args, true);
    if (plot->parsed()) return cmd_plot(plot_input, plot_out);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
