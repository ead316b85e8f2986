#pragma once

#include "oscatter/sweep.hpp"

namespace oscatter {

// %.17g, enough digits that reading the CSV back reproduces the doubles.
std::string format_full(double v);

// Deterministic table: eps, fine_nodes, then the named value columns.
// Timings are deliberately absent so reruns produce identical bytes.
std::string sweep_csv(const SweepResult& res);

// Full record: rows with timings, fit summaries, config echo and hash.
Json sweep_json(const SweepResult& res);

// Rebuilds a result from its JSON record (for plotting stored runs).
SweepResult sweep_from_json(const Json& j);

// Log-log rate plot of the fitted columns. Self-contained SVG: measured
// series as polylines (class "data"), fitted power laws as straight
// segments (class "fit"), slopes in the legend.
std::string rate_plot_svg(const SweepResult& res);

void write_text_file(const std::string& path, const std::string& content);

// Writes <out_dir>/<basename>.csv and .json, plus .svg when configured.
// Returns the paths written.
std::vector<std::string> emit_result(const SweepResult& res,
                                     const ExperimentConfig& cfg);

}  // namespace oscatter
