#include "oscatter/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace oscatter {

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string sweep_csv(const SweepResult& res) {
  std::ostringstream out;
  out << "eps,fine_nodes";
  for (const std::string& c : res.columns) out << ',' << c;
  out << '\n';
  for (const SweepRow& row : res.rows) {
    out << format_full(row.eps) << ',' << row.fine_nodes;
    for (double v : row.values) out << ',' << format_full(v);
    out << '\n';
  }
  return out.str();
}

Json sweep_json(const SweepResult& res) {
  Json j;
  j["schema_version"] = 1;
  j["code_version"] = kCodeVersion;
  j["kind"] = res.kind;
  j["config_hash"] = res.config_hash;
  j["config"] = res.config_echo;
  j["columns"] = res.columns;
  Json rows = Json::array();
  for (const SweepRow& row : res.rows) {
    Json r;
    r["eps"] = row.eps;
    r["fine_nodes"] = row.fine_nodes;
    r["values"] = row.values;
    r["wall_ms"] = row.wall_ms;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  Json fits = Json::object();
  for (const auto& [name, cf] : res.fits) {
    Json f;
    f["fitted"] = cf.fitted;
    f["below_floor"] = cf.below_floor;
    if (cf.fitted) {
      f["slope"] = cf.fit.slope;
      f["intercept"] = cf.fit.intercept;
      f["r_squared"] = cf.fit.r_squared;
      f["samples"] = cf.fit.samples;
    }
    fits[name] = std::move(f);
  }
  j["fits"] = std::move(fits);
  j["exact_case"] = res.exact_case;
  j["timings"] = Json{{"expand_ms", res.expand_ms}};
  return j;
}

SweepResult sweep_from_json(const Json& j) {
  SweepResult res;
  try {
    res.kind = j.at("kind").get<std::string>();
    res.config_hash = j.at("config_hash").get<std::string>();
    res.config_echo = j.value("config", Json::object());
    res.columns = j.at("columns").get<std::vector<std::string>>();
    for (const Json& r : j.at("rows")) {
      SweepRow row;
      row.eps = r.at("eps").get<double>();
      row.fine_nodes = r.at("fine_nodes").get<int>();
      row.values = r.at("values").get<std::vector<double>>();
      row.wall_ms = r.value("wall_ms", 0.0);
      if (row.values.size() != res.columns.size())
        throw ConfigInvalid("row width does not match columns");
      res.rows.push_back(std::move(row));
    }
    if (j.contains("fits")) {
      for (const auto& [name, f] : j.at("fits").items()) {
        ColumnFit cf;
        cf.fitted = f.value("fitted", false);
        cf.below_floor = f.value("below_floor", 0);
        if (cf.fitted) {
          cf.fit.slope = f.at("slope").get<double>();
          cf.fit.intercept = f.at("intercept").get<double>();
          cf.fit.r_squared = f.at("r_squared").get<double>();
          cf.fit.samples = f.at("samples").get<int>();
        }
        res.fits[name] = cf;
      }
    }
    res.exact_case = j.value("exact_case", false);
    res.expand_ms = j.value("timings", Json::object()).value("expand_ms", 0.0);
  } catch (const Json::exception& e) {
    throw ConfigInvalid(std::string("malformed result document: ") + e.what());
  }
  return res;
}

namespace {

struct Series {
  std::string name;
  std::vector<double> eps, val;  // positive values only
  const ColumnFit* fit = nullptr;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#17becf", "#8c564b", "#7f7f7f"};

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string rate_plot_svg(const SweepResult& res) {
  std::vector<Series> series;
  for (std::size_t c = 0; c < res.columns.size(); ++c) {
    if (!is_rate_column(res.columns[c])) continue;
    Series s;
    s.name = res.columns[c];
    const auto it = res.fits.find(res.columns[c]);
    if (it != res.fits.end() && it->second.fitted) s.fit = &it->second;
    for (const SweepRow& row : res.rows) {
      if (row.values[c] > 0.0) {
        s.eps.push_back(row.eps);
        s.val.push_back(row.values[c]);
      }
    }
    if (s.eps.size() >= 2) series.push_back(std::move(s));
  }

  const double width = 720, height = 480;
  const double ml = 70, mr = 180, mt = 30, mb = 50;
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  if (series.empty()) {
    out << "<text x=\"20\" y=\"40\" font-family=\"sans-serif\">no fitted "
           "columns</text>\n</svg>\n";
    return out.str();
  }

  double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
  for (const Series& s : series) {
    for (double e : s.eps) {
      lx0 = std::min(lx0, std::log10(e));
      lx1 = std::max(lx1, std::log10(e));
    }
    for (double v : s.val) {
      ly0 = std::min(ly0, std::log10(v));
      ly1 = std::max(ly1, std::log10(v));
    }
  }
  if (lx1 - lx0 < 1e-12) lx1 = lx0 + 1.0;
  if (ly1 - ly0 < 1e-12) ly1 = ly0 + 1.0;
  const double padx = 0.04 * (lx1 - lx0), pady = 0.06 * (ly1 - ly0);
  lx0 -= padx; lx1 += padx; ly0 -= pady; ly1 += pady;

  const auto px = [&](double logeps) {
    return ml + (logeps - lx0) / (lx1 - lx0) * (width - ml - mr);
  };
  const auto py = [&](double logval) {
    return height - mb - (logval - ly0) / (ly1 - ly0) * (height - mt - mb);
  };

  // Frame and decade ticks.
  out << "<rect x=\"" << svg_num(ml) << "\" y=\"" << svg_num(mt) << "\" width=\""
      << svg_num(width - ml - mr) << "\" height=\"" << svg_num(height - mt - mb)
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int d = static_cast<int>(std::ceil(lx0)); d <= std::floor(lx1); ++d) {
    const double x = px(d);
    out << "<line x1=\"" << svg_num(x) << "\" y1=\"" << svg_num(height - mb)
        << "\" x2=\"" << svg_num(x) << "\" y2=\"" << svg_num(height - mb + 5)
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << svg_num(x) << "\" y=\"" << svg_num(height - mb + 20)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">1e"
        << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ly0)); d <= std::floor(ly1); ++d) {
    const double y = py(d);
    out << "<line x1=\"" << svg_num(ml - 5) << "\" y1=\"" << svg_num(y)
        << "\" x2=\"" << svg_num(ml) << "\" y2=\"" << svg_num(y)
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << svg_num(ml - 8) << "\" y=\"" << svg_num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">1e"
        << d << "</text>\n";
  }
  out << "<text x=\"" << svg_num(ml + (width - ml - mr) / 2) << "\" y=\""
      << svg_num(height - 12)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
         "eps</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];

    if (s.fit) {
      // Fitted power law across the plotted eps range; the fit lives in
      // natural logs, log(err) = slope * log(eps) + intercept.
      const double fe0 =
          std::log10(*std::min_element(s.eps.begin(), s.eps.end()));
      const double fe1 =
          std::log10(*std::max_element(s.eps.begin(), s.eps.end()));
      const auto fit_log10 = [&](double le) {
        return (s.fit->fit.slope * (le * std::log(10.0)) +
                s.fit->fit.intercept) /
               std::log(10.0);
      };
      out << "<line class=\"fit\" x1=\"" << svg_num(px(fe0)) << "\" y1=\""
          << svg_num(py(fit_log10(fe0))) << "\" x2=\"" << svg_num(px(fe1))
          << "\" y2=\"" << svg_num(py(fit_log10(fe1))) << "\" stroke=\"" << color
          << "\" stroke-dasharray=\"5,4\" stroke-width=\"1\"/>\n";
    }

    out << "<polyline class=\"data\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.eps.size(); ++k) {
      if (k) out << ' ';
      out << svg_num(px(std::log10(s.eps[k]))) << ','
          << svg_num(py(std::log10(s.val[k])));
    }
    out << "\"/>\n";
    for (std::size_t k = 0; k < s.eps.size(); ++k)
      out << "<circle cx=\"" << svg_num(px(std::log10(s.eps[k]))) << "\" cy=\""
          << svg_num(py(std::log10(s.val[k]))) << "\" r=\"2.5\" fill=\"" << color
          << "\"/>\n";

    const double ly = mt + 16 + 16 * static_cast<double>(i);
    out << "<line x1=\"" << svg_num(width - mr + 10) << "\" y1=\"" << svg_num(ly - 4)
        << "\" x2=\"" << svg_num(width - mr + 28) << "\" y2=\"" << svg_num(ly - 4)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    std::string label = s.name;
    if (s.fit) {
      char slope[32];
      std::snprintf(slope, sizeof(slope), " (%.2f)", s.fit->fit.slope);
      label += slope;
    }
    out << "<text x=\"" << svg_num(width - mr + 33) << "\" y=\"" << svg_num(ly)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw IoFailure("cannot create " + p.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw IoFailure("cannot write " + path);
}

std::vector<std::string> emit_result(const SweepResult& res,
                                     const ExperimentConfig& cfg) {
  std::vector<std::string> written;
  const std::string stem =
      (std::filesystem::path(cfg.out_dir) / cfg.basename).string();
  write_text_file(stem + ".csv", sweep_csv(res));
  written.push_back(stem + ".csv");
  write_text_file(stem + ".json", sweep_json(res).dump(2) + "\n");
  written.push_back(stem + ".json");
  if (cfg.write_svg) {
    write_text_file(stem + ".svg", rate_plot_svg(res));
    written.push_back(stem + ".svg");
  }
  return written;
}

}  // namespace oscatter
