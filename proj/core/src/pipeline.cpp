#include "msrimg/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "msrimg/errors.hpp"
#include "msrimg/foldy_lax.hpp"
#include "msrimg/image_io.hpp"
#include "msrimg/noise.hpp"

namespace msrimg {
namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string exact(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double provenance_double(const MSRDataset& ds, const std::string& key, double fallback) {
  auto it = ds.provenance.find(key);
  if (it == ds.provenance.end()) return fallback;
  try {
    std::size_t used = 0;
    const double x = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return x;
  } catch (const std::exception&) {
    throw ParseError("dataset provenance: '" + key + "' is not a number: " + it->second);
  }
}

json metrics_json(const PeakMetrics& m) {
  auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  return json{{"level", m.level},
              {"false_alarm_distance", m.false_alarm_distance},
              {"coverage_distance", finite_or_null(m.coverage_distance)},
              {"peak_value", m.peak_value},
              {"peak_location", json::array({m.peak_location.x(), m.peak_location.y()})},
              {"background_mean", finite_or_null(m.background_mean)},
              {"tube_width", m.tube_width},
              {"superlevel_count", m.superlevel_count}};
}

template <class F>
auto stage(const char* name, F&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(name) + ": " + e.what());
  }
}

}  // namespace

Eigen::MatrixXcd synthesize_matrix(const Scenario& s, double omega) {
  const FrequencyContext ctx = frequency_context(s.medium, omega);
  const DirectionSet dirs = build_directions(s.direction_count, s.alpha, s.beta, ctx);
  const double spacing = ctx.lambda_minus / s.quad_per_wavelength;
  switch (s.forward_model) {
    case ForwardModel::AsymptoticFine:
      return assemble_msr_fine(s.inclusions, s.medium, ctx, dirs, spacing);
    case ForwardModel::CoarseFactored:
      return assemble_msr_factored(s.inclusions, s.medium, ctx, dirs).product();
    case ForwardModel::FoldyLax:
      return assemble_msr_foldylax(s.inclusions, s.medium, ctx, dirs, spacing);
  }
  throw ConfigurationError("unknown forward model");
}

MSRDataset synthesize(const Scenario& s) {
  const auto diagnostics = validate(s);
  if (has_errors(diagnostics)) {
    std::string msg = "invalid scenario";
    for (const auto& d : diagnostics)
      if (d.severity == Severity::Error) msg += "\n  " + format_diagnostic(d);
    throw ConfigurationError(msg);
  }
  MSRDataset ds;
  ds.frequencies = frequency_list(s);
  ds.medium = s.medium;
  ds.model = s.forward_model;
  ds.directions = build_directions(s.direction_count, s.alpha, s.beta, frequency_context(s.medium, ds.frequencies.front()));
  if (s.snr_db) ds.noise = NoiseSpec{*s.snr_db, s.seed, std::string(kNoiseGenerator)};

  for (std::size_t f = 0; f < ds.frequencies.size(); ++f) {
    Eigen::MatrixXcd k = synthesize_matrix(s, ds.frequencies[f]);
    if (s.snr_db) k = add_noise(k, *s.snr_db, s.seed, f);
    ds.matrices.push_back(std::move(k));
  }

  const ImagingSettings im = imaging_settings(s);
  ds.provenance["scenario"] = s.name.empty() ? "unnamed" : s.name;
  ds.provenance["scenario_hash"] = scenario_hash(s);
  ds.provenance["contrast"] = to_string(scenario_contrast(s));
  ds.provenance["steering"] = exact(im.steering.a) + "," + exact(im.steering.b1) + "," + exact(im.steering.b2);
  ds.provenance["domain"] = exact(im.domain.x_min) + "," + exact(im.domain.x_max) + "," + exact(im.domain.y_min) +
                            "," + exact(im.domain.y_max);
  ds.provenance["grid_step"] = exact(im.grid_step);
  ds.provenance["svd_threshold"] = exact(im.threshold);
  ds.provenance["level"] = exact(im.level);
  return ds;
}

ImagingSettings imaging_settings(const Scenario& s) {
  return {s.search_domain, s.grid_step, s.svd_threshold, resolve_steering(s), s.level};
}

ImagingSettings imaging_settings(const MSRDataset& ds) {
  ImagingSettings out;
  auto list = [&](const std::string& key, std::size_t n) -> std::optional<std::vector<double>> {
    auto it = ds.provenance.find(key);
    if (it == ds.provenance.end()) return std::nullopt;
    std::vector<double> xs;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      try {
        xs.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw ParseError("dataset provenance: bad '" + key + "': " + it->second);
      }
    }
    if (xs.size() != n) throw ParseError("dataset provenance: '" + key + "' needs " + std::to_string(n) + " values");
    return xs;
  };
  if (auto d = list("domain", 4)) out.domain = {(*d)[0], (*d)[1], (*d)[2], (*d)[3]};
  out.grid_step = provenance_double(ds, "grid_step", out.grid_step);
  out.threshold = provenance_double(ds, "svd_threshold", out.threshold);
  out.level = provenance_double(ds, "level", out.level);
  if (auto c = list("steering", 3)) {
    out.steering = {(*c)[0], (*c)[1], (*c)[2]};
  } else if (auto it = ds.provenance.find("contrast"); it != ds.provenance.end()) {
    out.steering = default_steering(contrast_kind_from_string(it->second));
  }
  return out;
}

ImagingResult image_dataset(const MSRDataset& dataset, const ImagingSettings& settings) {
  const Grid grid = make_grid(settings.domain, settings.grid_step);
  ImagingResult out;
  out.per_frequency = image_frequencies(dataset, settings.steering, grid, settings.threshold);
  bool any = false;
  for (const auto& m : out.per_frequency) any = any || !m.no_signal;
  if (!any) throw ConfigurationError("no signal subspace: M_f = 0 at every frequency");
  out.combined = average_maps(out.per_frequency);
  return out;
}

std::string report_to_json(const RunReport& r) {
  json j;
  j["scenario"] = r.scenario_name;
  j["scenario_hash"] = r.scenario_hash;
  j["N"] = r.n;
  j["N_plus"] = r.n_plus;
  j["N_plus_table"] = r.reported_n_plus ? json(*r.reported_n_plus) : json(nullptr);
  j["frequencies"] = r.frequencies;
  j["M_f"] = r.retained;
  j["steering"] = json::array({r.steering.a, r.steering.b1, r.steering.b2});
  j["max_location"] = json::array({r.max_location.x(), r.max_location.y()});
  j["max_value"] = r.max_value;
  j["metrics"] = r.metrics ? metrics_json(*r.metrics) : json(nullptr);
  json t = json::object();
  for (const auto& [k, v] : r.timings) t[k] = v;
  j["timings_s"] = t;
  json p = json::object();
  for (const auto& [k, v] : r.paths) p[k] = v;
  j["paths"] = p;
  return j.dump(2) + "\n";
}

std::string metrics_to_json(const PeakMetrics& m) { return metrics_json(m).dump(2) + "\n"; }

RunReport reproduce(const Scenario& s, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  RunReport report;
  report.scenario_name = s.name;
  report.scenario_hash = scenario_hash(s);
  report.reported_n_plus = reported_n_plus(s.name);
  fs::create_directories(out_dir);

  auto t0 = Clock::now();
  const MSRDataset ds = stage("synthesize", [&] { return synthesize(s); });
  report.timings["synthesize"] = seconds_since(t0);

  t0 = Clock::now();
  stage("write", [&] {
    write_dataset(ds, out_dir / "dataset");
    if (s.export_csv) export_dataset_csv(ds, out_dir / "dataset");
    return 0;
  });
  report.timings["write_dataset"] = seconds_since(t0);
  report.paths["dataset"] = (out_dir / "dataset").string();

  t0 = Clock::now();
  const ImagingSettings settings = imaging_settings(s);
  const ImagingResult images = stage("image", [&] { return image_dataset(ds, settings); });
  report.timings["image"] = seconds_since(t0);

  report.n = ds.directions.count;
  report.n_plus = ds.directions.n_plus;
  report.frequencies = ds.frequencies;
  report.retained = images.combined.retained;
  report.steering = settings.steering;
  const auto& values = images.combined.values;
  const auto peak = std::max_element(values.begin(), values.end()) - values.begin();
  report.max_location = images.combined.grid.node(static_cast<std::size_t>(peak));
  report.max_value = values[static_cast<std::size_t>(peak)];

  t0 = Clock::now();
  std::vector<ParametricCurve> truths;
  for (const auto& inc : s.inclusions) truths.push_back(inc.curve);
  report.metrics = stage("metrics", [&] { return peak_metrics(images.combined, truths, settings.level); });
  report.timings["metrics"] = seconds_since(t0);

  t0 = Clock::now();
  stage("export", [&] {
    write_map_csv(images.combined, out_dir / "map.csv");
    write_map_pgm(images.combined, out_dir / "map.pgm", s.pgm_bits);
    return 0;
  });
  report.timings["export"] = seconds_since(t0);
  report.paths["map_csv"] = (out_dir / "map.csv").string();
  report.paths["map_pgm"] = (out_dir / "map.pgm").string();
  report.paths["map_pgm_scale"] = (out_dir / "map.pgm.txt").string();
  report.paths["report"] = (out_dir / "report.json").string();

  std::ofstream out(out_dir / "report.json");
  out << report_to_json(report);
  if (!out) throw std::runtime_error("export: failed to write report.json");
  return report;
}

}  // namespace msrimg
