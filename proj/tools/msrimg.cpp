// msrimg: synthesize MSR datasets, image them, score the maps.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or validation failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "msrimg/errors.hpp"
#include "msrimg/image_io.hpp"
#include "msrimg/pipeline.hpp"

namespace fs = std::filesystem;
using namespace msrimg;

namespace {

// Raised for bad user input; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::optional<std::uint64_t> seed;
  std::optional<double> snr_db;
  std::optional<double> threshold;
  std::optional<double> grid_step;
  std::string steering;
  std::string forward;
  std::optional<double> level;
  std::string scenario_path;
  std::string preset_name;
  std::string out;
  bool csv = false;
  int pgm_bits = 8;
};

SteeringConfig parse_steering(const std::string& text) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      c.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("--steering: '" + text + "' is not a,b1,b2");
    }
  }
  if (c.size() != 3) throw UsageError("--steering expects three comma-separated numbers");
  SteeringConfig cfg{c[0], c[1], c[2]};
  if (!cfg.valid()) throw UsageError("--steering must not be 0,0,0");
  return cfg;
}

Scenario load(const Flags& f) {
  if (f.scenario_path.empty() == f.preset_name.empty())
    throw UsageError("give exactly one of --scenario FILE or --preset NAME");
  if (!f.preset_name.empty()) {
    try {
      return preset(f.preset_name);
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
  }
  try {
    return load_scenario(f.scenario_path);
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
}

// Noise is opt-in: without --snr-db the data are noiseless.
void apply(const Flags& f, Scenario& s) {
  s.snr_db = f.snr_db;
  if (f.snr_db && std::isinf(*f.snr_db) && *f.snr_db > 0) s.snr_db.reset();
  if (f.seed) s.seed = *f.seed;
  if (f.threshold) s.svd_threshold = *f.threshold;
  if (f.grid_step) s.grid_step = *f.grid_step;
  if (f.level) s.level = *f.level;
  if (!f.steering.empty()) s.steering = parse_steering(f.steering);
  if (!f.forward.empty()) {
    try {
      s.forward_model = forward_model_from_string(f.forward);
    } catch (const ParseError& e) {
      throw UsageError(std::string("--forward: ") + e.what());
    }
  }
  if (f.csv) s.export_csv = true;
  s.pgm_bits = f.pgm_bits;
}

void check(const Scenario& s) {
  const auto diags = validate(s);
  for (const auto& d : diags) std::cerr << format_diagnostic(d) << "\n";
  if (has_errors(diags)) throw UsageError("scenario failed validation");
}

std::vector<ParametricCurve> truths_of(const Scenario& s) {
  std::vector<ParametricCurve> out;
  for (const auto& inc : s.inclusions) out.push_back(inc.curve);
  return out;
}

int cmd_presets(const std::string& show) {
  if (!show.empty()) {
    try {
      std::cout << to_json(preset(show));
    } catch (const std::out_of_range& e) {
      throw UsageError(e.what());
    }
    return 0;
  }
  for (const auto& name : preset_names()) std::cout << name << "\n";
  return 0;
}

int cmd_synthesize(const Flags& f) {
  Scenario s = load(f);
  apply(f, s);
  check(s);
  const MSRDataset ds = synthesize(s);
  write_dataset(ds, f.out);
  if (s.export_csv) export_dataset_csv(ds, f.out);
  std::cout << "wrote " << ds.matrices.size() << " matrices of size " << ds.directions.n_plus << "x"
            << ds.directions.n_plus << " (N = " << ds.directions.count << ") to " << f.out << "\n";
  if (auto table = reported_n_plus(s.name); table && *table != ds.directions.n_plus)
    std::cout << "note: table lists N_plus = " << *table << ", Snell filter gives " << ds.directions.n_plus << "\n";
  return 0;
}

int cmd_image(const Flags& f, const std::string& dataset_dir, bool per_frequency) {
  MSRDataset ds;
  try {
    ds = read_dataset(dataset_dir);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  ImagingSettings settings = imaging_settings(ds);
  if (f.threshold) settings.threshold = *f.threshold;
  if (f.grid_step) settings.grid_step = *f.grid_step;
  if (f.level) settings.level = *f.level;
  if (!f.steering.empty()) settings.steering = parse_steering(f.steering);

  const auto t0 = std::chrono::steady_clock::now();
  const ImagingResult result = image_dataset(ds, settings);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path out = f.out;
  fs::create_directories(out);
  RunReport report;
  report.scenario_name = ds.provenance.count("scenario") ? ds.provenance.at("scenario") : "";
  report.scenario_hash = ds.provenance.count("scenario_hash") ? ds.provenance.at("scenario_hash") : "";
  report.reported_n_plus = reported_n_plus(report.scenario_name);
  report.n = ds.directions.count;
  report.n_plus = ds.directions.n_plus;
  report.frequencies = ds.frequencies;
  report.retained = result.combined.retained;
  report.steering = settings.steering;
  const auto& v = result.combined.values;
  const auto peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  report.max_location = result.combined.grid.node(peak);
  report.max_value = v[peak];
  report.timings["image"] = elapsed;

  write_map_csv(result.combined, out / "map.csv");
  write_map_pgm(result.combined, out / "map.pgm", f.pgm_bits);
  report.paths["map_csv"] = (out / "map.csv").string();
  report.paths["map_pgm"] = (out / "map.pgm").string();
  report.paths["map_pgm_scale"] = (out / "map.pgm.txt").string();
  if (per_frequency) {
    for (std::size_t i = 0; i < result.per_frequency.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof name, "map_%03zu.csv", i);
      write_map_csv(result.per_frequency[i], out / name);
    }
    report.paths["per_frequency"] = out.string();
  }
  report.paths["report"] = (out / "report.json").string();
  std::ofstream(out / "report.json") << report_to_json(report);

  std::cout << "M_f:";
  for (auto m : report.retained) std::cout << ' ' << m;
  std::cout << "\nmax W = " << report.max_value << " at (" << report.max_location.x() << ", "
            << report.max_location.y() << ")\n";
  return 0;
}

int cmd_metrics(const Flags& f, const std::string& map_path, double tube) {
  Scenario s = load(f);
  ImageMap map;
  try {
    map = read_map_csv(map_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  // the CSV does not carry lambda_-: take it from the scenario at omega_max
  map.lambda_minus = frequency_context(s.medium, s.omega_max).lambda_minus;
  const PeakMetrics m = peak_metrics(map, truths_of(s), f.level.value_or(s.level), tube);
  std::cout << metrics_to_json(m);
  return 0;
}

int cmd_reproduce(Flags f, const std::string& name) {
  if (!name.empty()) {
    if (!f.preset_name.empty() || !f.scenario_path.empty())
      throw UsageError("give the preset either positionally or via --preset/--scenario");
    f.preset_name = name;
  }
  Scenario s = load(f);
  apply(f, s);
  check(s);
  const RunReport r = reproduce(s, f.out);
  const PeakMetrics& m = *r.metrics;
  std::cout << s.name << ": N = " << r.n << ", N_plus = " << r.n_plus;
  if (r.reported_n_plus) std::cout << " (table " << *r.reported_n_plus << ")";
  std::cout << ", F = " << r.frequencies.size() << "\n";
  std::cout << "false-alarm distance " << m.false_alarm_distance << ", coverage distance " << m.coverage_distance
            << ", peak " << m.peak_value << ", background mean " << m.background_mean << "\n";
  std::cout << "report: " << r.paths.at("report") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thin-inclusion MSR synthesis and multi-frequency subspace imaging"};
  app.require_subcommand(1);
  Flags f;

  auto add_source = [&](CLI::App* sub) {
    sub->add_option("--scenario", f.scenario_path, "Scenario JSON file");
    sub->add_option("--preset", f.preset_name, "Preset name (see `msrimg presets`)");
  };
  auto add_synthesis = [&](CLI::App* sub) {
    sub->add_option("--seed", f.seed, "Noise seed");
    sub->add_option("--snr-db", f.snr_db, "Add white Gaussian noise at this SNR (omit for noiseless data)");
    sub->add_option("--forward", f.forward, "Forward model: fine, coarse or foldylax");
    sub->add_flag("--csv", f.csv, "Also export K_fff.csv files");
  };
  auto add_imaging = [&](CLI::App* sub) {
    sub->add_option("--threshold", f.threshold, "Relative singular-value threshold");
    sub->add_option("--grid-step", f.grid_step, "Search grid step");
    sub->add_option("--steering", f.steering, "Steering weights a,b1,b2");
    sub->add_option("--level", f.level, "Superlevel fraction for metrics");
    sub->add_option("--pgm-bits", f.pgm_bits, "PGM depth (8 or 16)")->check(CLI::IsMember({8, 16}));
  };

  std::string show;
  auto* presets = app.add_subcommand("presets", "List preset scenarios");
  presets->add_option("--show", show, "Print one preset as JSON");

  auto* synth = app.add_subcommand("synthesize", "Compute response matrices for a scenario");
  add_source(synth);
  add_synthesis(synth);
  synth->add_option("--out", f.out, "Dataset directory")->required();

  std::string dataset_dir;
  bool per_frequency = false;
  auto* image = app.add_subcommand("image", "Image a dataset");
  image->add_option("--dataset", dataset_dir, "Dataset directory")->required();
  image->add_option("--out", f.out, "Output directory")->required();
  image->add_flag("--per-frequency", per_frequency, "Also write single-frequency maps");
  add_imaging(image);

  std::string map_path;
  double tube = 0.0;
  auto* metrics = app.add_subcommand("metrics", "Localization metrics of a map against a scenario's curves");
  metrics->add_option("--map", map_path, "Map CSV")->required();
  add_source(metrics);
  metrics->add_option("--level", f.level, "Superlevel fraction");
  metrics->add_option("--tube", tube, "Background tube width (default lambda_- at omega_max)");

  std::string name;
  auto* repro = app.add_subcommand("reproduce", "Synthesize, image and score a preset or scenario");
  repro->add_option("name", name, "Preset name");
  add_source(repro);
  add_synthesis(repro);
  add_imaging(repro);
  repro->add_option("--out", f.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*presets) return cmd_presets(show);
    if (*synth) return cmd_synthesize(f);
    if (*image) return cmd_image(f, dataset_dir, per_frequency);
    if (*metrics) return cmd_metrics(f, map_path, tube);
    if (*repro) return cmd_reproduce(f, name);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
