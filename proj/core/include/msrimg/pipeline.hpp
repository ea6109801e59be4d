#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "msrimg/dataset.hpp"
#include "msrimg/metrics.hpp"
#include "msrimg/scenario.hpp"

namespace msrimg {

/// Response matrices for every frequency of a scenario. Noise, when
/// s.snr_db is set, uses the scenario seed and the frequency index as stream.
/// Provenance records the scenario name, hash and imaging settings.
MSRDataset synthesize(const Scenario& s);

/// One response matrix at angular frequency omega (noiseless).
Eigen::MatrixXcd synthesize_matrix(const Scenario& s, double omega);

/// Imaging settings recovered from dataset provenance, with defaults.
struct ImagingSettings {
  Rect domain;
  double grid_step = 0.02;
  double threshold = kDefaultSvdThreshold;
  SteeringConfig steering;
  double level = 0.7;
};

ImagingSettings imaging_settings(const Scenario& s);
/// Throws ParseError when provenance entries are malformed.
ImagingSettings imaging_settings(const MSRDataset& dataset);

struct ImagingResult {
  std::vector<ImageMap> per_frequency;
  ImageMap combined;  // W_F
};

/// Throws ConfigurationError("no signal subspace ...") when every frequency
/// has an empty signal subspace.
ImagingResult image_dataset(const MSRDataset& dataset, const ImagingSettings& settings);

struct RunReport {
  std::string scenario_name;
  std::string scenario_hash;
  std::size_t n = 0;
  std::size_t n_plus = 0;
  std::optional<std::size_t> reported_n_plus;
  std::vector<double> frequencies;
  std::vector<std::size_t> retained;  // M_f
  SteeringConfig steering;
  Vec2 max_location = Vec2::Zero();
  double max_value = 0.0;
  std::optional<PeakMetrics> metrics;
  std::map<std::string, double> timings;  // seconds per stage
  std::map<std::string, std::string> paths;
};

std::string report_to_json(const RunReport& report);
std::string metrics_to_json(const PeakMetrics& metrics);

/// Synthesize, image, score and write everything under out_dir:
/// dataset/, map.csv, map.pgm (+ .txt), report.json. Stage failures are
/// rethrown prefixed with the stage name.
RunReport reproduce(const Scenario& s, const std::filesystem::path& out_dir);

}  // namespace msrimg
