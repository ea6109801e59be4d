#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "msrimg/forward.hpp"
#include "msrimg/imaging.hpp"

namespace msrimg {

/// Declarative experiment: targets, background, probing, imaging and noise.
///
/// JSON layout (all quantities dimensionless, lengths in the coordinate unit):
///
///   {
///     "name": "table1-gamma1",
///     "curves": [ {"kind": "sigma1", "label": "...", "thickness": 0.015,
///                  "z_range": [-0.5, 0.5]},
///                 {"kind": "polyline", "vertices": [[x1, x2], ...], ...},
///                 {"kind": "points", "points": [[x1, x2], ...], "weights": [...]} ],
///     "medium": {"eps_plus": 5, "mu_plus": 1, "eps_minus": 4, "mu_minus": 1,
///                "inclusions": [ {"eps_T": 5, "mu_T": 1} ]},
///     "directions": {"N": 32, "alpha": 0.785..., "beta": 2.356...},
///     "frequencies": {"F": 30, "omega_min": 15.7..., "omega_max": 31.4...},
///     "imaging": {"domain": {"x_min": -1, "x_max": 1, "y_min": -3, "y_max": -1},
///                 "grid_step": 0.02, "svd_threshold": 0.01,
///                 "steering": null or [a, b1, b2], "level": 0.7},
///     "noise": {"snr_db": 20 or null, "seed": 42},
///     "output": {"forward_model": "fine", "quad_per_wavelength": 20,
///                "csv": false, "pgm_bits": 8}
///   }
///
/// "medium.inclusions" pairs with "curves" by position.
struct Scenario {
  std::string name;
  std::vector<Inclusion> inclusions;
  HalfSpaceMedium medium;
  std::size_t direction_count = 32;
  double alpha = 0.25 * std::numbers::pi;
  double beta = 0.75 * std::numbers::pi;
  std::size_t frequency_count = 1;
  double omega_min = 1.0;
  double omega_max = 1.0;
  Rect search_domain;
  double grid_step = 0.02;
  double svd_threshold = kDefaultSvdThreshold;
  std::optional<SteeringConfig> steering;
  double level = 0.7;
  std::optional<double> snr_db;
  std::uint64_t seed = 42;
  ForwardModel forward_model = ForwardModel::AsymptoticFine;
  double quad_per_wavelength = 20.0;
  bool export_csv = false;
  int pgm_bits = 8;
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string path;  // JSON-style field path, e.g. "curves[0]"
  std::string message;
};

/// Checks every invariant; never throws. Empty means fully valid.
std::vector<Diagnostic> validate(const Scenario& s);
bool has_errors(const std::vector<Diagnostic>& diagnostics);
std::string format_diagnostic(const Diagnostic& d);

/// F frequencies linear in omega, endpoints included; F = 1 gives the midpoint.
std::vector<double> frequency_list(const Scenario& s);

/// Steering from the scenario, or the default for its contrast class.
SteeringConfig resolve_steering(const Scenario& s);
/// Contrast class over all inclusions (union of contrast types).
ContrastKind scenario_contrast(const Scenario& s);

std::string to_json(const Scenario& s);
/// Throws ParseError naming the offending field.
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);

/// 64-bit FNV-1a of the canonical JSON, as 16 hex digits.
std::string scenario_hash(const Scenario& s);

std::vector<std::string> preset_names();
/// Throws std::out_of_range listing the available presets.
Scenario preset(const std::string& name);
/// The N_plus column of the source tables, where one exists.
std::optional<std::size_t> reported_n_plus(const std::string& preset_name);

}  // namespace msrimg
