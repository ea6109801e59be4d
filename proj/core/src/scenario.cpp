#include "msrimg/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "msrimg/errors.hpp"

namespace msrimg {
namespace {

using json = nlohmann::ordered_json;
constexpr double kPi = std::numbers::pi;

// ---- JSON helpers -------------------------------------------------------

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(path + "." + key + ": missing");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw ParseError(path + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
  if (!obj.contains(key)) return fallback;
  return number(obj, key, path);
}

std::uint64_t unsigned_field(const json& obj, const std::string& key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_unsigned()) throw ParseError(path + "." + key + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

Vec2 point_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError(path + ": expected [x1, x2]");
  return Vec2(v[0].get<double>(), v[1].get<double>());
}

json point_json(const Vec2& p) { return json::array({p.x(), p.y()}); }

// ---- curves -------------------------------------------------------------

json curve_json(const ParametricCurve& c) {
  json j;
  j["kind"] = to_string(c.kind());
  j["label"] = c.label();
  j["thickness"] = c.thickness();
  switch (c.kind()) {
    case CurveKind::Sigma1:
    case CurveKind::Sigma2:
      j["z_range"] = json::array({c.z_min(), c.z_max()});
      break;
    case CurveKind::Polyline: {
      json verts = json::array();
      for (const auto& v : c.vertices()) verts.push_back(point_json(v));
      j["vertices"] = verts;
      break;
    }
    case CurveKind::Points: {
      json pts = json::array();
      for (const auto& v : c.vertices()) pts.push_back(point_json(v));
      j["points"] = pts;
      j["weights"] = c.weights();
      break;
    }
  }
  return j;
}

ParametricCurve curve_from_json(const json& j, const std::string& path) {
  const json& kind_field = field(j, "kind", path);
  if (!kind_field.is_string()) throw ParseError(path + ".kind: expected a string");
  CurveKind kind;
  try {
    kind = curve_kind_from_string(kind_field.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ".kind: " + e.what());
  }
  const double thickness = number_or(j, "thickness", path, 0.015);
  std::string label = j.contains("label") && j["label"].is_string() ? j["label"].get<std::string>() : to_string(kind);
  try {
    switch (kind) {
      case CurveKind::Sigma1:
      case CurveKind::Sigma2: {
        Vec2 range(-0.5, 0.5);
        if (j.contains("z_range")) range = point_of(j["z_range"], path + ".z_range");
        return kind == CurveKind::Sigma1 ? ParametricCurve::sigma1(range.x(), range.y(), thickness, label)
                                         : ParametricCurve::sigma2(range.x(), range.y(), thickness, label);
      }
      case CurveKind::Polyline: {
        const json& verts = field(j, "vertices", path);
        if (!verts.is_array()) throw ParseError(path + ".vertices: expected an array");
        std::vector<Vec2> pts;
        for (std::size_t i = 0; i < verts.size(); ++i)
          pts.push_back(point_of(verts[i], path + ".vertices[" + std::to_string(i) + "]"));
        return ParametricCurve::polyline(std::move(pts), thickness, label);
      }
      case CurveKind::Points: {
        const json& list = field(j, "points", path);
        if (!list.is_array()) throw ParseError(path + ".points: expected an array");
        std::vector<Vec2> pts;
        for (std::size_t i = 0; i < list.size(); ++i)
          pts.push_back(point_of(list[i], path + ".points[" + std::to_string(i) + "]"));
        std::vector<double> weights;
        if (j.contains("weights")) {
          const json& w = j["weights"];
          if (!w.is_array()) throw ParseError(path + ".weights: expected an array");
          for (const auto& x : w) {
            if (!x.is_number()) throw ParseError(path + ".weights: expected numbers");
            weights.push_back(x.get<double>());
          }
        }
        return ParametricCurve::points(std::move(pts), std::move(weights), thickness, label);
      }
    }
  } catch (const DomainError& e) {
    throw ParseError(path + ": " + e.what());
  }
  throw ParseError(path + ": unsupported curve");
}

// ---- presets ------------------------------------------------------------

struct TableRow {
  std::size_t n;
  std::size_t n_plus;
  std::size_t f;
  double lambda_first;  // omega_1 = 2 pi / lambda_first
  double lambda_last;
};

enum class Target { Gamma1, Gamma2, GammaM };

struct PresetRecipe {
  int table;         // 1 permittivity, 2 permeability, 3 both
  bool upper_denser; // eps_+ > eps_- (and/or mu_+ > mu_-)
  Target target;
  double strong;     // material value of the first inclusion
  double weak;       // material value of the second inclusion (gammaM)
};

TableRow table_row(int table, Target target) {
  static const TableRow rows[3][3] = {
      {{32, 24, 30, 0.4, 0.2}, {40, 28, 36, 0.3, 0.1}, {48, 32, 40, 0.2, 0.1}},
      {{36, 28, 32, 0.4, 0.2}, {42, 36, 36, 0.3, 0.2}, {50, 40, 42, 0.2, 0.1}},
      {{40, 32, 36, 0.4, 0.2}, {48, 40, 40, 0.3, 0.2}, {60, 50, 48, 0.2, 0.1}},
  };
  return rows[table - 1][static_cast<int>(target)];
}

const std::map<std::string, PresetRecipe>& recipes() {
  static const std::map<std::string, PresetRecipe> catalog = [] {
    std::map<std::string, PresetRecipe> out;
    const std::pair<const char*, Target> targets[] = {
        {"gamma1", Target::Gamma1}, {"gamma2", Target::Gamma2}, {"gammaM", Target::GammaM}};
    for (int table = 1; table <= 3; ++table) {
      for (bool denser : {true, false}) {
        const std::string suffix = denser ? "" : "-air";
        for (const auto& [tag, target] : targets) {
          const std::string base = "table" + std::to_string(table) + "-" + tag;
          out[base + suffix] = {table, denser, target, 5.0, 5.0};
          if (target == Target::GammaM) out[base + "-contrast-10-5" + suffix] = {table, denser, target, 10.0, 5.0};
        }
      }
    }
    return out;
  }();
  return catalog;
}

Scenario build_preset(const std::string& name, const PresetRecipe& r) {
  Scenario s;
  s.name = name;
  const double plus = r.upper_denser ? 5.0 : 1.0;
  const double minus = r.upper_denser ? 4.0 : 3.0;
  switch (r.table) {
    case 1:
      s.medium = {plus, 1.0, minus, 1.0};
      break;
    case 2:
      s.medium = {1.0, plus, 1.0, minus};
      break;
    default:
      s.medium = {plus, plus, minus, minus};
      break;
  }
  auto material = [&](double value) {
    switch (r.table) {
      case 1:
        return InclusionMaterial{value, 1.0};
      case 2:
        return InclusionMaterial{1.0, value};
      default:
        return InclusionMaterial{value, value};
    }
  };
  if (r.target == Target::Gamma1 || r.target == Target::GammaM)
    s.inclusions.push_back({ParametricCurve::sigma1(-0.5, 0.5, 0.015, "sigma1"), material(r.strong)});
  if (r.target == Target::Gamma2)
    s.inclusions.push_back({ParametricCurve::sigma2(-0.5, 0.5, 0.015, "sigma2"), material(r.strong)});
  if (r.target == Target::GammaM)
    s.inclusions.push_back({ParametricCurve::sigma2(-0.5, 0.5, 0.015, "sigma2"), material(r.weak)});

  const TableRow row = table_row(r.table, r.target);
  s.direction_count = row.n;
  s.alpha = kPi / 4.0;
  s.beta = 3.0 * kPi / 4.0;
  s.frequency_count = row.f;
  s.omega_min = 2.0 * kPi / row.lambda_first;
  s.omega_max = 2.0 * kPi / row.lambda_last;
  s.search_domain = {-1.0, 1.0, -3.0, -1.0};
  s.grid_step = 0.02;
  s.svd_threshold = 0.01;
  s.level = 0.7;
  s.snr_db = 20.0;
  s.seed = 42;
  s.forward_model = ForwardModel::AsymptoticFine;
  s.quad_per_wavelength = 20.0;
  return s;
}

std::string hex64(std::uint64_t x) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

}  // namespace

// ---- validation ---------------------------------------------------------

std::vector<Diagnostic> validate(const Scenario& s) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string path, std::string msg) { out.push_back({Severity::Error, std::move(path), std::move(msg)}); };
  auto warn = [&](std::string path, std::string msg) { out.push_back({Severity::Warning, std::move(path), std::move(msg)}); };

  if (!s.medium.valid()) error("medium", "permittivities and permeabilities must be positive and finite");
  if (s.inclusions.empty()) error("curves", "at least one inclusion is required");

  const bool freq_ok = std::isfinite(s.omega_min) && std::isfinite(s.omega_max) && s.omega_min > 0.0 &&
                       s.omega_max >= s.omega_min;
  if (s.frequency_count < 1) error("frequencies.F", "need at least one frequency");
  if (!freq_ok) error("frequencies", "require 0 < omega_min <= omega_max");
  if (s.frequency_count > 1 && s.omega_max == s.omega_min)
    error("frequencies", "several frequencies need omega_min < omega_max");

  const bool domain_ok = s.search_domain.x_max >= s.search_domain.x_min && s.search_domain.y_max >= s.search_domain.y_min;
  if (!domain_ok) error("imaging.domain", "empty search domain");
  if (!(s.search_domain.y_max < 0.0)) error("imaging.domain", "search domain must lie in the lower half-plane (y_max < 0)");
  if (!(s.grid_step > 0.0)) error("imaging.grid_step", "grid step must be positive");
  if (!(s.svd_threshold > 0.0 && s.svd_threshold < 1.0)) error("imaging.svd_threshold", "threshold must lie in (0, 1)");
  if (s.steering && !s.steering->valid()) error("imaging.steering", "steering vector must not be zero");
  if (!(s.level > 0.0 && s.level < 1.0)) error("imaging.level", "superlevel fraction must lie in (0, 1)");
  if (s.snr_db && !std::isfinite(*s.snr_db)) error("noise.snr_db", "SNR must be finite (use null for noiseless data)");
  if (!(s.quad_per_wavelength >= 2.0)) error("output.quad_per_wavelength", "need at least two quadrature nodes per wavelength");
  if (s.pgm_bits != 8 && s.pgm_bits != 16) error("output.pgm_bits", "PGM depth must be 8 or 16");

  const bool dirs_ok = s.direction_count >= 2 && s.alpha > 0.0 && s.alpha < s.beta && s.beta < kPi;
  if (s.direction_count < 2) error("directions.N", "need at least two directions");
  if (!(s.alpha > 0.0 && s.alpha < s.beta && s.beta < kPi)) error("directions", "require 0 < alpha < beta < pi");
  if (dirs_ok && freq_ok && s.medium.valid()) {
    const DirectionSet dirs = build_directions(s.direction_count, s.alpha, s.beta, frequency_context(s.medium, s.omega_min));
    if (dirs.n_plus == 0) error("directions", "no incidence yields a propagating refracted wave");
  }

  const double lambda_min = freq_ok && s.medium.valid() ? frequency_context(s.medium, s.omega_max).lambda_minus : 0.0;
  bool any_contrast = false;
  for (std::size_t i = 0; i < s.inclusions.size(); ++i) {
    const std::string path = "curves[" + std::to_string(i) + "]";
    const Inclusion& inc = s.inclusions[i];
    const ParametricCurve& c = inc.curve;
    const std::string name = path + " '" + c.label() + "'";
    if (!inc.material.valid()) error("medium.inclusions[" + std::to_string(i) + "]", "eps_T and mu_T must be positive and finite");
    if (!(c.thickness() > 0.0)) error(path + ".thickness", name + ": thickness must be positive");
    const double top = c.max_depth_coordinate();
    if (!(top < 0.0)) {
      error(path, name + " reaches x2 = " + std::to_string(top) + "; curves must lie strictly below the interface");
    }
    if (domain_ok) {
      const auto [lo, hi] = c.bounding_box();
      const Rect& d = s.search_domain;
      if (lo.x() < d.x_min || hi.x() > d.x_max || lo.y() < d.y_min || hi.y() > d.y_max)
        warn(path, name + " is not contained in the search domain");
    }
    if (lambda_min > 0.0 && c.thickness() > lambda_min / 10.0) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: thickness %g exceeds lambda_-/10 = %g at omega_max; the thin-inclusion model degrades",
                    name.c_str(), c.thickness(), lambda_min / 10.0);
      warn(path + ".thickness", buf);
    }
    if (s.medium.valid() && classify_contrast(s.medium, inc.material) != ContrastKind::None) any_contrast = true;
  }
  if (!s.inclusions.empty() && !any_contrast) warn("medium.inclusions", "no inclusion contrasts with the lower medium; data will be zero");
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) return true;
  return false;
}

std::string format_diagnostic(const Diagnostic& d) {
  return std::string(d.severity == Severity::Error ? "error" : "warning") + ": " + d.path + ": " + d.message;
}

std::vector<double> frequency_list(const Scenario& s) {
  if (s.frequency_count < 1) throw DomainError("frequency_list: need F >= 1");
  if (s.frequency_count == 1) return {0.5 * (s.omega_min + s.omega_max)};
  std::vector<double> out(s.frequency_count);
  const double span = s.omega_max - s.omega_min;
  for (std::size_t f = 0; f < s.frequency_count; ++f)
    out[f] = s.omega_min + span * static_cast<double>(f) / static_cast<double>(s.frequency_count - 1);
  out.back() = s.omega_max;
  return out;
}

ContrastKind scenario_contrast(const Scenario& s) {
  bool eps = false;
  bool mu_less = false;
  bool mu_greater = false;
  for (const auto& inc : s.inclusions) {
    eps = eps || inc.material.eps_t != s.medium.eps_minus;
    mu_less = mu_less || inc.material.mu_t < s.medium.mu_minus;
    mu_greater = mu_greater || inc.material.mu_t > s.medium.mu_minus;
  }
  const bool mu = mu_less || mu_greater;
  if (eps && mu) return ContrastKind::Both;
  if (eps) return ContrastKind::Permittivity;
  if (mu_greater) return ContrastKind::PermeabilityGreater;
  if (mu_less) return ContrastKind::PermeabilityLess;
  return ContrastKind::None;
}

SteeringConfig resolve_steering(const Scenario& s) {
  if (s.steering) return *s.steering;
  bool mu_greater = true;
  for (const auto& inc : s.inclusions) {
    if (inc.material.mu_t != s.medium.mu_minus) {
      mu_greater = inc.material.mu_t > s.medium.mu_minus;
      break;
    }
  }
  return default_steering(scenario_contrast(s), mu_greater);
}

// ---- JSON ---------------------------------------------------------------

std::string to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  json curves = json::array();
  json materials = json::array();
  for (const auto& inc : s.inclusions) {
    curves.push_back(curve_json(inc.curve));
    materials.push_back(json{{"eps_T", inc.material.eps_t}, {"mu_T", inc.material.mu_t}});
  }
  j["curves"] = curves;
  j["medium"] = json{{"eps_plus", s.medium.eps_plus},
                     {"mu_plus", s.medium.mu_plus},
                     {"eps_minus", s.medium.eps_minus},
                     {"mu_minus", s.medium.mu_minus},
                     {"inclusions", materials}};
  j["directions"] = json{{"N", s.direction_count}, {"alpha", s.alpha}, {"beta", s.beta}};
  j["frequencies"] = json{{"F", s.frequency_count}, {"omega_min", s.omega_min}, {"omega_max", s.omega_max}};
  json imaging;
  imaging["domain"] = json{{"x_min", s.search_domain.x_min},
                           {"x_max", s.search_domain.x_max},
                           {"y_min", s.search_domain.y_min},
                           {"y_max", s.search_domain.y_max}};
  imaging["grid_step"] = s.grid_step;
  imaging["svd_threshold"] = s.svd_threshold;
  imaging["steering"] = s.steering ? json::array({s.steering->a, s.steering->b1, s.steering->b2}) : json(nullptr);
  imaging["level"] = s.level;
  j["imaging"] = imaging;
  j["noise"] = json{{"snr_db", s.snr_db ? json(*s.snr_db) : json(nullptr)}, {"seed", s.seed}};
  j["output"] = json{{"forward_model", to_string(s.forward_model)},
                     {"quad_per_wavelength", s.quad_per_wavelength},
                     {"csv", s.export_csv},
                     {"pgm_bits", s.pgm_bits}};
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what(), static_cast<long long>(e.byte));
  }
  if (!j.is_object()) throw ParseError("scenario: top level must be an object");
  Scenario s;
  if (j.contains("name")) {
    if (!j["name"].is_string()) throw ParseError("name: expected a string");
    s.name = j["name"].get<std::string>();
  }

  const json& medium = field(j, "medium", "scenario");
  s.medium = {number(medium, "eps_plus", "medium"), number(medium, "mu_plus", "medium"),
              number(medium, "eps_minus", "medium"), number(medium, "mu_minus", "medium")};

  const json& curves = field(j, "curves", "scenario");
  if (!curves.is_array()) throw ParseError("curves: expected an array");
  const json& materials = field(medium, "inclusions", "medium");
  if (!materials.is_array()) throw ParseError("medium.inclusions: expected an array");
  if (materials.size() != curves.size())
    throw ParseError("medium.inclusions: " + std::to_string(materials.size()) + " materials for " +
                     std::to_string(curves.size()) + " curves");
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const std::string cpath = "curves[" + std::to_string(i) + "]";
    const std::string mpath = "medium.inclusions[" + std::to_string(i) + "]";
    s.inclusions.push_back({curve_from_json(curves[i], cpath),
                            {number(materials[i], "eps_T", mpath), number(materials[i], "mu_T", mpath)}});
  }

  const json& dirs = field(j, "directions", "scenario");
  s.direction_count = unsigned_field(dirs, "N", "directions");
  s.alpha = number_or(dirs, "alpha", "directions", kPi / 4.0);
  s.beta = number_or(dirs, "beta", "directions", 3.0 * kPi / 4.0);

  const json& freqs = field(j, "frequencies", "scenario");
  s.frequency_count = unsigned_field(freqs, "F", "frequencies");
  s.omega_min = number(freqs, "omega_min", "frequencies");
  s.omega_max = number(freqs, "omega_max", "frequencies");

  const json& imaging = field(j, "imaging", "scenario");
  const json& domain = field(imaging, "domain", "imaging");
  s.search_domain = {number(domain, "x_min", "imaging.domain"), number(domain, "x_max", "imaging.domain"),
                     number(domain, "y_min", "imaging.domain"), number(domain, "y_max", "imaging.domain")};
  s.grid_step = number_or(imaging, "grid_step", "imaging", 0.02);
  s.svd_threshold = number_or(imaging, "svd_threshold", "imaging", kDefaultSvdThreshold);
  s.level = number_or(imaging, "level", "imaging", 0.7);
  if (imaging.contains("steering") && !imaging["steering"].is_null()) {
    const json& c = imaging["steering"];
    if (!c.is_array() || c.size() != 3) throw ParseError("imaging.steering: expected [a, b1, b2] or null");
    for (const auto& x : c)
      if (!x.is_number()) throw ParseError("imaging.steering: expected numbers");
    s.steering = SteeringConfig{c[0].get<double>(), c[1].get<double>(), c[2].get<double>()};
  }

  const json& noise = field(j, "noise", "scenario");
  if (noise.contains("snr_db") && !noise["snr_db"].is_null()) s.snr_db = number(noise, "snr_db", "noise");
  if (noise.contains("seed")) s.seed = unsigned_field(noise, "seed", "noise");

  if (j.contains("output")) {
    const json& output = j["output"];
    if (!output.is_object()) throw ParseError("output: expected an object");
    if (output.contains("forward_model")) {
      if (!output["forward_model"].is_string()) throw ParseError("output.forward_model: expected a string");
      try {
        s.forward_model = forward_model_from_string(output["forward_model"].get<std::string>());
      } catch (const ParseError& e) {
        throw ParseError(std::string("output.forward_model: ") + e.what());
      }
    }
    s.quad_per_wavelength = number_or(output, "quad_per_wavelength", "output", 20.0);
    if (output.contains("csv")) {
      if (!output["csv"].is_boolean()) throw ParseError("output.csv: expected true or false");
      s.export_csv = output["csv"].get<bool>();
    }
    if (output.contains("pgm_bits")) s.pgm_bits = static_cast<int>(unsigned_field(output, "pgm_bits", "output"));
  }
  for (const auto& [key, value] : j.items()) {
    static const char* known[] = {"name", "curves", "medium", "directions", "frequencies", "imaging", "noise", "output"};
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ParseError("scenario: unknown top-level key '" + key + "'");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open scenario file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return scenario_from_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.offset());
  }
}

std::string scenario_hash(const Scenario& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(s)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return hex64(h);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, recipe] : recipes()) out.push_back(name);
  return out;
}

Scenario preset(const std::string& name) {
  auto it = recipes().find(name);
  if (it == recipes().end()) {
    std::string msg = "unknown preset '" + name + "'; available:";
    for (const auto& n : preset_names()) msg += " " + n;
    throw std::out_of_range(msg);
  }
  return build_preset(name, it->second);
}

std::optional<std::size_t> reported_n_plus(const std::string& preset_name) {
  auto it = recipes().find(preset_name);
  if (it == recipes().end()) return std::nullopt;
  return table_row(it->second.table, it->second.target).n_plus;
}

}  // namespace msrimg
