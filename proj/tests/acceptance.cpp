// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// An optional argument "AC-n" runs a single criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "msrimg/directions.hpp"
#include "msrimg/foldy_lax.hpp"
#include "msrimg/forward.hpp"
#include "msrimg/imaging.hpp"
#include "msrimg/metrics.hpp"
#include "msrimg/noise.hpp"
#include "msrimg/pipeline.hpp"
#include "oracle.hpp"

using namespace msrimg;
namespace fs = std::filesystem;
constexpr double kPi = std::numbers::pi;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<ParametricCurve> truths_of(const Scenario& s) {
  std::vector<ParametricCurve> out;
  for (const auto& inc : s.inclusions) out.push_back(inc.curve);
  return out;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// ---- AC-1 -----------------------------------------------------------------

Outcome ac1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(2024);
  auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); };
  double worst = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const HalfSpaceMedium m{u(1, 6), u(1, 6), u(1, 6), u(1, 6)};
    const InclusionMaterial mat{u(0.5, 10), u(0.5, 10)};
    std::vector<Vec2> v{Vec2(u(-0.8, 0.8), u(-2.8, -1.2))};
    const int pieces = 2 + trial % 3;
    for (int i = 0; i < pieces; ++i) {
      const double a = u(0, 2 * kPi);
      Vec2 next = v.back() + u(0.15, 0.5) * Vec2(std::cos(a), std::sin(a));
      next.y() = std::min(next.y(), -0.6);
      v.push_back(next);
    }
    const Inclusion inc{ParametricCurve::polyline(v, u(0.005, 0.02)), mat};
    const double omega = u(5, 40);
    const auto ctx = frequency_context(m, omega);
    const auto dirs = build_directions(16, kPi / 4, 3 * kPi / 4, ctx);
    const auto thetas = oracle::propagating(oracle::incidences(16, kPi / 4, 3 * kPi / 4), m);
    if (thetas.empty()) return {false, "random medium left no propagating direction"};
    const FactoredMSR f = assemble_msr_factored(inc, m, ctx, dirs);
    const Eigen::MatrixXcd k = f.product();
    const Eigen::MatrixXcd ref = oracle::direct_sum(m, mat.eps_t, mat.mu_t, inc.curve.thickness(), omega, thetas,
                                                    oracle::nodes_of(split_into_segments(inc.curve, ctx.lambda_minus)));
    worst = std::max(worst, (k - ref).norm() / ref.norm());
  }
  const double t = seconds(t0);
  return {worst <= 1e-12 && t < 5, fmt("max relative Frobenius error %.2e over 10 random scenarios (limit 1e-12), %.2f s", worst, t)};
}

// ---- AC-2 -----------------------------------------------------------------

Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  const HalfSpaceMedium m{4, 1, 1, 1};
  const auto ctx = frequency_context(m, 2 * kPi / 0.1);
  const auto dirs = build_directions(64, kPi / 4, 3 * kPi / 4, ctx);
  const std::vector<Vec2> pts{Vec2(-0.5, -1.5), Vec2(0.5, -1.5), Vec2(-0.5, -2.5), Vec2(0.5, -2.5)};
  const Inclusion inc{ParametricCurve::points(pts, {0.01, 0.01, 0.01, 0.01}), {5, 1}};
  const Eigen::MatrixXcd k = assemble_msr_factored(inc, m, ctx, dirs).product();
  const Grid g = make_grid({-1, 1, -3, -1}, 0.02);
  const ImageMap map = image_single(k, ctx, m, dirs, {1, 0, 0}, g);

  auto at = [&](long i, long r) { return map.values[static_cast<std::size_t>(r) * g.nx + static_cast<std::size_t>(i)]; };
  bool peaks_ok = true;
  double weakest_peak = 1e9;
  for (const auto& p : pts) {
    // best local maximum among grid nodes within one step of the point
    double best = -1;
    for (std::size_t n = 0; n < g.size(); ++n) {
      if ((g.node(n) - p).norm() > 0.02 + 1e-12) continue;
      const long i = static_cast<long>(n % g.nx), r = static_cast<long>(n / g.nx);
      bool local = true;
      for (long di = -1; di <= 1; ++di)
        for (long dr = -1; dr <= 1; ++dr) {
          const long ii = i + di, rr = r + dr;
          if (ii < 0 || rr < 0 || ii >= static_cast<long>(g.nx) || rr >= static_cast<long>(g.ny)) continue;
          local = local && at(ii, rr) <= at(i, r);
        }
      if (local) best = std::max(best, at(i, r));
    }
    weakest_peak = std::min(weakest_peak, best);
    peaks_ok = peaks_ok && best >= 0.9;
  }
  double far_max = 0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    double d = 1e9;
    for (const auto& p : pts) d = std::min(d, (g.node(n) - p).norm());
    if (d > ctx.lambda_minus) far_max = std::max(far_max, map.values[n]);
  }
  const double t = seconds(t0);
  return {peaks_ok && far_max <= 0.3 && t < 30,
          fmt("weakest local peak %.4f (need >= 0.9), max W_S beyond lambda_- = %.4f (need <= 0.3), M = %zu, N_plus = %zu, %.2f s",
              weakest_peak, far_max, map.retained.front(), dirs.n_plus, t)};
}

// ---- AC-3, AC-4, AC-5, AC-9 ----------------------------------------------

constexpr double kLambdaMin = 0.2;

struct Run {
  PeakMetrics metrics;
  double combined_background = 0;
  std::vector<double> single_backgrounds;
};

Run run_scenario(const Scenario& s) {
  const MSRDataset ds = synthesize(s);
  const ImagingResult img = image_dataset(ds, imaging_settings(s));
  Run r;
  const auto truths = truths_of(s);
  r.metrics = peak_metrics(img.combined, truths, s.level);
  r.combined_background = r.metrics.background_mean;
  for (const auto& map : img.per_frequency) r.single_backgrounds.push_back(background_mean(map, truths, map.lambda_minus));
  return r;
}

Scenario table1_gamma1(std::optional<double> snr, std::uint64_t seed) {
  Scenario s = preset("table1-gamma1");
  s.snr_db = snr;
  s.seed = seed;
  return s;
}

Outcome geometric_check(const Scenario& s, double fa_limit, double cov_limit) {
  const auto t0 = std::chrono::steady_clock::now();
  const Run r = run_scenario(s);
  const double t = seconds(t0);
  const bool ok = r.metrics.false_alarm_distance <= fa_limit && r.metrics.coverage_distance <= cov_limit && t < 300;
  return {ok, fmt("false-alarm %.4f (limit %.2f), coverage %.4f (limit %.2f), |S| = %zu nodes, %.1f s",
                  r.metrics.false_alarm_distance, fa_limit, r.metrics.coverage_distance, cov_limit,
                  r.metrics.superlevel_count, t)};
}

Outcome ac3() { return geometric_check(table1_gamma1(std::nullopt, 42), kLambdaMin / 2, kLambdaMin); }

const std::uint64_t kSeeds[5] = {42, 43, 44, 45, 46};

Outcome ac4() {
  int passed = 0;
  std::string detail;
  for (auto seed : kSeeds) {
    const Run r = run_scenario(table1_gamma1(20.0, seed));
    const bool ok = r.metrics.false_alarm_distance <= kLambdaMin && r.metrics.coverage_distance <= 1.5 * kLambdaMin;
    passed += ok ? 1 : 0;
    detail += fmt(" seed %llu: fa %.3f cov %.3f %s;", static_cast<unsigned long long>(seed),
                  r.metrics.false_alarm_distance, r.metrics.coverage_distance, ok ? "ok" : "miss");
  }
  return {passed >= 4, fmt("%d/5 seeds within fa <= %.2f, cov <= %.2f;", passed, kLambdaMin, 1.5 * kLambdaMin) + detail};
}

Outcome ac5() {
  bool all = true;
  std::string detail;
  for (auto seed : kSeeds) {
    const Run r = run_scenario(table1_gamma1(20.0, seed));
    const double med = median(r.single_backgrounds);
    const bool ok = r.combined_background < med;
    all = all && ok;
    detail += fmt(" seed %llu: W_F %.5f vs median %.5f %s;", static_cast<unsigned long long>(seed),
                  r.combined_background, med, ok ? "ok" : "miss");
  }
  return {all, "background mean of W_F below the single-frequency median on every seed:" + detail};
}

Outcome ac9() {
  Scenario s = table1_gamma1(std::nullopt, 42);
  s.forward_model = ForwardModel::FoldyLax;
  return geometric_check(s, kLambdaMin / 2, kLambdaMin);
}

// ---- AC-6 -----------------------------------------------------------------

// M short straight pieces, one segment each, on a lattice with spacing
// 2.8 lambda and varied orientations.
std::vector<Inclusion> scattered_pieces(std::size_t m, double lambda, const InclusionMaterial& mat) {
  std::vector<Inclusion> out;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = 0.4 + 1.1 * static_cast<double>(i);
    const Vec2 half = 0.2 * lambda * Vec2(std::cos(a), std::sin(a));
    const Vec2 c(-0.8 + 1.4 * static_cast<double>(i % 3), -1.5 - 1.4 * static_cast<double>(i / 3));
    out.push_back({ParametricCurve::polyline({c - half, c + half}, 0.01), mat});
  }
  return out;
}

Outcome ac6() {
  // matched half-spaces keep the refracted aperture wide
  const HalfSpaceMedium m{1, 1, 1, 1};
  const auto ctx = frequency_context(m, 2 * kPi / 0.5);
  const auto dirs = build_directions(128, 0.1, kPi - 0.1, ctx);
  bool ok = true;
  std::string detail;
  const InclusionMaterial cases[3] = {{1.3, 1}, {1, 1.3}, {1.3, 1.3}};
  for (std::size_t mm = 1; mm <= 6; ++mm) {
    const std::size_t expect[3] = {mm, 2 * mm, 3 * mm};
    std::size_t got[3];
    for (int k = 0; k < 3; ++k) {
      const auto target = scattered_pieces(mm, ctx.lambda_minus, cases[k]);
      const FactoredMSR f = assemble_msr_factored(std::span<const Inclusion>(target), m, ctx, dirs);
      if (f.segments != mm) return {false, fmt("target for M = %zu split into %zu segments", mm, f.segments)};
      got[k] = truncate_svd(f.product(), 0.01).retained;
      const bool fine = got[k] == expect[k] || (mm == 6 && got[k] + 1 == expect[k]);
      if (fine && got[k] != expect[k]) detail += fmt(" [M=6 slack used for case %d]", k);
      ok = ok && fine;
    }
    detail += fmt(" M=%zu: %zu/%zu/%zu", mm, got[0], got[1], got[2]);
  }
  return {ok, "M_f for eps/mu/both at threshold 0.01, N_plus = " + std::to_string(dirs.n_plus) + ":" + detail};
}

// ---- AC-7 -----------------------------------------------------------------

Outcome ac7() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 gen(7);
  auto u = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(gen); };
  double snell = 0, unit = 0, matched = 0, tensor = 0;
  int cases = 0;
  while (cases < 10000) {
    const HalfSpaceMedium m{u(0.5, 8), u(0.5, 8), u(0.5, 8), u(0.5, 8)};
    const auto ctx = frequency_context(m, u(0.5, 60));
    const double a = u(0.01, kPi - 0.01);
    const Vec2 theta(std::cos(a), -std::sin(a));
    if (!is_propagating(ctx, theta)) continue;
    ++cases;
    const Vec2 v = transmitted_direction(ctx, theta);
    // k_+ sin(angle to normal) is continuous across the interface
    snell = std::max(snell, std::abs(ctx.k_plus * theta.x() - ctx.k_minus * v.x()) / ctx.k_plus);
    unit = std::max(unit, std::abs(v.norm() - 1));

    const double eps = u(0.5, 8), mu = u(0.5, 8);
    const HalfSpaceMedium same{eps, mu, eps, mu};
    matched = std::max(matched, std::abs(transmission_coefficient(frequency_context(same, ctx.omega), same, theta) - 1.0));

    const double b = u(0, 2 * kPi);
    const Vec2 tau(std::cos(b), std::sin(b)), n(-std::sin(b), std::cos(b));
    const auto pt = polarization_tensor(m, {u(0.5, 8), u(0.5, 8)});
    const Eigen::Matrix2d mat = pt.lambda_tau * tau * tau.transpose() + pt.lambda_n * n * n.transpose();
    const double c = u(0, 2 * kPi);
    const Vec2 w(std::cos(c), -std::sin(c));
    const double ref = v.dot(mat * w);
    tensor = std::max(tensor, std::abs(pt.quadratic_form(v, w, tau, n) - ref) / std::max(1.0, std::abs(ref)));
  }
  const double t = seconds(t0);
  const double worst = std::max({snell, unit, matched, tensor});
  return {worst <= 1e-12 && t < 5,
          fmt("10^4 cases each: Snell %.1e, |v|-1 %.1e, matched T-1 %.1e, tensor %.1e (limit 1e-12), %.2f s", snell, unit,
              matched, tensor, t)};
}

// ---- AC-8 -----------------------------------------------------------------

Outcome ac8() {
  Scenario s = preset("table1-gamma1");
  s.direction_count = 24;
  const Eigen::MatrixXcd k = synthesize_matrix(s, s.omega_min);
  if (k.rows() != 24) return {false, fmt("expected a 24x24 matrix, got %ld", static_cast<long>(k.rows()))};
  double sum = 0, worst = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Eigen::MatrixXcd noisy = add_noise(k, 20, seed);
    const double snr = 10 * std::log10(k.squaredNorm() / (noisy - k).squaredNorm());
    sum += snr;
    worst = std::max(worst, std::abs(snr - 20));
  }
  const double mean = sum / 100;
  return {std::abs(mean - 20) <= 0.5,
          fmt("mean measured SNR %.3f dB over 100 seeds (limit 20 +- 0.5); largest single-seed deviation %.3f dB", mean, worst)};
}

// ---- AC-10 ----------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac10() {
  const fs::path root = fs::temp_directory_path() / "msrimg_acceptance_ac10";
  fs::remove_all(root);
  std::string how;
  for (const char* d : {"a", "b"}) {
#ifdef MSRIMG_CLI_PATH
    const std::string cmd = std::string(MSRIMG_CLI_PATH) + " reproduce table1-gamma1 --seed 42 --snr-db 20 --out " +
                            (root / d).string() + " > /dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) return {false, "msrimg reproduce failed"};
    how = "msrimg reproduce";
#else
    Scenario s = preset("table1-gamma1");
    s.seed = 42;
    reproduce(s, root / d);
    how = "library reproduce";
#endif
  }
  bool same = true;
  std::size_t bytes = 0;
  for (const char* f : {"map.csv", "map.pgm", "map.pgm.txt", "dataset/K_000.bin", "dataset/K_029.bin"}) {
    const std::string a = slurp(root / "a" / f), b = slurp(root / "b" / f);
    same = same && !a.empty() && a == b;
    bytes += a.size();
  }
  return {same, fmt("%s twice with seed 42: maps and datasets byte-identical (%zu bytes compared)", how.c_str(), bytes)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC-1", ac1}, {"AC-2", ac2}, {"AC-3", ac3}, {"AC-4", ac4}, {"AC-5", ac5},
      {"AC-6", ac6}, {"AC-7", ac7}, {"AC-8", ac8}, {"AC-9", ac9}, {"AC-10", ac10}};
  const std::string only = argc > 1 ? argv[1] : "";
  int failures = 0;
  for (const auto& [name, fn] : criteria) {
    if (!only.empty() && only != name) continue;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s  %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures ? 1 : 0;
}
