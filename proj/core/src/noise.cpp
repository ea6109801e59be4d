#include "msrimg/noise.hpp"

#include <cmath>
#include <numbers>

#include "msrimg/errors.hpp"

namespace msrimg {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in (0, 1] with 53 random bits.
double unit_open_closed(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 1.0) * 0x1.0p-53;
}

}  // namespace

std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t key = splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  const std::uint64_t a = splitmix64(key ^ (2 * counter));
  const std::uint64_t b = splitmix64(key ^ (2 * counter + 1));
  const double radius = std::sqrt(-2.0 * std::log(unit_open_closed(a)));
  const double angle = 2.0 * std::numbers::pi * unit_open_closed(b);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

Eigen::MatrixXcd add_noise(const Eigen::MatrixXcd& k, double snr_db, std::uint64_t seed,
                           std::uint64_t stream) {
  if (snr_db == kNoNoise) return k;
  if (!std::isfinite(snr_db)) throw DomainError("add_noise: snr_db must be finite or +inf");
  const double norm = k.norm();
  if (!(norm > 0.0)) throw ConfigurationError("add_noise: cannot calibrate SNR on a zero matrix");
  const double entries = static_cast<double>(k.size());
  // E||eta||^2 = entries * 2 sigma^2.
  const double sigma = norm / std::sqrt(2.0 * entries) * std::pow(10.0, -snr_db / 20.0);
  Eigen::MatrixXcd out = k;
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    for (Eigen::Index r = 0; r < k.rows(); ++r) {
      const auto counter = static_cast<std::uint64_t>(r * k.cols() + c);
      const auto [re, im] = gaussian_pair(seed, stream, counter);
      out(r, c) += std::complex<double>(sigma * re, sigma * im);
    }
  }
  return out;
}

}  // namespace msrimg
