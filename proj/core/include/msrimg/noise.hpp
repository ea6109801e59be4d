#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

#include <Eigen/Core>

namespace msrimg {

/// Name of the noise generator, recorded in dataset metadata.
inline constexpr std::string_view kNoiseGenerator = "splitmix64-counter/box-muller";

/// Pass as snr_db to disable noise.
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// Standard normal pair for (seed, stream, counter). Each entry of a matrix
/// owns its counter, so results do not depend on evaluation order.
std::pair<double, double> gaussian_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// K + eta with iid zero-mean complex Gaussian entries (independent real and
/// imaginary parts) scaled so that ||K||_F^2 / E||eta||_F^2 = 10^(snr_db/10).
/// `stream` separates independent draws under one seed (the frequency index
/// in a dataset). snr_db = +inf returns K unchanged. Throws
/// ConfigurationError for a zero matrix and DomainError for NaN or -inf.
Eigen::MatrixXcd add_noise(const Eigen::MatrixXcd& k, double snr_db, std::uint64_t seed,
                           std::uint64_t stream = 0);

}  // namespace msrimg
