#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "msrimg/directions.hpp"
#include "msrimg/forward.hpp"

namespace msrimg {

struct NoiseSpec {
  double snr_db = 20.0;
  std::uint64_t seed = 0;
  std::string generator;
};

/// Per-frequency response matrices with provenance.
///
/// On disk a dataset is a directory:
///   dataset.meta   plain-text "key = value" header (N, N_plus, zeta grid,
///                  propagating mask, omega list, medium, model, noise, seed,
///                  snr_db, provenance entries)
///   K_000.bin ...  one file per frequency: N_plus x N_plus complex matrix,
///                  row-major, interleaved (re, im), little-endian IEEE-754
///                  binary64, no header (size = 16 N_plus^2 bytes)
struct MSRDataset {
  std::vector<double> frequencies;
  std::vector<Eigen::MatrixXcd> matrices;
  DirectionSet directions;
  HalfSpaceMedium medium;
  ForwardModel model = ForwardModel::AsymptoticFine;
  std::optional<NoiseSpec> noise;
  /// Free-form provenance (scenario name and hash, contrast class, imaging
  /// defaults).
  std::map<std::string, std::string> provenance;
};

inline constexpr const char* kDatasetMetaFile = "dataset.meta";

std::string matrix_file_name(std::size_t frequency_index);

void write_dataset(const MSRDataset& dataset, const std::filesystem::path& dir);

/// Throws ParseError (with a byte offset for binary payload problems).
MSRDataset read_dataset(const std::filesystem::path& dir);

/// One CSV per frequency (K_000.csv, ...) with rows "j,l,re,im", 1-based
/// indices over the propagating subset.
void export_dataset_csv(const MSRDataset& dataset, const std::filesystem::path& dir);

/// Raw binary layout helpers.
std::vector<char> encode_matrix(const Eigen::MatrixXcd& k);
Eigen::MatrixXcd decode_matrix(const std::vector<char>& bytes, std::size_t dim);

}  // namespace msrimg
