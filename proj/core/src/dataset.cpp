#include "msrimg/dataset.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "msrimg/errors.hpp"
#include "msrimg/noise.hpp"

namespace msrimg {
namespace {

namespace fs = std::filesystem;

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) out |= ((bits >> (8 * i)) & 0xffULL) << (8 * (7 - i));
    return out;
  }
  return bits;
}

void put_double(char* dst, double x) {
  const std::uint64_t bits = to_little_endian(std::bit_cast<std::uint64_t>(x));
  std::memcpy(dst, &bits, 8);
}

double get_double(const char* src) {
  std::uint64_t bits;
  std::memcpy(&bits, src, 8);
  return std::bit_cast<double>(to_little_endian(bits));
}

std::map<std::string, std::string> read_key_values(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open dataset header " + file.string());
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos)
      throw ParseError(file.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ParseError("dataset header: missing key '" + key + "'");
  return it->second;
}

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw ParseError("dataset header: '" + key + "' is not a number: " + text);
  }
}

std::vector<double> parse_doubles(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::vector<double> out;
  std::string token;
  while (is >> token) out.push_back(parse_double(token, key));
  return out;
}

std::uint64_t parse_u64(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return x;
  } catch (const std::exception&) {
    throw ParseError("dataset header: '" + key + "' is not an unsigned integer: " + text);
  }
}

}  // namespace

std::string matrix_file_name(std::size_t frequency_index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "K_%03zu.bin", frequency_index);
  return buf;
}

std::vector<char> encode_matrix(const Eigen::MatrixXcd& k) {
  std::vector<char> bytes(static_cast<std::size_t>(k.size()) * 16);
  std::size_t at = 0;
  for (Eigen::Index r = 0; r < k.rows(); ++r) {
    for (Eigen::Index c = 0; c < k.cols(); ++c) {
      put_double(bytes.data() + at, k(r, c).real());
      put_double(bytes.data() + at + 8, k(r, c).imag());
      at += 16;
    }
  }
  return bytes;
}

Eigen::MatrixXcd decode_matrix(const std::vector<char>& bytes, std::size_t dim) {
  const std::size_t expected = dim * dim * 16;
  if (bytes.size() != expected) {
    const long long offset = static_cast<long long>(std::min(bytes.size(), expected));
    throw ParseError("matrix payload has " + std::to_string(bytes.size()) + " bytes, expected " +
                         std::to_string(expected) + " (mismatch at byte offset " +
                         std::to_string(offset) + ")",
                     offset);
  }
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXcd k(n, n);
  std::size_t at = 0;
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      const double re = get_double(bytes.data() + at);
      const double im = get_double(bytes.data() + at + 8);
      if (!std::isfinite(re) || !std::isfinite(im))
        throw ParseError("non-finite matrix entry at byte offset " + std::to_string(at),
                         static_cast<long long>(at));
      k(r, c) = {re, im};
      at += 16;
    }
  }
  return k;
}

void write_dataset(const MSRDataset& dataset, const fs::path& dir) {
  if (dataset.frequencies.size() != dataset.matrices.size())
    throw ConfigurationError("dataset: frequency and matrix counts differ");
  fs::create_directories(dir);
  const DirectionSet& dirs = dataset.directions;

  std::ostringstream meta;
  meta << "# msrimg multi-static response dataset\n";
  meta << "format = msrimg-msr 1\n";
  meta << "layout = row-major interleaved re/im little-endian float64\n";
  meta << "model = " << to_string(dataset.model) << "\n";
  meta << "N = " << dirs.count << "\n";
  meta << "N_plus = " << dirs.n_plus << "\n";
  meta << "alpha = " << format_double(dirs.alpha) << "\n";
  meta << "beta = " << format_double(dirs.beta) << "\n";
  meta << "zeta =";
  for (double z : dirs.zeta) meta << ' ' << format_double(z);
  meta << "\npropagating =";
  for (bool p : dirs.propagating) meta << ' ' << (p ? 1 : 0);
  meta << "\nF = " << dataset.frequencies.size() << "\n";
  meta << "omega =";
  for (double w : dataset.frequencies) meta << ' ' << format_double(w);
  meta << "\neps_plus = " << format_double(dataset.medium.eps_plus) << "\n";
  meta << "mu_plus = " << format_double(dataset.medium.mu_plus) << "\n";
  meta << "eps_minus = " << format_double(dataset.medium.eps_minus) << "\n";
  meta << "mu_minus = " << format_double(dataset.medium.mu_minus) << "\n";
  if (dataset.noise) {
    meta << "noise = gaussian\n";
    meta << "snr_db = " << format_double(dataset.noise->snr_db) << "\n";
    meta << "seed = " << dataset.noise->seed << "\n";
    meta << "noise_generator = "
         << (dataset.noise->generator.empty() ? std::string(kNoiseGenerator) : dataset.noise->generator)
         << "\n";
  } else {
    meta << "noise = none\n";
  }
  for (const auto& [key, value] : dataset.provenance) meta << "meta." << key << " = " << value << "\n";
  for (std::size_t f = 0; f < dataset.matrices.size(); ++f)
    meta << "file." << f << " = " << matrix_file_name(f) << "\n";

  {
    std::ofstream out(dir / kDatasetMetaFile, std::ios::binary);
    out << meta.str();
    if (!out) throw std::runtime_error("failed to write " + (dir / kDatasetMetaFile).string());
  }
  for (std::size_t f = 0; f < dataset.matrices.size(); ++f) {
    const auto& k = dataset.matrices[f];
    if (static_cast<std::size_t>(k.rows()) != dirs.n_plus || k.rows() != k.cols())
      throw ConfigurationError("dataset: matrix " + std::to_string(f) + " is not N_plus x N_plus");
    const std::vector<char> bytes = encode_matrix(k);
    std::ofstream out(dir / matrix_file_name(f), std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed to write " + (dir / matrix_file_name(f)).string());
  }
}

MSRDataset read_dataset(const fs::path& dir) {
  const auto kv = read_key_values(dir / kDatasetMetaFile);
  if (require(kv, "format") != "msrimg-msr 1")
    throw ParseError("dataset header: unsupported format '" + require(kv, "format") + "'");

  MSRDataset ds;
  ds.model = forward_model_from_string(require(kv, "model"));
  ds.medium.eps_plus = parse_double(require(kv, "eps_plus"), "eps_plus");
  ds.medium.mu_plus = parse_double(require(kv, "mu_plus"), "mu_plus");
  ds.medium.eps_minus = parse_double(require(kv, "eps_minus"), "eps_minus");
  ds.medium.mu_minus = parse_double(require(kv, "mu_minus"), "mu_minus");
  if (!ds.medium.valid()) throw ParseError("dataset header: medium parameters must be positive");

  ds.frequencies = parse_doubles(require(kv, "omega"), "omega");
  const std::uint64_t f_count = parse_u64(require(kv, "F"), "F");
  if (ds.frequencies.size() != f_count || f_count == 0)
    throw ParseError("dataset header: omega list does not match F");

  const auto n = static_cast<std::size_t>(parse_u64(require(kv, "N"), "N"));
  const double alpha = parse_double(require(kv, "alpha"), "alpha");
  const double beta = parse_double(require(kv, "beta"), "beta");
  try {
    ds.directions = build_directions(n, alpha, beta, frequency_context(ds.medium, ds.frequencies.front()));
  } catch (const DomainError& e) {
    throw ParseError(std::string("dataset header: invalid directions: ") + e.what());
  }
  const auto n_plus = static_cast<std::size_t>(parse_u64(require(kv, "N_plus"), "N_plus"));
  if (n_plus != ds.directions.n_plus)
    throw ParseError("dataset header: N_plus = " + std::to_string(n_plus) +
                     " disagrees with the propagating filter (" + std::to_string(ds.directions.n_plus) + ")");

  if (require(kv, "noise") == "gaussian") {
    NoiseSpec noise;
    noise.snr_db = parse_double(require(kv, "snr_db"), "snr_db");
    noise.seed = parse_u64(require(kv, "seed"), "seed");
    auto it = kv.find("noise_generator");
    noise.generator = it != kv.end() ? it->second : std::string(kNoiseGenerator);
    ds.noise = noise;
  }
  for (const auto& [key, value] : kv)
    if (key.rfind("meta.", 0) == 0) ds.provenance[key.substr(5)] = value;

  for (std::size_t f = 0; f < f_count; ++f) {
    const std::string name = require(kv, "file." + std::to_string(f));
    std::ifstream in(dir / name, std::ios::binary);
    if (!in) throw ParseError("cannot open matrix file " + (dir / name).string(), 0);
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    try {
      ds.matrices.push_back(decode_matrix(bytes, n_plus));
    } catch (const ParseError& e) {
      throw ParseError(name + ": " + e.what(), e.offset());
    }
  }
  return ds;
}

void export_dataset_csv(const MSRDataset& dataset, const fs::path& dir) {
  fs::create_directories(dir);
  for (std::size_t f = 0; f < dataset.matrices.size(); ++f) {
    std::string name = matrix_file_name(f);
    name.replace(name.size() - 4, 4, ".csv");
    std::ofstream out(dir / name);
    out << "j,l,re,im\n";
    const auto& k = dataset.matrices[f];
    for (Eigen::Index j = 0; j < k.rows(); ++j)
      for (Eigen::Index l = 0; l < k.cols(); ++l)
        out << (j + 1) << ',' << (l + 1) << ',' << format_double(k(j, l).real()) << ','
            << format_double(k(j, l).imag()) << '\n';
  }
}

}  // namespace msrimg
