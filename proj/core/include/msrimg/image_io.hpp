#pragma once

#include <filesystem>

#include "msrimg/imaging.hpp"

namespace msrimg {

/// "x1,x2,W" rows in grid storage order (x1 fastest), full double precision.
void write_map_csv(const ImageMap& map, const std::filesystem::path& path);
/// Rebuilds the grid from the node coordinates. Throws ParseError.
ImageMap read_map_csv(const std::filesystem::path& path);

/// Binary PGM (P5), 8 or 16 bits. Pixels are min-max normalized
/// round((W - min) / (max - min) * maxval); a constant map is all zero. The
/// first image row is the largest x2. A sidecar "<path>.txt" records min, max,
/// maxval and orientation.
void write_map_pgm(const ImageMap& map, const std::filesystem::path& path, int bits = 8);

}  // namespace msrimg
