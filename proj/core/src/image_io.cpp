#include "msrimg/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "msrimg/errors.hpp"

namespace msrimg {

void write_map_csv(const ImageMap& map, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "x1,x2,W\n";
  char buf[96];
  for (std::size_t k = 0; k < map.values.size(); ++k) {
    const Vec2 x = map.grid.node(k);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x.x(), x.y(), map.values[k]);
    out << buf;
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

ImageMap read_map_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "x1,x2,W") throw ParseError(path.string() + ": missing 'x1,x2,W' header");
  std::vector<Vec2> nodes;
  std::vector<double> values;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double a, b, w;
    char tail;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf%c", &a, &b, &w, &tail) != 3)
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected three numbers");
    nodes.emplace_back(a, b);
    values.push_back(w);
  }
  if (nodes.empty()) throw ParseError(path.string() + ": no data rows");
  std::size_t nx = 1;
  while (nx < nodes.size() && nodes[nx].y() == nodes[0].y()) ++nx;
  if (nodes.size() % nx != 0) throw ParseError(path.string() + ": rows do not form a rectangular grid");
  ImageMap map;
  map.grid.nx = nx;
  map.grid.ny = nodes.size() / nx;
  map.grid.domain = {nodes.front().x(), nodes[nx - 1].x(), nodes.front().y(), nodes.back().y()};
  map.grid.step = nx > 1 ? (map.grid.domain.x_max - map.grid.domain.x_min) / double(nx - 1)
                         : (map.grid.ny > 1 ? (map.grid.domain.y_max - map.grid.domain.y_min) / double(map.grid.ny - 1) : 0.0);
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if ((map.grid.node(k) - nodes[k]).norm() > 1e-9 * (1.0 + nodes[k].norm()))
      throw ParseError(path.string() + ":" + std::to_string(k + 2) + ": node off the regular grid");
  }
  map.values = std::move(values);
  return map;
}

void write_map_pgm(const ImageMap& map, const std::filesystem::path& path, int bits) {
  if (bits != 8 && bits != 16) throw DomainError("write_map_pgm: bits must be 8 or 16");
  const unsigned maxval = bits == 8 ? 255u : 65535u;
  double lo = 0.0, hi = 0.0;
  if (!map.values.empty()) {
    const auto [mn, mx] = std::minmax_element(map.values.begin(), map.values.end());
    lo = *mn;
    hi = *mx;
  }
  const double range = hi - lo;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P5\n" << map.grid.nx << ' ' << map.grid.ny << '\n' << maxval << '\n';
  std::vector<unsigned char> row;
  for (std::size_t r = map.grid.ny; r-- > 0;) {
    row.clear();
    for (std::size_t i = 0; i < map.grid.nx; ++i) {
      const double w = map.values[r * map.grid.nx + i];
      const auto level = range > 0.0 ? static_cast<unsigned>(std::lround((w - lo) / range * maxval)) : 0u;
      if (bits == 8) {
        row.push_back(static_cast<unsigned char>(level));
      } else {
        row.push_back(static_cast<unsigned char>(level >> 8));
        row.push_back(static_cast<unsigned char>(level & 0xff));
      }
    }
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());

  std::ofstream side(path.string() + ".txt", std::ios::binary);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", lo);
  side << "min = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", hi);
  side << "max = " << buf << '\n';
  side << "maxval = " << maxval << '\n';
  side << "mapping = round((W - min) / (max - min) * maxval)\n";
  side << "orientation = first row is x2 = " << map.grid.domain.y_max << ", first column is x1 = "
       << map.grid.domain.x_min << '\n';
}

}  // namespace msrimg
