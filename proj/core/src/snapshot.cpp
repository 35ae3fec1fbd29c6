#include "kslab/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "kslab/error.hpp"

namespace kslab {

namespace {

constexpr char kMagic[4] = {'K', 'S', 'F', '1'};

template <class T>
void put(std::ostream& os, T v) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char buf[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) throw IoFailure("snapshot: truncated stream");
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(buf[i], buf[sizeof(T) - 1 - i]);
  }
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

}  // namespace

void write_snapshot(std::ostream& os, const ScalarField& f) {
  const Grid& g = f.grid();
  os.write(kMagic, 4);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.kind()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.nx()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.ny()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.dimension()));
  put<std::uint32_t>(os, 0u);
  put<double>(os, g.hx());
  put<double>(os, g.hy());
  put<double>(os, g.x0());
  put<double>(os, g.y0());
  for (double v : f.values()) put<double>(os, v);
  if (!os) throw IoFailure("snapshot: write failed");
}

ScalarField read_snapshot(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) throw IoFailure("snapshot: bad magic");
  const auto kind = get<std::uint32_t>(is);
  const auto nx = get<std::uint32_t>(is);
  const auto ny = get<std::uint32_t>(is);
  const auto dim = get<std::uint32_t>(is);
  (void)get<std::uint32_t>(is);
  const double hx = get<double>(is);
  const double hy = get<double>(is);
  const double x0 = get<double>(is);
  const double y0 = get<double>(is);
  GridPtr grid;
  try {
    if (kind == static_cast<std::uint32_t>(GridKind::rectangle)) {
      if (dim != 2) throw IoFailure("snapshot: rectangle grids are 2-D");
      grid = make_grid(Grid::rectangle_spacing(hx, hy, static_cast<int>(nx), static_cast<int>(ny), x0, y0));
    } else if (kind == static_cast<std::uint32_t>(GridKind::radial)) {
      if (ny != 1) throw IoFailure("snapshot: radial grids have ny = 1");
      grid = make_grid(Grid::radial_spacing(hx, static_cast<int>(nx), static_cast<int>(dim)));
    } else {
      throw IoFailure("snapshot: unknown grid kind " + std::to_string(kind));
    }
  } catch (const InvalidInput& e) {
    throw IoFailure(std::string("snapshot: invalid header: ") + e.what());
  }
  std::vector<double> values(grid->size());
  for (double& v : values) v = get<double>(is);
  return ScalarField(grid, std::move(values));
}

void write_snapshot(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  write_snapshot(os, f);
}

ScalarField read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoFailure("cannot open " + path.string());
  return read_snapshot(is);
}

void write_csv(std::ostream& os, const ScalarField& f) {
  const Grid& g = f.grid();
  char buf[128];
  os << "x,y,value\n";
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double y = g.is_radial() ? 0.0 : g.center_y(j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", g.center_x(i), y, f.at(i, j));
      os << buf;
    }
  }
}

void write_csv(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw IoFailure("cannot open " + path.string() + " for writing");
  write_csv(os, f);
  if (!os) throw IoFailure("write failed: " + path.string());
}

}  // namespace kslab
