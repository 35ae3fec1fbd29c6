#pragma once

#include <filesystem>
#include <iosfwd>

#include "kslab/field.hpp"

namespace kslab {

// Binary field snapshot, all little-endian:
//
//   offset  size  content
//   0       4     magic "KSF1"
//   4       4     u32 kind (0 rectangle, 1 radial)
//   8       4     u32 nx
//   12      4     u32 ny (1 for radial)
//   16      4     u32 N (spatial dimension)
//   20      4     u32 reserved (0)
//   24      8     f64 hx
//   32      8     f64 hy (0 for radial)
//   40      8     f64 x0
//   48      8     f64 y0
//   56      8*nx*ny  f64 values, row-major (x fastest)

void write_snapshot(std::ostream& os, const ScalarField& f);
ScalarField read_snapshot(std::istream& is);

void write_snapshot(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_snapshot(const std::filesystem::path& path);

/// "x,y,value" rows with a header; radial grids write (rho, 0, value).
void write_csv(std::ostream& os, const ScalarField& f);
void write_csv(const std::filesystem::path& path, const ScalarField& f);

}  // namespace kslab
