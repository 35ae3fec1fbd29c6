#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace kslab {

enum class GridKind : std::uint32_t { rectangle = 0, radial = 1 };

/// Cell-centered discretization of either a rectangle [x0,x0+Lx]x[y0,y0+Ly]
/// or the radial section [0,R] of an N-ball. Radial cell "areas" are the
/// N-dimensional annular volumes, so every integral reduces to
/// sum(value * area) regardless of geometry.
class Grid {
 public:
  static Grid rectangle(double lx, double ly, int nx, int ny, double x0 = 0.0, double y0 = 0.0);
  static Grid radial(double radius, int n, int dimension);
  /// Same grids parameterized by cell size (exact round trip through
  /// snapshot headers).
  static Grid rectangle_spacing(double hx, double hy, int nx, int ny, double x0 = 0.0, double y0 = 0.0);
  static Grid radial_spacing(double h, int n, int dimension);

  GridKind kind() const { return kind_; }
  bool is_radial() const { return kind_ == GridKind::radial; }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  std::size_t size() const { return areas_.size(); }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx_ + i; }

  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double x0() const { return x0_; }
  double y0() const { return y0_; }
  double lx() const { return hx_ * nx_; }
  double ly() const { return hy_ * ny_; }
  /// Spatial dimension: 2 for rectangles, N for radial grids.
  int dimension() const { return dimension_; }

  double area(std::size_t c) const { return areas_[c]; }
  std::span<const double> areas() const { return areas_; }
  double min_area() const { return min_area_; }
  /// Sum of cell areas (pairwise summation).
  double measure() const { return measure_; }
  /// Closed-form |Omega|: Lx*Ly or the N-ball volume.
  double exact_measure() const;
  /// Rectangle diagonal or 2R.
  double diameter() const;

  double center_x(int i) const { return x0_ + (i + 0.5) * hx_; }
  double center_y(int j) const { return y0_ + (j + 0.5) * hy_; }

  /// Radial only: measure of the sphere at face f (radius f*h).
  double face_measure(int f) const;

  bool same_layout(const Grid& other) const;

 private:
  Grid() = default;
  void finalize();

  GridKind kind_ = GridKind::rectangle;
  int nx_ = 0;
  int ny_ = 1;
  int dimension_ = 2;
  double hx_ = 0.0;
  double hy_ = 0.0;
  double x0_ = 0.0;
  double y0_ = 0.0;
  std::vector<double> areas_;
  double min_area_ = 0.0;
  double measure_ = 0.0;
};

using GridPtr = std::shared_ptr<const Grid>;

inline GridPtr make_grid(Grid g) { return std::make_shared<const Grid>(std::move(g)); }

/// Volume of the unit N-ball.
double unit_ball_volume(int N);

}  // namespace kslab
