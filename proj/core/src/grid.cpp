#include "kslab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kslab/error.hpp"
#include "kslab/summation.hpp"

namespace kslab {

double unit_ball_volume(int N) {
  return std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N + 1.0);
}

Grid Grid::rectangle(double lx, double ly, int nx, int ny, double x0, double y0) {
  if (nx < 4 || ny < 4) throw InvalidInput("rectangle grid: need at least 4 cells per direction");
  return rectangle_spacing(lx / nx, ly / ny, nx, ny, x0, y0);
}

Grid Grid::rectangle_spacing(double hx, double hy, int nx, int ny, double x0, double y0) {
  if (!(hx > 0.0) || !(hy > 0.0) || !std::isfinite(hx) || !std::isfinite(hy)) {
    throw InvalidInput("rectangle grid: side lengths must be positive");
  }
  if (nx < 4 || ny < 4) throw InvalidInput("rectangle grid: need at least 4 cells per direction");
  Grid g;
  g.kind_ = GridKind::rectangle;
  g.nx_ = nx;
  g.ny_ = ny;
  g.dimension_ = 2;
  g.hx_ = hx;
  g.hy_ = hy;
  g.x0_ = x0;
  g.y0_ = y0;
  g.areas_.assign(static_cast<std::size_t>(nx) * ny, g.hx_ * g.hy_);
  g.finalize();
  return g;
}

Grid Grid::radial(double radius, int n, int dimension) {
  if (n < 4) throw InvalidInput("radial grid: need at least 4 cells");
  return radial_spacing(radius / n, n, dimension);
}

Grid Grid::radial_spacing(double h, int n, int dimension) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("radial grid: radius must be positive");
  if (n < 4) throw InvalidInput("radial grid: need at least 4 cells");
  if (dimension < 1) throw InvalidInput("radial grid: dimension must be >= 1");
  Grid g;
  g.kind_ = GridKind::radial;
  g.nx_ = n;
  g.ny_ = 1;
  g.dimension_ = dimension;
  g.hx_ = h;
  g.hy_ = 0.0;
  g.areas_.resize(n);
  const double omega = unit_ball_volume(dimension);
  for (int i = 0; i < n; ++i) {
    // (i+1)^N - i^N in integer-friendly form keeps the telescoping sum tight.
    const double outer = std::pow(static_cast<double>(i + 1), dimension);
    const double inner = std::pow(static_cast<double>(i), dimension);
    g.areas_[i] = omega * (outer - inner) * std::pow(g.hx_, dimension);
  }
  g.finalize();
  return g;
}

void Grid::finalize() {
  min_area_ = *std::min_element(areas_.begin(), areas_.end());
  measure_ = pairwise_sum(areas_);
}

double Grid::exact_measure() const {
  if (is_radial()) return unit_ball_volume(dimension_) * std::pow(lx(), dimension_);
  return lx() * ly();
}

double Grid::diameter() const {
  if (is_radial()) return 2.0 * lx();
  return std::hypot(lx(), ly());
}

double Grid::face_measure(int f) const {
  if (!is_radial()) throw InvalidInput("face_measure: radial grids only");
  if (f == 0) return 0.0;  // symmetry center carries no flux
  if (dimension_ == 1) return 2.0;
  const double rho = f * hx_;
  return dimension_ * unit_ball_volume(dimension_) * std::pow(rho, dimension_ - 1);
}

bool Grid::same_layout(const Grid& o) const {
  return kind_ == o.kind_ && nx_ == o.nx_ && ny_ == o.ny_ && dimension_ == o.dimension_ && hx_ == o.hx_ &&
         hy_ == o.hy_ && x0_ == o.x0_ && y0_ == o.y0_;
}

}  // namespace kslab
