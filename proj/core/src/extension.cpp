#include "kslab/extension.hpp"

#include <algorithm>
#include <cmath>

#include "kslab/error.hpp"

namespace kslab {

namespace {

// Value of a 1-D cell-centered line at distance s from its leading edge,
// linear through the two nearest centers (extrapolating below h/2).
template <class At>
double sample_line(const At& at, int n, double h, double s) {
  const double f = s / h - 0.5;
  const int i0 = std::clamp(static_cast<int>(std::floor(f)), 0, n - 2);
  const double w = f - i0;
  return (1.0 - w) * at(i0) + w * at(i0 + 1);
}

// Reflected value at depth index m (center depth (m+0.5)h) outside the
// leading edge of a line accessed from that edge inward.
template <class At>
double reflect(const At& at, int n, double h, int m) {
  const double t = (m + 0.5) * h;
  return -3.0 * at(m) + 4.0 * sample_line(at, n, h, 0.5 * t);
}

}  // namespace

double cutoff_ramp(double d, double margin, double h) {
  if (d <= 0.5 * margin) return 1.0;
  const double end = margin - 0.5 * h;
  if (d >= end) return 0.0;
  const double s = (end - d) / (end - 0.5 * margin);
  return s * s * (3.0 - 2.0 * s);
}

ScalarField ExtendedField::restrict_to_source() const {
  const Grid& g = values.grid();
  const int nx = g.nx() - 2 * pad_x;
  const int ny = g.ny() - 2 * pad_y;
  auto src = make_grid(Grid::rectangle_spacing(g.hx(), g.hy(), nx, ny, g.x0() + pad_x * g.hx(),
                                               g.y0() + pad_y * g.hy()));
  ScalarField out(src);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) out.at(i, j) = values.at(i + pad_x, j + pad_y);
  return out;
}

ExtendedField extend_first_order(const ScalarField& f, double margin) {
  const Grid& g = f.grid();
  if (g.is_radial()) throw InvalidInput("extend_first_order: rectangle grids only");
  if (!(margin > 0.0)) throw InvalidInput("extend_first_order: margin must be > 0");
  if (margin > 0.5 * std::min(g.lx(), g.ly()) * (1.0 + 1e-12)) {
    throw InvalidInput("extend_first_order: margin exceeds half the shorter side");
  }
  const int kx = static_cast<int>(std::lround(margin / g.hx()));
  const int ky = static_cast<int>(std::lround(margin / g.hy()));
  if (kx < 4 || ky < 4) throw InvalidInput("extend_first_order: margin must span at least 4 cells");
  const int nx = g.nx(), ny = g.ny();
  const int ex = nx + 2 * kx, ey = ny + 2 * ky;

  // Pass 1: reflect along x on the source rows.
  std::vector<double> xpass(static_cast<std::size_t>(ex) * ny);
  for (int j = 0; j < ny; ++j) {
    double* row = &xpass[static_cast<std::size_t>(j) * ex];
    for (int i = 0; i < nx; ++i) row[kx + i] = f.at(i, j);
    const auto from_left = [&](int k) { return f.at(k, j); };
    const auto from_right = [&](int k) { return f.at(nx - 1 - k, j); };
    for (int m = 0; m < kx; ++m) {
      row[kx - 1 - m] = reflect(from_left, nx, g.hx(), m);
      row[kx + nx + m] = reflect(from_right, nx, g.hx(), m);
    }
  }

  // Pass 2: reflect along y on every extended column.
  auto grid = make_grid(Grid::rectangle_spacing(g.hx(), g.hy(), ex, ey, g.x0() - kx * g.hx(), g.y0() - ky * g.hy()));
  ExtendedField out{ScalarField(grid), ScalarField(grid), std::vector<Provenance>(grid->size()), kx, ky,
                    kx * g.hx(), ky * g.hy()};
  for (int i = 0; i < ex; ++i) {
    const auto col = [&](int k) { return xpass[static_cast<std::size_t>(k) * ex + i]; };
    const auto from_bottom = [&](int k) { return col(k); };
    const auto from_top = [&](int k) { return col(ny - 1 - k); };
    for (int j = 0; j < ny; ++j) out.raw.at(i, ky + j) = col(j);
    for (int m = 0; m < ky; ++m) {
      out.raw.at(i, ky - 1 - m) = reflect(from_bottom, ny, g.hy(), m);
      out.raw.at(i, ky + ny + m) = reflect(from_top, ny, g.hy(), m);
    }
  }

  for (int j = 0; j < ey; ++j) {
    const double dy = j < ky ? (ky - j - 0.5) * g.hy() : (j >= ky + ny ? (j - ky - ny + 0.5) * g.hy() : 0.0);
    const double zy = cutoff_ramp(dy, out.margin_y, g.hy());
    for (int i = 0; i < ex; ++i) {
      const double dx = i < kx ? (kx - i - 0.5) * g.hx() : (i >= kx + nx ? (i - kx - nx + 0.5) * g.hx() : 0.0);
      const double z = cutoff_ramp(dx, out.margin_x, g.hx()) * zy;
      const std::size_t c = grid->index(i, j);
      Provenance prov;
      if (dx == 0.0 && dy == 0.0) {
        prov = Provenance::interior;
        out.values[c] = out.raw[c];
      } else if (z == 1.0) {
        prov = Provenance::reflected;
        out.values[c] = out.raw[c];
      } else if (z > 0.0) {
        prov = Provenance::cutoff;
        out.values[c] = z * out.raw[c];
      } else {
        prov = Provenance::zero;
        out.values[c] = 0.0;
      }
      out.provenance[c] = prov;
    }
  }
  return out;
}

InterfaceJumps interface_jumps(const ExtendedField& ext) {
  const ScalarField& v = ext.values;
  const Grid& g = v.grid();
  const int kx = ext.pad_x, ky = ext.pad_y;
  const int nx = g.nx() - 2 * kx, ny = g.ny() - 2 * ky;
  InterfaceJumps out;
  // Quadratic one-sided fits through three cells on each side of an edge.
  // in[k] is the k-th interior cell counted from the edge, o[k] the k-th
  // exterior one. Two cells would not do: the reflection makes the first two
  // exterior cells the exact linear continuation of the first two interior ones.
  const auto accumulate = [&](const double (&in)[3], const double (&o)[3], double h) {
    const double inside = (15.0 * in[0] - 10.0 * in[1] + 3.0 * in[2]) / 8.0;
    const double outside = (15.0 * o[0] - 10.0 * o[1] + 3.0 * o[2]) / 8.0;
    out.value = std::max(out.value, std::fabs(inside - outside));
    // outward derivatives at the edge; the inward one flips sign
    const double d_out = (-2.0 * o[0] + 3.0 * o[1] - o[2]) / h;
    const double d_in = (2.0 * in[0] - 3.0 * in[1] + in[2]) / h;
    out.normal = std::max(out.normal, std::fabs(d_in - d_out));
  };
  for (int j = ky; j < ky + ny; ++j) {
    accumulate({v.at(kx, j), v.at(kx + 1, j), v.at(kx + 2, j)}, {v.at(kx - 1, j), v.at(kx - 2, j), v.at(kx - 3, j)},
               g.hx());
    const int e = kx + nx;
    accumulate({v.at(e - 1, j), v.at(e - 2, j), v.at(e - 3, j)}, {v.at(e, j), v.at(e + 1, j), v.at(e + 2, j)}, g.hx());
  }
  for (int i = kx; i < kx + nx; ++i) {
    accumulate({v.at(i, ky), v.at(i, ky + 1), v.at(i, ky + 2)}, {v.at(i, ky - 1), v.at(i, ky - 2), v.at(i, ky - 3)},
               g.hy());
    const int e = ky + ny;
    accumulate({v.at(i, e - 1), v.at(i, e - 2), v.at(i, e - 3)}, {v.at(i, e), v.at(i, e + 1), v.at(i, e + 2)}, g.hy());
  }
  return out;
}

ExtensionReport extension_report(const ScalarField& source, const ExtendedField& extended, double p, double q,
                                 double r, int curve_points) {
  ExtensionReport rep;
  const double lq_src = lp_norm(source, q);
  const double lq_ext = lp_norm(extended.values, q);
  rep.lq_ratio = lq_src == 0.0 ? 1.0 : lq_ext / lq_src;
  const double w_src = w1r_norm(source, r);
  const double w_ext = w1r_norm(extended.values, r);
  rep.w1r_ratio = w_src == 0.0 ? 1.0 : w_ext / w_src;

  rep.source_curve = modulus_curve(source, p, curve_points, "source");
  const BathtubTable ext_table(extended.values, p);
  rep.extended_curve.p = p;
  rep.extended_curve.source = "extended";
  rep.extended_curve.delta = rep.source_curve.delta;
  rep.propagation_bound = std::pow(6.0, p) + std::pow(8.0, p) + 1.0;
  for (std::size_t k = 0; k < rep.source_curve.delta.size(); ++k) {
    const double m_ext = ext_table.modulus(rep.source_curve.delta[k]);
    const double m_src = rep.source_curve.mass[k];
    rep.extended_curve.mass.push_back(m_ext);
    if (m_ext > rep.propagation_bound * m_src) rep.propagation_holds = false;
    if (m_src > 0.0) rep.observed_factor = std::max(rep.observed_factor, m_ext / m_src);
  }
  rep.jumps = interface_jumps(extended);
  return rep;
}

}  // namespace kslab
