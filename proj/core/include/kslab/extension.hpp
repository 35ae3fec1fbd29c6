#pragma once

#include <cstdint>
#include <vector>

#include "kslab/equi.hpp"
#include "kslab/field.hpp"

namespace kslab {

enum class Provenance : std::uint8_t { interior = 0, reflected = 1, cutoff = 2, zero = 3 };

/// Field on the padded rectangle Omega' = Omega enlarged by pad_x*hx and
/// pad_y*hy cells on every side.
struct ExtendedField {
  ScalarField values;          // after the cutoff ramp
  ScalarField raw;             // reflection only, before the cutoff
  std::vector<Provenance> provenance;
  int pad_x = 0;
  int pad_y = 0;
  double margin_x = 0.0;
  double margin_y = 0.0;

  /// Interior block, cell for cell.
  ScalarField restrict_to_source() const;
};

/// Cubic smoothstep cutoff: 1 for d <= m/2, 0 from the outermost cell center
/// d = m - h/2 outward. d is the distance outside Omega along one axis.
double cutoff_ramp(double d, double margin, double h);

/// First-order reflection across each edge,
///   ext(edge - t) = -3 phi(edge + t) + 4 phi(edge + t/2),
/// applied along x and then along y (corners are tensorized), times the
/// separable cutoff. The half-shift sample uses linear interpolation between
/// the two nearest interior cell centers. Rectangle grids only.
ExtendedField extend_first_order(const ScalarField& f, double margin);

struct InterfaceJumps {
  double value = 0.0;   // max |inside - outside| of edge values (quadratic extrapolation)
  double normal = 0.0;  // max |inside - outside| of one-sided normal derivatives at the edge
};

/// Measured along all four edges of Omega, excluding corner zones. Uses three
/// cells per side, so the margin should span at least 6 cells to keep the
/// cutoff out of the stencil.
InterfaceJumps interface_jumps(const ExtendedField& ext);

struct ExtensionReport {
  double lq_ratio = 1.0;    // |ext|_{L^q(Omega')} / |phi|_{L^q(Omega)}
  double w1r_ratio = 1.0;   // |ext|_{W^{1,r}(Omega')} / |phi|_{W^{1,r}(Omega)}
  ModulusCurve source_curve;
  ModulusCurve extended_curve;  // sampled at the source deltas
  double propagation_bound = 0.0;  // 6^p + 8^p + 1
  double observed_factor = 0.0;    // max over deltas of m_ext / m_src
  bool propagation_holds = true;
  InterfaceJumps jumps;
};

ExtensionReport extension_report(const ScalarField& source, const ExtendedField& extended, double p, double q,
                                 double r, int curve_points = 24);

}  // namespace kslab
