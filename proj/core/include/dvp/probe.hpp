#pragma once

// Yield loci and constant-overstress isolines in tension-torsion stress
// planes. A plane point (a, b) stands for the plane stress state
//
//   AxialTorsion: sigma11 = a, sigma22 = fixed, sqrt(3) sigma12 = b
//   HoopTorsion:  sigma11 = fixed, sigma22 = a, sqrt(3) sigma12 = b
//
// For fixed = 0 the map is an isometry up to the factor 2/3:
// dev(sigma_I) : dev(sigma_II) = 2/3 (v_I . v_II).

#include <cstddef>
#include <vector>

#include "dvp/geometry.hpp"
#include "dvp/material.hpp"

namespace dvp::probe {

enum class Plane { AxialTorsion, HoopTorsion };

struct PlanePoint {
  double a = 0.0;  // MPa
  double b = 0.0;  // MPa
};

struct YieldLocus {
  Plane plane = Plane::AxialTorsion;
  double fixed_stress = 0.0;
  double f_level = 0.0;
  /// Point of the plane whose deviator is closest to X_k + X_d.
  PlanePoint center;
  /// Unit plane direction of X_d; (1, 0) when X_d has no in-plane image.
  geometry::Vec2 axis{1.0, 0.0};
  /// Absolute plane angle of each ray; point 0 lies on +axis. Closed: the
  /// last entry repeats the first one (angle advanced by 2 pi).
  std::vector<double> angles;
  std::vector<PlanePoint> points;
};

struct LocusMetrics {
  double forward_extent = 0.0;   // along +axis from center
  double backward_extent = 0.0;  // along -axis from center
  double area = 0.0;
  double center_offset = 0.0;    // signed projection of center on axis
  double distortion_ratio() const { return forward_extent / backward_extent; }
};

SymTensor2 plane_stress(Plane plane, double fixed_stress, PlanePoint point);

/// Least-squares plane coordinates of a deviator (fixed stress excluded).
PlanePoint plane_image(Plane plane, const SymTensor2& deviator);

/// Ray search for f = f_level around the elastic-domain center. Throws
/// SubspaceViolation if the backstresses leave the probed subspace and
/// RayEscapes if a ray finds no crossing.
YieldLocus locus(const MaterialParams& params, const MaterialState& state, Plane plane, double fixed_stress,
                 double f_level, std::size_t n_points);

/// Same rays as locus() for AxialTorsion with zero fixed stress, built from
/// the interpolated shape instead of searching.
YieldLocus closed_form_locus(const MaterialParams& params, const MaterialState& state, double f_level,
                             std::size_t n_points);

LocusMetrics locus_metrics(const YieldLocus& locus);

}  // namespace dvp::probe
