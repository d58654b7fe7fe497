#pragma once

// Saturated yield shape represented by circular arcs, and the distance
// construction that interpolates between the unit disc (alpha = 0) and the
// saturated shape (alpha = 1).
//
// Only the upper half of the boundary is stored. It starts at (1, 0) with
// outward normal (1, 0) and ends on the negative x-axis with outward normal
// (-1, 0); the lower half is its mirror image. All query points live in the
// closed upper half-plane, callers reduce by symmetry.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dvp/error.hpp"

namespace dvp::geometry {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

/// Tolerance of the endpoint / C1 checks in build_arc_boundary.
inline constexpr double kTolGeom = 1e-9;
/// Bisection tolerance of k_bar and level_radius.
inline constexpr double kTolRoot = 1e-10;
/// Boundary points per convexity check.
inline constexpr std::size_t kConvexitySamples = 720;

struct Arc {
  Vec2 start;
  Vec2 end;
  Vec2 center;
  double radius = 0.0;
};

/// One arc of the shape-file format: the start point is implied by the
/// previous arc (or (1, 0) for the first one).
struct ArcSpec {
  Vec2 center;
  double radius = 0.0;
  Vec2 end;
};

/// Outcome of one validation stage. Stages run in order and stop at the
/// first failure; the rest are reported as skipped.
struct ShapeCheck {
  enum class Status { Pass, Fail, Skipped };
  std::string name;
  Status status = Status::Skipped;
  ErrorCode code = ErrorCode::InvalidArgument;
  std::string detail;
};

class ArcBoundary {
 public:
  std::span<const Arc> arcs() const { return arcs_; }
  std::size_t size() const { return arcs_.size(); }
  /// K^sat(pi), the distance from the origin to the back of the shape.
  double k_sat_pi() const { return k_sat_pi_; }
  /// Largest |y| over the boundary.
  double max_extent() const { return max_extent_; }
  double max_radius() const;

  /// Outward normal / counter-clockwise tangent at junction y^i, i = 0..N.
  Vec2 junction_normal(std::size_t i) const { return normals_[i]; }
  Vec2 junction_tangent(std::size_t i) const { return {-normals_[i].y, normals_[i].x}; }
  /// Polar angle of junction y^i; 0 for i = 0 and pi for i = N.
  double junction_angle(std::size_t i) const { return angles_[i]; }

  std::vector<ArcSpec> specs() const;

 private:
  friend std::vector<ShapeCheck> check_arc_specs(std::span<const ArcSpec> specs, ArcBoundary* out);

  std::vector<Arc> arcs_;
  std::vector<Vec2> normals_;
  std::vector<double> angles_;
  double k_sat_pi_ = 1.0;
  double max_extent_ = 1.0;
};

/// Runs every validation stage on the arc data; on success stores the
/// assembled shape in *out (if given).
std::vector<ShapeCheck> check_arc_specs(std::span<const ArcSpec> specs, ArcBoundary* out = nullptr);

/// Validates and assembles a shape. Throws Error with SmoothnessViolation,
/// ConvexityViolation or NormalizationViolation.
ArcBoundary build_arc_boundary(std::span<const ArcSpec> specs);

/// Single arc from (1, 0) to (-1, 0): the undistorted Huber-Mises case.
ArcBoundary unit_half_disc();

/// K^sat(theta) for theta in [0, pi].
double radius_at(const ArcBoundary& shape, double theta);

/// Distance from y to the scaled set alpha * El^sat. Zero inside.
double distance_to_scaled(const ArcBoundary& shape, double alpha, Vec2 y);

/// Gradient of distance_to_scaled. Throws InsideSet where the distance is 0.
Vec2 outward_normal(const ArcBoundary& shape, double alpha, Vec2 y);

/// Non-dimensional overstress <D(y, alpha El^sat) - (1 - alpha)>.
double overstress_nd(const ArcBoundary& shape, double alpha, Vec2 y);

/// Radius of El(K(., alpha)) in direction theta, i.e. the interpolated
/// non-dimensional yield stress K(theta, alpha).
double k_bar(const ArcBoundary& shape, double theta, double alpha);

/// Radius along direction theta at which overstress_nd equals `level`.
/// k_bar is the special case level = 0.
double level_radius(const ArcBoundary& shape, double theta, double alpha, double level);

/// Sampling oracle for distance_to_scaled: minimum distance to n_samples
/// points of the boundary of alpha * El^sat (both halves), clamped to zero
/// for points inside the sampled polygon. Independent of the arc-selection
/// inequalities.
double brute_force_distance(const ArcBoundary& shape, double alpha, Vec2 y, std::size_t n_samples);

/// n points of the upper boundary, evenly spaced in arc length, first at
/// (1, 0) and last on the negative axis.
std::vector<Vec2> sample_upper_boundary(const ArcBoundary& shape, std::size_t n);

/// Closed boundary of El(K(., alpha)) sampled at n equally spaced polar
/// angles over [0, 2 pi).
std::vector<Vec2> sample_interpolated_boundary(const ArcBoundary& shape, double alpha, std::size_t n);

/// Smallest cross product of consecutive edges of a closed polygon given
/// counter-clockwise without the repeated first vertex. Non-negative for a
/// convex polygon.
double min_turn(std::span<const Vec2> polygon);

}  // namespace dvp::geometry
