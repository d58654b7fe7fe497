#include "dvp/geometry.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "dvp/error.hpp"

namespace dvp::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

std::string arc_label(std::size_t i) { return "arc " + std::to_string(i + 1); }

double angle_of(Vec2 v) { return std::atan2(v.y, v.x); }

/// Signed angle swept counter-clockwise from unit vector a to unit vector b,
/// in (-pi, pi] with exact half-turns reported as +pi.
double swept_angle(Vec2 a, Vec2 b) {
  double angle = std::atan2(cross(a, b), dot(a, b));
  if (angle <= -kPi + kTolGeom) angle += 2.0 * kPi;
  return angle;
}

double start_normal_angle(const Arc& arc) { return angle_of(arc.start - arc.center); }

double arc_span(const Arc& arc) {
  return swept_angle((1.0 / arc.radius) * (arc.start - arc.center), (1.0 / arc.radius) * (arc.end - arc.center));
}

/// Index of the arc whose normal cone contains y, following the two tangent
/// inequalities and the chord inequality. Only meaningful for y outside
/// alpha * El^sat.
std::optional<std::size_t> select_arc(const ArcBoundary& shape, double alpha, Vec2 y) {
  const double tol = 1e-12 * std::max(1.0, norm(y));
  const auto arcs = shape.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const Arc& arc = arcs[i];
    const Vec2 from_start = y - alpha * arc.start;
    if (dot(from_start, shape.junction_tangent(i)) < -tol) continue;
    if (dot(y - alpha * arc.end, -shape.junction_tangent(i + 1)) < -tol) continue;
    const Vec2 chord = arc.end - arc.start;
    const Vec2 chord_normal{chord.y, -chord.x};  // Q . chord
    if (dot(from_start, chord_normal) < -tol * norm(chord)) continue;
    return i;
  }
  return std::nullopt;
}

void check_query(double alpha, Vec2& y) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (!std::isfinite(y.x) || !std::isfinite(y.y)) throw Error(ErrorCode::InvalidArgument, "non-finite query point");
  if (y.y < 0.0) {
    if (y.y < -1e-12 * std::max(1.0, std::abs(y.x))) {
      throw Error(ErrorCode::InvalidArgument, "query point must lie in the upper half-plane");
    }
    y.y = 0.0;
  }
}

double clamp_theta(double theta) {
  if (!(theta >= -1e-12 && theta <= kPi + 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "theta must lie in [0, pi], got " + std::to_string(theta));
  }
  return std::clamp(theta, 0.0, kPi);
}

struct Located {
  double distance = 0.0;
  std::optional<std::size_t> arc;  // empty: inside, or alpha == 0
};

Located locate(const ArcBoundary& shape, double alpha, Vec2 y) {
  const double r = norm(y);
  if (alpha == 0.0 || r == 0.0) return {r, std::nullopt};
  const double theta = std::atan2(y.y, y.x);
  if (r <= alpha * radius_at(shape, theta)) return {0.0, std::nullopt};
  const auto i = select_arc(shape, alpha, y);
  if (!i) {
    throw Error(ErrorCode::NoArcFound,
                "no arc satisfies the selection inequalities at (" + std::to_string(y.x) + ", " +
                    std::to_string(y.y) + "), alpha " + std::to_string(alpha));
  }
  const Arc& arc = shape.arcs()[*i];
  return {std::max(norm(y - alpha * arc.center) - alpha * arc.radius, 0.0), i};
}

}  // namespace

double ArcBoundary::max_radius() const {
  double r = 0.0;
  for (const Arc& arc : arcs_) r = std::max(r, arc.radius);
  return r;
}

std::vector<ArcSpec> ArcBoundary::specs() const {
  std::vector<ArcSpec> out;
  out.reserve(arcs_.size());
  for (const Arc& arc : arcs_) out.push_back({arc.center, arc.radius, arc.end});
  return out;
}

std::vector<ShapeCheck> check_arc_specs(std::span<const ArcSpec> specs, ArcBoundary* out) {
  ArcBoundary shape;
  std::size_t n = 0;

  auto fail = [](ErrorCode code, const std::string& detail) { throw Error(code, detail); };

  struct Stage {
    const char* name;
    std::function<void()> run;
  };
  const std::vector<Stage> stages = {
      {"arc_data",
       [&] {
         if (specs.empty()) fail(ErrorCode::InvalidArgument, "a shape needs at least one arc");
         Vec2 start{1.0, 0.0};
         for (const ArcSpec& spec : specs) {
           if (!std::isfinite(spec.radius) || !std::isfinite(spec.center.x) || !std::isfinite(spec.center.y) ||
               !std::isfinite(spec.end.x) || !std::isfinite(spec.end.y)) {
             fail(ErrorCode::InvalidArgument, "non-finite arc data");
           }
           shape.arcs_.push_back({start, spec.end, spec.center, spec.radius});
           start = spec.end;
         }
         n = shape.arcs_.size();
       }},
      {"end_on_negative_axis",
       [&] {
         const Vec2 last = shape.arcs_.back().end;
         if (std::abs(last.y) > kTolGeom || !(last.x < 0.0)) {
           fail(ErrorCode::NormalizationViolation, "last arc must end on the negative x-axis");
         }
       }},
      {"points_on_circles",
       [&] {
         for (std::size_t i = 0; i < n; ++i) {
           const Arc& arc = shape.arcs_[i];
           if (!(arc.radius > 0.0)) fail(ErrorCode::SmoothnessViolation, arc_label(i) + " has non-positive radius");
           const double scale = std::max(1.0, arc.radius);
           if (std::abs(norm(arc.start - arc.center) - arc.radius) > kTolGeom * scale) {
             fail(ErrorCode::SmoothnessViolation, arc_label(i) + ": start point is off the circle");
           }
           if (std::abs(norm(arc.end - arc.center) - arc.radius) > kTolGeom * scale) {
             fail(ErrorCode::SmoothnessViolation, arc_label(i) + ": end point is off the circle");
           }
         }
       }},
      {"c1_junctions",
       [&] {
         shape.normals_.assign(n + 1, Vec2{});
         shape.normals_[0] = {1.0, 0.0};
         shape.normals_[n] = {-1.0, 0.0};
         for (std::size_t i = 0; i < n; ++i) {
           const Arc& arc = shape.arcs_[i];
           const Vec2 n_start = (1.0 / arc.radius) * (arc.start - arc.center);
           const Vec2 n_end = (1.0 / arc.radius) * (arc.end - arc.center);
           if (norm(n_start - shape.normals_[i]) > kTolGeom) {
             fail(ErrorCode::SmoothnessViolation, "tangent jump at the start of " + arc_label(i));
           }
           if (i + 1 < n) {
             shape.normals_[i + 1] = n_end;
           } else if (norm(n_end - shape.normals_[n]) > kTolGeom) {
             fail(ErrorCode::SmoothnessViolation, "last arc does not meet the axis at a right angle");
           }
         }
       }},
      {"arc_orientation",
       [&] {
         double turning = 0.0;
         for (std::size_t i = 0; i < n; ++i) {
           const double span = arc_span(shape.arcs_[i]);
           if (!(span > kTolGeom)) fail(ErrorCode::ConvexityViolation, arc_label(i) + " is clockwise or degenerate");
           turning += span;
         }
         if (std::abs(turning - kPi) > 1e-8) {
           fail(ErrorCode::ConvexityViolation, "total turning of the upper boundary is not pi");
         }
       }},
      {"origin_interior",
       [&] {
         // y . n(y) > 0 along every arc. On an arc y . n = c . n + r, smallest
         // where n is closest to -c.
         for (std::size_t i = 0; i < n; ++i) {
           const Arc& arc = shape.arcs_[i];
           const double psi0 = start_normal_angle(arc);
           const double span = arc_span(arc);
           double lowest = std::min(dot(arc.center, polar(1.0, psi0)), dot(arc.center, polar(1.0, psi0 + span)));
           if (norm(arc.center) > 0.0) {
             double to_opposite = std::remainder(angle_of(-arc.center) - psi0, 2.0 * kPi);
             if (to_opposite < 0.0) to_opposite += 2.0 * kPi;
             if (to_opposite <= span) lowest = -norm(arc.center);
           }
           if (!(lowest + arc.radius > kTolGeom)) {
             fail(ErrorCode::NormalizationViolation, "origin is not strictly inside the shape (" + arc_label(i) + ")");
           }
         }
         shape.angles_.assign(n + 1, 0.0);
         shape.angles_[n] = kPi;
         for (std::size_t i = 1; i < n; ++i) shape.angles_[i] = angle_of(shape.arcs_[i - 1].end);
         for (std::size_t i = 0; i < n; ++i) {
           if (!(shape.angles_[i + 1] > shape.angles_[i])) {
             fail(ErrorCode::ConvexityViolation, "junction polar angles are not increasing");
           }
         }
       }},
      {"sampled_convexity",
       [&] {
         shape.k_sat_pi_ = -shape.arcs_.back().end.x;
         shape.max_extent_ = 0.0;
         for (const Arc& arc : shape.arcs_) {
           double far = std::max(norm(arc.start), norm(arc.end));
           if (norm(arc.center) > 0.0) {
             double to_center_dir = std::remainder(angle_of(arc.center) - start_normal_angle(arc), 2.0 * kPi);
             if (to_center_dir < 0.0) to_center_dir += 2.0 * kPi;
             if (to_center_dir <= arc_span(arc)) far = norm(arc.center) + arc.radius;
           } else {
             far = arc.radius;
           }
           shape.max_extent_ = std::max(shape.max_extent_, far);
         }
         const auto upper = sample_upper_boundary(shape, kConvexitySamples / 2 + 1);
         std::vector<Vec2> closed(upper.begin(), upper.end());
         for (std::size_t k = upper.size() - 2; k >= 1; --k) closed.push_back({upper[k].x, -upper[k].y});
         if (min_turn(closed) < -1e-12 * shape.max_extent_ * shape.max_extent_) {
           fail(ErrorCode::ConvexityViolation, "sampled boundary is not convex");
         }
       }},
  };

  std::vector<ShapeCheck> report;
  bool ok = true;
  for (const Stage& stage : stages) {
    ShapeCheck check{stage.name, ShapeCheck::Status::Skipped, ErrorCode::InvalidArgument, {}};
    if (ok) {
      try {
        stage.run();
        check.status = ShapeCheck::Status::Pass;
      } catch (const Error& e) {
        check.status = ShapeCheck::Status::Fail;
        check.code = e.code();
        check.detail = e.what();
        ok = false;
      }
    }
    report.push_back(std::move(check));
  }
  if (ok && out != nullptr) *out = std::move(shape);
  return report;
}

ArcBoundary build_arc_boundary(std::span<const ArcSpec> specs) {
  ArcBoundary shape;
  for (const ShapeCheck& check : check_arc_specs(specs, &shape)) {
    if (check.status == ShapeCheck::Status::Fail) throw Error(check.code, check.detail);
  }
  return shape;
}

ArcBoundary unit_half_disc() {
  const ArcSpec spec{{0.0, 0.0}, 1.0, {-1.0, 0.0}};
  return build_arc_boundary(std::span<const ArcSpec>(&spec, 1));
}

double radius_at(const ArcBoundary& shape, double theta) {
  theta = clamp_theta(theta);
  const auto arcs = shape.arcs();
  std::size_t i = 0;
  while (i + 1 < arcs.size() && theta > shape.junction_angle(i + 1)) ++i;
  const Arc& arc = arcs[i];
  const Vec2 u = polar(1.0, theta);
  const double along = dot(u, arc.center);
  const double off = cross(u, arc.center);
  // Leaving the shape means leaving the arc's circle: take the far root.
  return along + std::sqrt(std::max(arc.radius * arc.radius - off * off, 0.0));
}

double distance_to_scaled(const ArcBoundary& shape, double alpha, Vec2 y) {
  check_query(alpha, y);
  return locate(shape, alpha, y).distance;
}

Vec2 outward_normal(const ArcBoundary& shape, double alpha, Vec2 y) {
  check_query(alpha, y);
  const Located where = locate(shape, alpha, y);
  if (!(where.distance > 0.0)) throw Error(ErrorCode::InsideSet, "gradient of the distance is undefined inside the set");
  const Vec2 center = where.arc ? alpha * shape.arcs()[*where.arc].center : Vec2{};
  const Vec2 d = y - center;
  return (1.0 / norm(d)) * d;
}

double overstress_nd(const ArcBoundary& shape, double alpha, Vec2 y) {
  return std::max(distance_to_scaled(shape, alpha, y) - (1.0 - alpha), 0.0);
}

double level_radius(const ArcBoundary& shape, double theta, double alpha, double level) {
  theta = clamp_theta(theta);
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "alpha must lie in [0, 1]");
  if (!(level >= 0.0)) throw Error(ErrorCode::InvalidArgument, "overstress level must be non-negative");
  const double target = (1.0 - alpha) + level;
  if (alpha == 0.0) return target;
  double lo = alpha * radius_at(shape, theta);
  if (target == 0.0) return lo;
  // D(y) >= |y| - alpha * max_extent, so hi is past the level set.
  double hi = alpha * shape.max_extent() + target;
  const Vec2 u = polar(1.0, theta);
  for (int iter = 0; iter < 200; ++iter) {
    if (hi - lo <= kTolRoot * std::max(1.0, hi)) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    const Vec2 y = mid * u;
    if (locate(shape, alpha, {y.x, std::max(y.y, 0.0)}).distance > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw Error(ErrorCode::ConvergenceFailure, "bisection for the level radius did not converge");
}

double k_bar(const ArcBoundary& shape, double theta, double alpha) { return level_radius(shape, theta, alpha, 0.0); }

std::vector<Vec2> sample_upper_boundary(const ArcBoundary& shape, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const auto arcs = shape.arcs();
  std::vector<double> cumulative(arcs.size() + 1, 0.0);
  for (std::size_t i = 0; i < arcs.size(); ++i) cumulative[i + 1] = cumulative[i] + arcs[i].radius * arc_span(arcs[i]);
  const double total = cumulative.back();

  std::vector<Vec2> out;
  out.reserve(n);
  std::size_t i = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (i + 1 < arcs.size() && s > cumulative[i + 1]) ++i;
    const Arc& arc = arcs[i];
    const double psi = start_normal_angle(arc) + (s - cumulative[i]) / arc.radius;
    out.push_back(arc.center + polar(arc.radius, psi));
  }
  out.front() = arcs.front().start;
  out.back() = arcs.back().end;
  return out;
}

std::vector<Vec2> sample_interpolated_boundary(const ArcBoundary& shape, double alpha, std::size_t n) {
  std::vector<Vec2> out;
  out.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n);
    const double theta = phi <= kPi ? phi : 2.0 * kPi - phi;
    out.push_back(polar(k_bar(shape, theta, alpha), phi));
  }
  return out;
}

double min_turn(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 e1 = polygon[(j + 1) % n] - polygon[j];
    const Vec2 e2 = polygon[(j + 2) % n] - polygon[(j + 1) % n];
    lowest = std::min(lowest, cross(e1, e2));
  }
  return lowest;
}

double brute_force_distance(const ArcBoundary& shape, double alpha, Vec2 y, std::size_t n_samples) {
  if (n_samples < 1000) throw Error(ErrorCode::InvalidArgument, "brute force needs at least 1000 samples");
  if (alpha == 0.0) return norm(y);
  const auto upper = sample_upper_boundary(shape, n_samples / 2 + 1);
  std::vector<Vec2> closed;
  closed.reserve(2 * upper.size());
  for (const Vec2& p : upper) closed.push_back(alpha * p);
  for (std::size_t k = upper.size() - 2; k >= 1; --k) closed.push_back(alpha * Vec2{upper[k].x, -upper[k].y});

  bool inside = true;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < closed.size(); ++k) {
    const Vec2 a = closed[k];
    const Vec2 b = closed[(k + 1) % closed.size()];
    if (cross(b - a, y - a) < 0.0) inside = false;
    best = std::min(best, norm(y - a));
  }
  return inside ? 0.0 : best;
}

}  // namespace dvp::geometry
