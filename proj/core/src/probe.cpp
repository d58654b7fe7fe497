#include "dvp/probe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dvp/error.hpp"

namespace dvp::probe {

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

struct Hardening {
  SymTensor2 X_k;
  SymTensor2 X_d;
  double R = 0.0;
};

Hardening hardening_of(const MaterialParams& params, const MaterialState& state) {
  const DerivedQuantities d = compute_derived(params, state, {});
  return {d.X_k, d.X_d, d.R};
}

SymTensor2 in_plane_unit(Plane plane) {
  return plane == Plane::AxialTorsion ? SymTensor2::unit_normal(0) : SymTensor2::unit_normal(1);
}

SymTensor2 fixed_unit(Plane plane) {
  return plane == Plane::AxialTorsion ? SymTensor2::unit_normal(1) : SymTensor2::unit_normal(0);
}

SymTensor2 shear_unit() { return {0.0, 0.0, 0.0, kInvSqrt3, 0.0, 0.0}; }

void check_subspace(Plane plane, const SymTensor2& x, const char* name) {
  const double tol = 1e-9 * std::max(1.0, norm(x));
  bool ok = std::abs(x[4]) <= tol && std::abs(x[5]) <= tol;
  // The normal component outside the plane must mirror the fixed one.
  ok = ok && (plane == Plane::AxialTorsion ? std::abs(x[1] - x[2]) <= tol : std::abs(x[0] - x[2]) <= tol);
  if (!ok) throw Error(ErrorCode::SubspaceViolation, std::string(name) + " leaves the probed stress subspace");
}

geometry::Vec2 to_vec(PlanePoint p) { return {p.a, p.b}; }
PlanePoint to_point(geometry::Vec2 v) { return {v.x, v.y}; }

YieldLocus frame(const MaterialParams& params, const MaterialState& state, Plane plane, double fixed_stress,
                 double f_level, std::size_t n_points, Hardening& h) {
  if (n_points < 16) throw Error(ErrorCode::InvalidArgument, "a locus needs at least 16 points");
  if (!(f_level >= 0.0)) throw Error(ErrorCode::InvalidArgument, "f_level must be non-negative");
  if (!std::isfinite(fixed_stress)) throw Error(ErrorCode::InvalidArgument, "fixed stress must be finite");
  h = hardening_of(params, state);
  check_subspace(plane, h.X_k, "X_k");
  check_subspace(plane, h.X_d, "X_d");

  YieldLocus out;
  out.plane = plane;
  out.fixed_stress = fixed_stress;
  out.f_level = f_level;
  const SymTensor2 target = h.X_k + h.X_d - fixed_stress * dev(fixed_unit(plane));
  out.center = plane_image(plane, target);
  const PlanePoint xd = plane_image(plane, h.X_d);
  const double len = std::hypot(xd.a, xd.b);
  if (len > 1e-12 * std::max(1.0, norm(h.X_d))) out.axis = {xd.a / len, xd.b / len};
  const double phi0 = std::atan2(out.axis.y, out.axis.x);
  for (std::size_t j = 0; j <= n_points; ++j) {
    out.angles.push_back(phi0 + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_points));
  }
  return out;
}

/// Distance from `origin` along unit `dir` to the closed polyline, or -1.
double ray_hit(geometry::Vec2 origin, geometry::Vec2 dir, const std::vector<PlanePoint>& pts) {
  double best = -1.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const geometry::Vec2 p = to_vec(pts[k]);
    const geometry::Vec2 e = to_vec(pts[k + 1]) - p;
    const double denom = geometry::cross(dir, e);
    if (denom == 0.0) continue;
    const geometry::Vec2 w = p - origin;
    const double t = geometry::cross(w, e) / denom;
    const double s = geometry::cross(w, dir) / denom;
    if (t >= 0.0 && s >= -1e-12 && s <= 1.0 + 1e-12) best = std::max(best, t);
  }
  return best;
}

}  // namespace

SymTensor2 plane_stress(Plane plane, double fixed_stress, PlanePoint point) {
  return fixed_stress * fixed_unit(plane) + point.a * in_plane_unit(plane) + point.b * shear_unit();
}

PlanePoint plane_image(Plane plane, const SymTensor2& deviator) {
  const SymTensor2 ea = dev(in_plane_unit(plane));
  const SymTensor2 eb = shear_unit();
  const double gaa = contract(ea, ea);
  const double gab = contract(ea, eb);
  const double gbb = contract(eb, eb);
  const double ra = contract(deviator, ea);
  const double rb = contract(deviator, eb);
  const double det = gaa * gbb - gab * gab;
  return {(gbb * ra - gab * rb) / det, (gaa * rb - gab * ra) / det};
}

YieldLocus locus(const MaterialParams& params, const MaterialState& state, Plane plane, double fixed_stress,
                 double f_level, std::size_t n_points) {
  Hardening h;
  YieldLocus out = frame(params, state, plane, fixed_stress, f_level, n_points, h);
  const auto f_at = [&](geometry::Vec2 v) {
    return overstress(params, h.X_k, h.X_d, h.R, plane_stress(plane, fixed_stress, to_point(v)));
  };

  const geometry::Vec2 c = to_vec(out.center);
  if (f_at(c) > f_level) {
    throw Error(ErrorCode::RayEscapes, "the elastic-domain center lies outside the level set f = " +
                                           std::to_string(f_level));
  }
  const double size = params.K0 + h.R;
  const double cap = 1e3 * (size + f_level + std::abs(fixed_stress));
  for (std::size_t j = 0; j < n_points; ++j) {
    const geometry::Vec2 u = geometry::polar(1.0, out.angles[j]);
    double lo = 0.0;
    double hi = 0.5 * size;
    while (!(f_at(c + hi * u) > f_level)) {
      lo = hi;
      hi *= 2.0;
      if (hi > cap) {
        throw Error(ErrorCode::RayEscapes, "no crossing along ray " + std::to_string(j) + " below " +
                                               std::to_string(cap) + " MPa");
      }
    }
    for (int iter = 0; iter < 200 && hi - lo > 1e-13 * hi; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (f_at(c + mid * u) > f_level ? hi : lo) = mid;
    }
    out.points.push_back(to_point(c + (0.5 * (lo + hi)) * u));
  }
  out.points.push_back(out.points.front());
  return out;
}

YieldLocus closed_form_locus(const MaterialParams& params, const MaterialState& state, double f_level,
                             std::size_t n_points) {
  Hardening h;
  YieldLocus out = frame(params, state, Plane::AxialTorsion, 0.0, f_level, n_points, h);
  const double alpha = std::min(params.kappa_d * norm(h.X_d), 1.0);
  const double size = params.K0 + h.R;
  const double level = f_level / (std::sqrt(2.0 / 3.0) * size);
  const geometry::Vec2 c = to_vec(out.center);
  const double phi0 = out.angles.front();
  for (std::size_t j = 0; j < n_points; ++j) {
    const double rel = std::remainder(out.angles[j] - phi0, 2.0 * kPi);
    const double r = size * geometry::level_radius(params.shape, std::abs(rel), alpha, level);
    out.points.push_back(to_point(c + geometry::polar(r, out.angles[j])));
  }
  out.points.push_back(out.points.front());
  return out;
}

LocusMetrics locus_metrics(const YieldLocus& locus) {
  LocusMetrics m;
  const geometry::Vec2 c = to_vec(locus.center);
  m.forward_extent = ray_hit(c, locus.axis, locus.points);
  m.backward_extent = ray_hit(c, -locus.axis, locus.points);
  double twice = 0.0;
  for (std::size_t k = 0; k + 1 < locus.points.size(); ++k) {
    twice += geometry::cross(to_vec(locus.points[k]), to_vec(locus.points[k + 1]));
  }
  m.area = 0.5 * std::abs(twice);
  m.center_offset = geometry::dot(c, locus.axis);
  return m;
}

}  // namespace dvp::probe
