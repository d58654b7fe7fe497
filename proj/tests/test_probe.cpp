#include <gtest/gtest.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "dvp/driver.hpp"
#include "dvp/error.hpp"
#include "dvp/probe.hpp"
#include "support/oracles.hpp"

namespace {

using namespace dvp;
using namespace dvp::probe;
namespace oracle = dvp::testing;

constexpr double kPi = std::numbers::pi;

template <class F>
void expect_code(ErrorCode code, F&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

struct Prestrained {
  MaterialParams params;
  MaterialState state;
};

Prestrained prestrain(const char* shape, std::size_t component) {
  Prestrained out{oracle::table1(shape), {}};
  LoadingSegment seg;
  seg.duration = 2e-4;
  seg.controls[component] = {ControlKind::StrainRate, 100.0};
  out.state = run(out.params, {}, {seg}).final_state;
  return out;
}

std::vector<geometry::Vec2> open_polygon(const YieldLocus& l) {
  std::vector<geometry::Vec2> pts;
  for (std::size_t j = 0; j + 1 < l.points.size(); ++j) pts.push_back({l.points[j].a, l.points[j].b});
  return pts;
}

/// Curvature of the circle through three consecutive points.
double curvature(const std::vector<geometry::Vec2>& pts, std::size_t j) {
  const std::size_t n = pts.size();
  const geometry::Vec2 a = pts[(j + n - 1) % n], b = pts[j], c = pts[(j + 1) % n];
  const double ab = std::hypot(b.x - a.x, b.y - a.y);
  const double bc = std::hypot(c.x - b.x, c.y - b.y);
  const double ca = std::hypot(a.x - c.x, a.y - c.y);
  const double cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  return 2.0 * cross / (ab * bc * ca);
}

class ProbeHardened : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    axial_egg = std::make_unique<Prestrained>(prestrain("egg.json", 0));
    axial_shifted = std::make_unique<Prestrained>(prestrain("egg_shifted.json", 0));
    hoop_egg = std::make_unique<Prestrained>(prestrain("egg.json", 1));
  }
  static void TearDownTestSuite() {
    axial_egg.reset();
    axial_shifted.reset();
    hoop_egg.reset();
  }
  static std::unique_ptr<Prestrained> axial_egg, axial_shifted, hoop_egg;
};

std::unique_ptr<Prestrained> ProbeHardened::axial_egg;
std::unique_ptr<Prestrained> ProbeHardened::axial_shifted;
std::unique_ptr<Prestrained> ProbeHardened::hoop_egg;

TEST(PlaneStress, Isomorphism) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  for (Plane plane : {Plane::AxialTorsion, Plane::HoopTorsion}) {
    for (int i = 0; i < 1000; ++i) {
      const PlanePoint p{u(rng), u(rng)}, q{u(rng), u(rng)};
      const double lhs = contract(dev(plane_stress(plane, 0.0, p)), dev(plane_stress(plane, 0.0, q)));
      const double rhs = 2.0 / 3.0 * (p.a * q.a + p.b * q.b);
      EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(rhs)));
    }
  }
}

TEST(PlaneStress, Components) {
  const SymTensor2 s = plane_stress(Plane::AxialTorsion, 4.0, {2.0, std::sqrt(3.0)});
  EXPECT_DOUBLE_EQ(s[0], 2.0);
  EXPECT_DOUBLE_EQ(s[1], 4.0);
  EXPECT_DOUBLE_EQ(s[2], 0.0);
  EXPECT_DOUBLE_EQ(s[3], 1.0);
  const SymTensor2 h = plane_stress(Plane::HoopTorsion, 4.0, {2.0, std::sqrt(3.0)});
  EXPECT_DOUBLE_EQ(h[0], 4.0);
  EXPECT_DOUBLE_EQ(h[1], 2.0);
  EXPECT_DOUBLE_EQ(h[3], 1.0);
}

TEST(PlaneStress, ImageInvertsMap) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-50.0, 50.0);
  for (Plane plane : {Plane::AxialTorsion, Plane::HoopTorsion}) {
    for (int i = 0; i < 100; ++i) {
      const PlanePoint p{u(rng), u(rng)};
      const PlanePoint back = plane_image(plane, dev(plane_stress(plane, 0.0, p)));
      EXPECT_NEAR(back.a, p.a, 1e-12 * 50.0);
      EXPECT_NEAR(back.b, p.b, 1e-12 * 50.0);
    }
  }
}

TEST(Locus, VirginCircle) {
  const MaterialParams params = oracle::table1();
  const std::size_t n = 360;
  const YieldLocus l = locus(params, {}, Plane::AxialTorsion, 0.0, 0.0, n);
  ASSERT_EQ(l.points.size(), n + 1);
  EXPECT_EQ(l.points.front().a, l.points.back().a);
  EXPECT_EQ(l.points.front().b, l.points.back().b);
  double worst = 0.0;
  for (const PlanePoint& p : l.points) worst = std::max(worst, std::abs(std::hypot(p.a, p.b) - 7.4));
  EXPECT_LT(worst, 1e-6);

  const LocusMetrics m = locus_metrics(l);
  EXPECT_NEAR(m.forward_extent, 7.4, 1e-6);
  EXPECT_NEAR(m.backward_extent, 7.4, 1e-6);
  EXPECT_NEAR(m.center_offset, 0.0, 1e-12);
  const double polygon_area = 0.5 * static_cast<double>(n) * 7.4 * 7.4 * std::sin(2.0 * kPi / static_cast<double>(n));
  EXPECT_NEAR(m.area, polygon_area, 1e-9 * polygon_area);
}

TEST(Locus, VirginIsolineRadius) {
  // f = |sigma^D| - sqrt(2/3) K0 and |sigma^D| = sqrt(2/3) |v|.
  const MaterialParams params = oracle::table1();
  const double f_level = 0.5;
  const YieldLocus l = locus(params, {}, Plane::HoopTorsion, 0.0, f_level, 64);
  const double radius = 7.4 + std::sqrt(1.5) * f_level;
  for (const PlanePoint& p : l.points) EXPECT_NEAR(std::hypot(p.a, p.b), radius, 1e-6);
}

TEST(Locus, InvalidArguments) {
  const MaterialParams params = oracle::table1();
  expect_code(ErrorCode::InvalidArgument, [&] { locus(params, {}, Plane::AxialTorsion, 0.0, 0.0, 15); });
  expect_code(ErrorCode::InvalidArgument, [&] { locus(params, {}, Plane::AxialTorsion, 0.0, -1.0, 64); });
}

TEST(Locus, RayEscapesWhenCenterOutsideLevelSet) {
  const MaterialParams params = oracle::table1();
  expect_code(ErrorCode::RayEscapes, [&] { locus(params, {}, Plane::HoopTorsion, 100.0, 0.0, 64); });
}

TEST(Locus, SubspaceViolation) {
  const MaterialParams params = oracle::table1();
  MaterialState st;
  st.eps_i[4] = 1e-4;
  expect_code(ErrorCode::SubspaceViolation, [&] { locus(params, st, Plane::AxialTorsion, 0.0, 0.0, 64); });
  MaterialState axial;
  axial.eps_i[0] = 2e-4;
  axial.eps_i[1] = axial.eps_i[2] = -1e-4;
  EXPECT_NO_THROW(locus(params, axial, Plane::AxialTorsion, 0.0, 0.0, 64));
  expect_code(ErrorCode::SubspaceViolation, [&] { locus(params, axial, Plane::HoopTorsion, 0.0, 0.0, 64); });
}

TEST_F(ProbeHardened, RaysMatchClosedForm) {
  for (const Prestrained* s : {axial_egg.get(), axial_shifted.get()}) {
    for (double f_level : {0.0, 0.5, 2.0}) {
      const YieldLocus rays = locus(s->params, s->state, Plane::AxialTorsion, 0.0, f_level, 360);
      const YieldLocus closed = closed_form_locus(s->params, s->state, f_level, 360);
      ASSERT_EQ(rays.points.size(), closed.points.size());
      double worst = 0.0;
      for (std::size_t j = 0; j < rays.points.size(); ++j) {
        worst = std::max(worst, std::hypot(rays.points[j].a - closed.points[j].a, rays.points[j].b - closed.points[j].b));
      }
      EXPECT_LT(worst, 1e-6) << "f_level " << f_level;
    }
  }
}

TEST_F(ProbeHardened, AxialPrestrainTranslatesAndSharpens) {
  const YieldLocus l = locus(axial_egg->params, axial_egg->state, Plane::AxialTorsion, 0.0, 0.0, 720);
  EXPECT_GT(l.center.a, 0.0);
  EXPECT_NEAR(l.center.b, 0.0, 1e-9);
  EXPECT_NEAR(l.axis.x, 1.0, 1e-12);
  const std::vector<geometry::Vec2> pts = open_polygon(l);
  const double front = curvature(pts, 0);
  const double back = curvature(pts, pts.size() / 2);
  const double side = curvature(pts, pts.size() / 4);
  EXPECT_GT(front, 0.0);
  EXPECT_GT(back, 0.0);
  EXPECT_GT(front, 10.0 * back);
  EXPECT_GT(front, side);
  const LocusMetrics m = locus_metrics(l);
  EXPECT_GT(m.center_offset, 0.0);
  EXPECT_GT(m.area, kPi * 7.4 * 7.4);
}

TEST_F(ProbeHardened, SaturatedDistortionRatio) {
  const Prestrained& s = *axial_shifted;
  const DerivedQuantities d = compute_derived(s.params, s.state, {});
  ASSERT_GT(d.alpha, 0.9999);
  const LocusMetrics m = locus_metrics(locus(s.params, s.state, Plane::AxialTorsion, 0.0, 0.0, 360));
  EXPECT_NEAR(m.distortion_ratio(), 1.0 / s.params.shape.k_sat_pi(), 1e-4);
}

TEST_F(ProbeHardened, IsolinesLessDistorted) {
  const Prestrained& s = *axial_shifted;
  const double base = locus_metrics(locus(s.params, s.state, Plane::AxialTorsion, 0.0, 0.0, 360)).distortion_ratio();
  ASSERT_GT(base, 1.0);
  double previous = base;
  for (double f_level : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    const double r = locus_metrics(locus(s.params, s.state, Plane::AxialTorsion, 0.0, f_level, 360)).distortion_ratio();
    EXPECT_LT(std::abs(r - 1.0), std::abs(base - 1.0)) << f_level;
    EXPECT_LT(r, previous);
    previous = r;
  }
}

TEST_F(ProbeHardened, HoopLociSymmetricInAxialStress) {
  const Prestrained& s = *hoop_egg;
  for (double c : {5.0, 10.0, 15.0}) {
    const YieldLocus plus = locus(s.params, s.state, Plane::HoopTorsion, c, 0.0, 360);
    const YieldLocus minus = locus(s.params, s.state, Plane::HoopTorsion, -c, 0.0, 360);
    const LocusMetrics mp = locus_metrics(plus);
    const LocusMetrics mm = locus_metrics(minus);
    EXPECT_NEAR(mp.area, mm.area, 1e-6);
    EXPECT_NEAR(mp.forward_extent, mm.forward_extent, 1e-6);
    EXPECT_NEAR(mp.backward_extent, mm.backward_extent, 1e-6);
    EXPECT_GT(plus.center.a, minus.center.a);
    for (std::size_t j = 0; j < plus.points.size(); ++j) {
      EXPECT_NEAR(plus.points[j].a - minus.points[j].a, c, 1e-6);
      EXPECT_NEAR(plus.points[j].b, minus.points[j].b, 1e-6);
    }
  }
}

TEST_F(ProbeHardened, LociAreConvex) {
  for (const Prestrained* s : {axial_egg.get(), axial_shifted.get()}) {
    for (double f_level : {0.0, 1.0, 5.0}) {
      const std::vector<geometry::Vec2> pts =
          open_polygon(locus(s->params, s->state, Plane::AxialTorsion, 0.0, f_level, 720));
      EXPECT_GE(oracle::polygon_min_turn(pts), -1e-9);
    }
  }
  for (double c : {-15.0, 0.0, 15.0}) {
    const std::vector<geometry::Vec2> pts =
        open_polygon(locus(hoop_egg->params, hoop_egg->state, Plane::HoopTorsion, c, 0.0, 720));
    EXPECT_GE(oracle::polygon_min_turn(pts), -1e-9);
  }
}

TEST(Locus, ConvexForPartiallyHardenedStates) {
  MaterialParams params = oracle::table1();
  for (double strain : {0.001, 0.002, 0.004, 0.008}) {
    LoadingSegment seg;
    seg.duration = strain / 100.0;
    seg.controls[0] = {ControlKind::StrainRate, 100.0};
    const MaterialState st = run(params, {}, {seg}).final_state;
    for (double f_level : {0.0, 1.0}) {
      const YieldLocus l = locus(params, st, Plane::AxialTorsion, 0.0, f_level, 720);
      EXPECT_GE(oracle::polygon_min_turn(open_polygon(l)), -1e-9) << strain;
    }
  }
}

}  // namespace
