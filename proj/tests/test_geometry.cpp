#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dvp/error.hpp"
#include "dvp/geometry.hpp"
#include "support/oracles.hpp"

using namespace dvp;
using namespace dvp::geometry;
using dvp::testing::load_fixture;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode build_error(const std::vector<ArcSpec>& specs) {
  try {
    build_arc_boundary(specs);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "shape was accepted";
  return ErrorCode::InvalidArgument;
}

Vec2 random_exterior(const ArcBoundary& shape, double alpha, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double theta = kPi * u(rng);
  const double r = k_bar(shape, theta, alpha) + 0.05 + 2.0 * u(rng);
  return polar(r, theta);
}

}  // namespace

TEST(ArcBoundaryBuild, UnitHalfDisc) {
  const ArcBoundary disc = unit_half_disc();
  EXPECT_EQ(disc.size(), 1u);
  EXPECT_DOUBLE_EQ(disc.k_sat_pi(), 1.0);
}

TEST(ArcBoundaryBuild, RadiusOffCircleIsSmoothnessViolation) {
  EXPECT_EQ(build_error({{{0.0, 0.0}, 1.1, {-1.0, 0.0}}}), ErrorCode::SmoothnessViolation);
}

TEST(ArcBoundaryBuild, EndOffAxisIsNormalizationViolation) {
  EXPECT_EQ(build_error({{{0.0, 0.0}, 1.0, {0.0, 1.0}}}), ErrorCode::NormalizationViolation);
}

TEST(ArcBoundaryBuild, TangentJumpIsSmoothnessViolation) {
  const double s = std::sqrt(0.5);
  const Vec2 c{0.2, 0.0};
  const double r = norm(Vec2{s, s} - c);
  const std::vector<ArcSpec> kinked = {{{0.0, 0.0}, 1.0, {s, s}}, {c, r, {c.x - r, 0.0}}};
  EXPECT_EQ(build_error(kinked), ErrorCode::SmoothnessViolation);
}

TEST(ArcBoundaryBuild, BrokenEggFixtureRejected) {
  try {
    load_fixture("egg_broken.json");
    ADD_FAILURE() << "broken fixture was accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SmoothnessViolation);
  }
}

TEST(ArcBoundaryBuild, ClockwiseArcIsConvexityViolation) {
  // Normal angles 0 -> 2.0 -> 1.5 -> pi: the middle arc turns backwards.
  const std::vector<double> psi = {0.0, 2.0, 1.5, kPi};
  std::vector<double> r = {1.0, 1.0, 0.0};
  r[2] = (r[0] * (std::sin(psi[1]) - std::sin(psi[0])) + r[1] * (std::sin(psi[2]) - std::sin(psi[1]))) /
         (std::sin(psi[2]) - std::sin(psi[3]));
  std::vector<ArcSpec> specs;
  Vec2 start{1.0, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    const Vec2 c = start - r[i] * polar(1.0, psi[i]);
    Vec2 end = c + r[i] * polar(1.0, psi[i + 1]);
    if (i == 2) end.y = 0.0;
    specs.push_back({c, r[i], end});
    start = end;
  }
  EXPECT_EQ(build_error(specs), ErrorCode::ConvexityViolation);
}

TEST(ArcBoundaryBuild, CheckReportListsStages) {
  const std::vector<ArcSpec> specs = {{{0.0, 0.0}, 1.1, {-1.0, 0.0}}};
  const auto report = check_arc_specs(specs);
  ASSERT_FALSE(report.empty());
  EXPECT_EQ(report.front().status, ShapeCheck::Status::Pass);
  bool failed = false;
  for (const auto& c : report) {
    if (c.status == ShapeCheck::Status::Fail) {
      failed = true;
      EXPECT_EQ(c.code, ErrorCode::SmoothnessViolation);
    } else if (failed) {
      EXPECT_EQ(c.status, ShapeCheck::Status::Skipped);
    }
  }
  EXPECT_TRUE(failed);
}

TEST(ArcBoundaryBuild, EggFixtures) {
  const ArcBoundary egg = load_fixture("egg.json");
  EXPECT_EQ(egg.size(), 4u);
  EXPECT_NEAR(egg.k_sat_pi(), 1.0, 1e-12);
  const ArcBoundary shifted = load_fixture("egg_shifted.json");
  EXPECT_NEAR(shifted.k_sat_pi(), 0.9 / 1.1, 1e-12);
}

TEST(RadiusAt, Examples) {
  const ArcBoundary disc = unit_half_disc();
  for (double t : {0.0, 0.3, 1.7, kPi}) EXPECT_NEAR(radius_at(disc, t), 1.0, 1e-15);
  const ArcBoundary egg = load_fixture("egg.json");
  EXPECT_NEAR(radius_at(egg, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(radius_at(egg, kPi / 2), dvp::testing::dense_radius(egg, kPi / 2), 1e-8);
  EXPECT_THROW(radius_at(egg, -0.1), Error);
  EXPECT_THROW(radius_at(egg, 3.5), Error);
}

TEST(RadiusAt, MatchesDenseSamplingOnRandomShapes) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int s = 0; s < 10; ++s) {
    const ArcBoundary shape = dvp::testing::random_shape(rng);
    for (int k = 0; k < 5; ++k) {
      const double t = u(rng);
      EXPECT_NEAR(radius_at(shape, t), dvp::testing::dense_radius(shape, t, 50000), 1e-7);
    }
  }
}

TEST(DistanceToScaled, Examples) {
  const ArcBoundary disc = unit_half_disc();
  EXPECT_NEAR(distance_to_scaled(disc, 1.0, {2.0, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(distance_to_scaled(disc, 0.5, {2.0, 0.0}), 1.5, 1e-15);
  EXPECT_NEAR(distance_to_scaled(disc, 0.0, {0.6, 0.8}), 1.0, 1e-15);
  EXPECT_EQ(distance_to_scaled(disc, 1.0, {0.3, 0.3}), 0.0);
  EXPECT_THROW(distance_to_scaled(disc, 1.5, {1.0, 0.0}), Error);
  EXPECT_THROW(distance_to_scaled(disc, 0.5, {1.0, -0.5}), Error);
}

TEST(DistanceToScaled, EggMatchesBruteForce) {
  const ArcBoundary egg = load_fixture("egg.json");
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const Vec2 y = random_exterior(egg, 0.7, rng);
    EXPECT_NEAR(distance_to_scaled(egg, 0.7, y), brute_force_distance(egg, 0.7, y, 100000), 1e-6);
  }
}

TEST(DistanceToScaled, NoArcFoundNeverRaisedOnRandomShapes) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 40; ++s) {
    const ArcBoundary shape = dvp::testing::random_shape(rng);
    for (int k = 0; k < 200; ++k) {
      const double alpha = u(rng);
      const Vec2 y = polar(4.0 * shape.max_extent() * u(rng), kPi * u(rng));
      EXPECT_NO_THROW(distance_to_scaled(shape, alpha, y));
    }
  }
}

TEST(BruteForce, Examples) {
  const ArcBoundary disc = unit_half_disc();
  EXPECT_NEAR(brute_force_distance(disc, 1.0, {2.0, 0.0}, 100000), 1.0, 1e-4);
  const ArcBoundary egg = load_fixture("egg.json");
  EXPECT_EQ(brute_force_distance(egg, 1.0, {0.1, 0.2}, 100000), 0.0);
}

TEST(OutwardNormal, Examples) {
  const ArcBoundary disc = unit_half_disc();
  const Vec2 a = outward_normal(disc, 1.0, {2.0, 0.0});
  EXPECT_NEAR(a.x, 1.0, 1e-15);
  EXPECT_NEAR(a.y, 0.0, 1e-15);
  const Vec2 b = outward_normal(disc, 0.5, {0.0, 2.0});
  EXPECT_NEAR(b.x, 0.0, 1e-15);
  EXPECT_NEAR(b.y, 1.0, 1e-15);
  try {
    outward_normal(disc, 1.0, {0.2, 0.2});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InsideSet);
  }
}

TEST(OutwardNormal, EggMatchesFiniteDifferences) {
  const ArcBoundary egg = load_fixture("egg.json");
  std::mt19937_64 rng(8);
  const double h = 1e-6;
  for (int k = 0; k < 100; ++k) {
    Vec2 y = random_exterior(egg, 0.7, rng);
    y.y = std::max(y.y, 2 * h);
    const Vec2 n = outward_normal(egg, 0.7, y);
    const double gx = (distance_to_scaled(egg, 0.7, {y.x + h, y.y}) - distance_to_scaled(egg, 0.7, {y.x - h, y.y})) / (2 * h);
    const double gy = (distance_to_scaled(egg, 0.7, {y.x, y.y + h}) - distance_to_scaled(egg, 0.7, {y.x, y.y - h})) / (2 * h);
    EXPECT_NEAR(n.x, gx, 1e-5);
    EXPECT_NEAR(n.y, gy, 1e-5);
    EXPECT_NEAR(norm(n), 1.0, 1e-14);
  }
}

TEST(OverstressNd, Examples) {
  const ArcBoundary disc = unit_half_disc();
  EXPECT_EQ(overstress_nd(disc, 0.0, {0.5, 0.0}), 0.0);
  EXPECT_NEAR(overstress_nd(disc, 0.0, {2.0, 0.0}), 1.0, 1e-15);
  const ArcBoundary egg = load_fixture("egg.json");
  for (const Vec2& p : sample_upper_boundary(egg, 50)) {
    EXPECT_NEAR(overstress_nd(egg, 1.0, {p.x, std::max(p.y, 0.0)}), 0.0, 1e-12);
  }
}

TEST(KBar, Examples) {
  const ArcBoundary egg = load_fixture("egg.json");
  for (double alpha : {0.0, 0.3, 0.9, 1.0}) EXPECT_NEAR(k_bar(egg, 0.0, alpha), 1.0, 1e-9);
  for (double theta : {0.0, 1.0, 2.0, kPi}) EXPECT_NEAR(k_bar(egg, theta, 0.0), 1.0, 1e-12);
  EXPECT_NEAR(k_bar(egg, kPi, 1.0), egg.k_sat_pi(), 1e-12);
}

TEST(KBar, BoundaryInterpolation) {
  const ArcBoundary egg = load_fixture("egg_shifted.json");
  for (int j = 0; j <= 20; ++j) {
    const double theta = kPi * j / 20.0;
    EXPECT_NEAR(k_bar(egg, theta, 1.0), radius_at(egg, theta), 1e-9);
    EXPECT_NEAR(k_bar(egg, theta, 0.0), 1.0, 1e-12);
  }
}

TEST(GeometryProperties, UnitGradientAndLipschitz) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < 20; ++s) {
    const ArcBoundary shape = dvp::testing::random_shape(rng);
    for (int k = 0; k < 50; ++k) {
      const double alpha = u(rng);
      const Vec2 y1 = polar(3.0 * shape.max_extent() * u(rng), kPi * u(rng));
      const Vec2 y2 = polar(3.0 * shape.max_extent() * u(rng), kPi * u(rng));
      EXPECT_LE(std::abs(overstress_nd(shape, alpha, y1) - overstress_nd(shape, alpha, y2)),
                norm(y1 - y2) + 1e-12);
      if (distance_to_scaled(shape, alpha, y1) > 0.0) EXPECT_NEAR(norm(outward_normal(shape, alpha, y1)), 1.0, 1e-12);
    }
  }
}

TEST(GeometryProperties, MonotoneConsistency) {
  const ArcBoundary egg = load_fixture("egg.json");
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double alpha = u(rng);
    const double theta = kPi * u(rng);
    const double kb = k_bar(egg, theta, alpha);
    EXPECT_EQ(overstress_nd(egg, alpha, polar(kb * (1.0 - 1e-6), theta)), 0.0);
    EXPECT_GT(overstress_nd(egg, alpha, polar(kb * (1.0 + 1e-6), theta)), 0.0);
  }
}

TEST(GeometryProperties, ConvexSublevelSets) {
  // Midpoints of boundary points of a level set stay inside it.
  for (const char* name : {"egg.json", "egg_shifted.json"}) {
    const ArcBoundary shape = load_fixture(name);
    for (int a = 0; a <= 10; ++a) {
      const double alpha = a / 10.0;
      for (double level : {0.0, 0.05, 0.5}) {
        std::vector<Vec2> pts;
        for (int j = 0; j <= 24; ++j) {
          const double theta = kPi * j / 24.0;
          pts.push_back(polar(level_radius(shape, theta, alpha, level), theta));
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
          for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Vec2 mid = 0.5 * (pts[i] + pts[j]);
            EXPECT_LE(overstress_nd(shape, alpha, mid), level + 1e-9) << name << " alpha " << alpha;
          }
        }
      }
    }
  }
}

TEST(GeometryProperties, InterpolatedSetsConvexWhereLinearRuleFails) {
  const ArcBoundary egg = load_fixture("egg.json");
  double worst_linear = 0.0;
  for (int a = 0; a <= 20; ++a) {
    const double alpha = a / 20.0;
    const auto pts = sample_interpolated_boundary(egg, alpha, kConvexitySamples);
    EXPECT_GE(min_turn(pts), -1e-10) << "alpha " << alpha;
    worst_linear = std::min(worst_linear, dvp::testing::polygon_min_turn(
                                              dvp::testing::linear_interpolation_boundary(egg, alpha, kConvexitySamples)));
  }
  EXPECT_LT(worst_linear, -1e-8);
}
