#pragma once

// Independent reference implementations used as test oracles.

#include <cstddef>
#include <filesystem>
#include <random>
#include <vector>

#include "dvp/geometry.hpp"
#include "dvp/material.hpp"

namespace dvp::testing {

std::filesystem::path data_dir();
geometry::ArcBoundary load_fixture(const char* name);

/// Table 1 parameters with eta = 1e-5 s and the given shape fixture.
MaterialParams table1(const char* shape_fixture = "egg.json");

/// Random C1 convex arc shape with 2 to 5 arcs, normalized to K(0) = 1.
geometry::ArcBoundary random_shape(std::mt19937_64& rng);

/// Ray/boundary intersection against a polyline with `per_arc` points on
/// every arc, computed directly from the arc data.
double dense_radius(const geometry::ArcBoundary& shape, double theta, std::size_t per_arc = 200000);

/// Linear interpolation (1 - alpha) + alpha K^sat(theta), sampled at n
/// polar angles over the full turn.
std::vector<geometry::Vec2> linear_interpolation_boundary(const geometry::ArcBoundary& shape, double alpha,
                                                          std::size_t n);

/// Smallest cross product of consecutive edges of a closed polygon.
double polygon_min_turn(const std::vector<geometry::Vec2>& pts);

/// Central differences of f(sigma) with hardening frozen, in the orthonormal
/// basis E11, E22, E33, (ei ej + ej ei)/sqrt 2, step h in MPa.
SymTensor2 fd_gradient(const MaterialParams& params, const DerivedQuantities& d, double h);

/// Classical uniaxial Armstrong-Frederick + Voce model with the same Perzyna
/// overstress, integrated by forward Euler on a given step sequence.
struct ChabocheReference {
  double E, K0, c, kappa, gamma, beta, eta, m, k0_ref;
  double eps_p = 0.0, X = 0.0, R = 0.0;

  explicit ChabocheReference(const MaterialParams& p);
  double stress(double eps) const { return E * (eps - eps_p); }
  void step(double eps, double dt);
};

}  // namespace dvp::testing
