#pragma once

// Randomized self-checks shipped with the library: finite-difference check of
// the flow direction and the dissipation audit over random loading programs.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "dvp/driver.hpp"
#include "dvp/material.hpp"

namespace dvp::verify {

enum class ThetaRegime { Any, NearZero, NearPi };

struct PlasticSample {
  MaterialState state;
  SymTensor2 eps;
};

/// Random hardened state (bounded backstresses, 0 <= alpha < 1) and a strain
/// placing the stress strictly outside the yield surface at the requested
/// angle to X_d. NearZero / NearPi put theta within 1e-3 of the axis.
PlasticSample random_plastic_state(const MaterialParams& params, std::mt19937_64& rng,
                                   ThetaRegime regime = ThetaRegime::Any);

/// Random hardened state together with a strain at the center of its
/// elastic domain (f = 0).
PlasticSample random_elastic_state(const MaterialParams& params, std::mt19937_64& rng);

/// Central differences of the overstress with respect to sigma in an
/// orthonormal basis of symmetric tensors, hardening variables frozen.
SymTensor2 fd_stress_gradient(const MaterialParams& params, const DerivedQuantities& derived, double h = 1e-6);

struct GradcheckReport {
  std::size_t samples = 0;
  double max_rel_error = 0.0;
  double max_norm_deviation = 0.0;  // | |G| - 1 |
  double max_trace = 0.0;
  PlasticSample worst;
  double worst_theta = 0.0;
  bool passed = false;
};

/// Normality flow direction against finite differences over `samples`
/// random plastic states; one in ten is near theta = 0 and one in ten near
/// theta = pi.
GradcheckReport gradcheck(MaterialParams params, std::size_t samples, std::uint64_t seed, double tol);

/// Non-proportional random loading: 2-4 segments, strain increments of
/// 0.5e-3 to 3e-3 per segment, rates chosen for overstresses of 0.1 to
/// 2 MPa.
Program random_program(const MaterialParams& params, std::mt19937_64& rng);

struct AuditReport {
  std::size_t programs = 0;
  std::size_t steps = 0;
  std::size_t plastic_steps = 0;
  std::size_t violations = 0;
  /// Smallest delta_i / (K0 lambda_i) and smallest scaled term over plastic
  /// steps; 0 when no step was plastic.
  double worst_total = 0.0;
  double worst_term = 0.0;
  std::string first_violation;
  bool passed = false;
};

/// Runs `programs` random programs; each step must satisfy
/// delta_i >= -tol K0 lambda_i with every term of the split above the same
/// bound. Flow rule, shape (base or circle) and exponent m vary per program.
AuditReport thermo_audit(const MaterialParams& base, std::size_t programs, std::uint64_t seed, double tol = 1e-12);

}  // namespace dvp::verify
