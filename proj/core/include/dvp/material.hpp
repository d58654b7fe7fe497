#pragma once

// Constitutive model at a single material point: potential relations,
// overstress with a distorted yield surface, Perzyna flow, explicit time
// step and the free-energy / dissipation audit.

#include <array>
#include <functional>

#include "dvp/geometry.hpp"
#include "dvp/tensor.hpp"

namespace dvp {

enum class FlowRule { Normality, Radial };

/// Viscosity substituted for eta = 0 (rate-independent limit).
inline constexpr double kEtaRegularized = 1e-5;

struct MaterialParams {
  double k = 0.0;        // bulk modulus, MPa
  double mu = 0.0;       // shear modulus, MPa
  double c_k = 0.0;      // MPa
  double c_d = 0.0;      // MPa
  double gamma = 0.0;    // MPa
  double K0 = 0.0;       // initial yield stress, MPa
  double m = 1.0;        // Perzyna exponent
  double eta = 0.0;      // viscosity, s
  double kappa_k = 0.0;  // 1/MPa
  double kappa_d = 0.0;  // 1/MPa
  double beta = 0.0;
  double k0_ref = 1.0;   // MPa, normalizes the overstress in the Perzyna law
  double rho = 1.0;
  geometry::ArcBoundary shape = geometry::unit_half_disc();
  FlowRule flow_rule = FlowRule::Normality;
};

/// Throws InvalidArgument unless moduli are >= 0, K0 > 0, m >= 1, eta > 0.
void validate(const MaterialParams& params);

struct MaterialState {
  SymTensor2 eps_i;
  SymTensor2 eps_ki;
  SymTensor2 eps_di;
  double s = 0.0;
  double s_d = 0.0;
  double p = 0.0;
};

/// Stress-like quantities at (state, eps).
struct DerivedQuantities {
  SymTensor2 sigma;
  SymTensor2 X_k;
  SymTensor2 X_d;
  double R = 0.0;
  double s_e = 0.0;  // s - s_d
  SymTensor2 sigma_eff_dev;
  double theta = 0.0;
  double alpha = 0.0;
  double f = 0.0;
  geometry::Vec2 y2d;
};

struct Dissipation {
  /// sigma_eff : d_eps_i - R d_s, X_k : d_eps_ki, X_d : d_eps_di, R d_s_d.
  std::array<double, 4> terms{};
  double total = 0.0;
};

struct StateRates {
  SymTensor2 d_eps_i;
  SymTensor2 d_eps_ki;
  SymTensor2 d_eps_di;
  double d_s = 0.0;
  double d_s_d = 0.0;
  double d_p = 0.0;
  double lambda_i = 0.0;
  Dissipation delta_i;
};

struct Evaluation {
  DerivedQuantities derived;
  StateRates rates;
};

SymTensor2 stress(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps);

DerivedQuantities compute_derived(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps);

/// Completes `d` (sigma, X_k, X_d, R, s_e already set) with the effective stress,
/// angle, distortion parameter and overstress.
void evaluate_overstress(const MaterialParams& params, DerivedQuantities& d);

/// Overstress f for a stress tensor with the hardening variables held fixed.
double overstress(const MaterialParams& params, const SymTensor2& X_k, const SymTensor2& X_d, double R,
                  const SymTensor2& sigma);

/// Unit, traceless flow direction. Requires derived.f > 0.
SymTensor2 flow_direction(const MaterialParams& params, const DerivedQuantities& derived);

StateRates compute_rates(const MaterialParams& params, const DerivedQuantities& derived);
StateRates compute_rates(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps);
Evaluation evaluate(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps);

Dissipation dissipation_rate(const MaterialParams& params, const DerivedQuantities& derived, const StateRates& rates);

/// Forward Euler update with precomputed rates, then re-projection of the
/// inelastic strains onto the deviatoric subspace. Throws StepRejected when
/// the step would overshoot the distortion bound or the rates dissipate
/// negatively.
MaterialState apply_rates(const MaterialParams& params, const MaterialState& state, const StateRates& rates, double dt);

/// Forward Euler step with the strain held at eps. Throws StepRejected when
/// the step would overshoot the distortion bound or dissipate negatively.
MaterialState step_explicit(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps, double dt);

using StrainHistory = std::function<SymTensor2(double)>;
MaterialState step_explicit(const MaterialParams& params, const MaterialState& state, const StrainHistory& eps_fn,
                            double t, double dt);

/// Helmholtz free energy per unit volume, rho * psi.
double free_energy(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps);

}  // namespace dvp
