#include "dvp/material.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dvp/error.hpp"

namespace dvp {

namespace {

const double kSqrt2over3 = std::sqrt(2.0 / 3.0);

/// Below this sin(theta) the state sits on the symmetry axis of the shape and
/// the tangential part of the flow direction is dropped.
constexpr double kAxisSinTol = 1e-8;
constexpr double kAlphaCorruptTol = 1e-9;
constexpr double kAlphaRejectTol = 1e-6;
constexpr double kDissipationTol = 1e-10;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

SymTensor2 hardening_strain(const SymTensor2& eps_i, const SymTensor2& other) { return dev(eps_i - other); }

}  // namespace

void validate(const MaterialParams& p) {
  const double moduli[] = {p.k, p.mu, p.c_k, p.c_d, p.gamma, p.kappa_k, p.kappa_d, p.beta};
  for (double v : moduli) require(std::isfinite(v) && v >= 0.0, "moduli and saturation parameters must be >= 0");
  require(std::isfinite(p.K0) && p.K0 > 0.0, "K0 must be positive");
  require(std::isfinite(p.m) && p.m >= 1.0, "m must be >= 1");
  require(std::isfinite(p.eta) && p.eta > 0.0, "eta must be positive at runtime");
  require(std::isfinite(p.k0_ref) && p.k0_ref > 0.0, "k0_ref must be positive");
  require(std::isfinite(p.rho) && p.rho > 0.0, "rho must be positive");
}

SymTensor2 stress(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps) {
  const SymTensor2 eps_e = eps - state.eps_i;
  return params.k * trace(eps_e) * SymTensor2::identity() + 2.0 * params.mu * dev(eps_e);
}

DerivedQuantities compute_derived(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps) {
  DerivedQuantities d;
  d.sigma = stress(params, state, eps);
  d.X_k = params.c_k * hardening_strain(state.eps_i, state.eps_ki);
  d.X_d = params.c_d * hardening_strain(state.eps_i, state.eps_di);
  d.s_e = state.s - state.s_d;
  d.R = params.gamma * d.s_e;
  evaluate_overstress(params, d);
  return d;
}

void evaluate_overstress(const MaterialParams& params, DerivedQuantities& d) {
  d.sigma_eff_dev = dev(d.sigma) - d.X_k - d.X_d;
  const double xd_norm = norm(d.X_d);
  d.alpha = params.kappa_d * xd_norm;
  if (!(d.alpha <= 1.0 + kAlphaCorruptTol)) {
    throw Error(ErrorCode::StateCorrupt, "distortion parameter " + std::to_string(d.alpha) + " exceeds 1");
  }
  d.alpha = std::min(d.alpha, 1.0);

  const double scale = kSqrt2over3 * (params.K0 + d.R);
  const double se_norm = norm(d.sigma_eff_dev);
  if (xd_norm == 0.0 || se_norm == 0.0) {
    d.theta = 0.0;
    d.y2d = {se_norm / scale, 0.0};
  } else {
    const SymTensor2 axis = (1.0 / xd_norm) * d.X_d;
    const double along = contract(d.sigma_eff_dev, axis);
    const double across = norm(d.sigma_eff_dev - along * axis);
    d.theta = std::atan2(across, along);
    d.y2d = {along / scale, across / scale};
  }
  d.f = scale * geometry::overstress_nd(params.shape, d.alpha, d.y2d);
}

double overstress(const MaterialParams& params, const SymTensor2& X_k, const SymTensor2& X_d, double R,
                  const SymTensor2& sigma) {
  DerivedQuantities d;
  d.sigma = sigma;
  d.X_k = X_k;
  d.X_d = X_d;
  d.R = R;
  evaluate_overstress(params, d);
  return d.f;
}

SymTensor2 flow_direction(const MaterialParams& params, const DerivedQuantities& d) {
  const double se_norm = norm(d.sigma_eff_dev);
  if (!(se_norm > 0.0)) throw Error(ErrorCode::ZeroEffectiveStress, "flow direction needs a nonzero effective stress");
  const SymTensor2 radial = (1.0 / se_norm) * d.sigma_eff_dev;
  if (params.flow_rule == FlowRule::Radial) return radial;

  const double xd_norm = norm(d.X_d);
  const double sin_t = std::sin(d.theta);
  if (xd_norm == 0.0 || d.alpha == 0.0 || sin_t < kAxisSinTol) return radial;

  const geometry::Vec2 n = geometry::outward_normal(params.shape, d.alpha, d.y2d);
  const double cos_t = std::cos(d.theta);
  const SymTensor2 tangential = d.X_d - contract(d.X_d, radial) * radial;
  const SymTensor2 t_hat = (1.0 / norm(tangential)) * tangential;
  return (n.x * cos_t + n.y * sin_t) * radial + (n.x * sin_t - n.y * cos_t) * t_hat;
}

Dissipation dissipation_rate(const MaterialParams&, const DerivedQuantities& d, const StateRates& r) {
  Dissipation out;
  const SymTensor2 sigma_eff = d.sigma - d.X_k - d.X_d;
  out.terms[0] = contract(sigma_eff, r.d_eps_i) - d.R * r.d_s;
  out.terms[1] = contract(d.X_k, r.d_eps_ki);
  out.terms[2] = contract(d.X_d, r.d_eps_di);
  out.terms[3] = d.R * r.d_s_d;
  out.total = out.terms[0] + out.terms[1] + out.terms[2] + out.terms[3];
  return out;
}

StateRates compute_rates(const MaterialParams& params, const DerivedQuantities& d) {
  StateRates r;
  if (!(d.f > 0.0)) return r;
  const double ratio = d.f / params.k0_ref;
  r.lambda_i = (params.m == 1.0 ? ratio : std::pow(ratio, params.m)) / params.eta;
  r.d_eps_i = r.lambda_i * flow_direction(params, d);
  r.d_eps_ki = (r.lambda_i * params.kappa_k) * d.X_k;
  r.d_eps_di = (r.lambda_i * params.kappa_d) * d.X_d;
  r.d_s = contract(d.sigma_eff_dev, r.d_eps_i) / (params.K0 + d.R);
  r.d_s_d = params.beta * d.s_e * r.d_s;
  r.d_p = r.lambda_i;
  r.delta_i = dissipation_rate(params, d, r);
  return r;
}

StateRates compute_rates(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps) {
  return compute_rates(params, compute_derived(params, state, eps));
}

Evaluation evaluate(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps) {
  Evaluation ev;
  ev.derived = compute_derived(params, state, eps);
  ev.rates = compute_rates(params, ev.derived);
  return ev;
}

MaterialState apply_rates(const MaterialParams& params, const MaterialState& state, const StateRates& r, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  if (r.lambda_i == 0.0) return state;
  if (r.delta_i.total < -kDissipationTol * params.K0 * r.lambda_i) {
    throw Error(ErrorCode::StepRejected, "negative dissipation " + std::to_string(r.delta_i.total));
  }

  MaterialState next;
  next.eps_i = dev(state.eps_i + dt * r.d_eps_i);
  next.eps_ki = dev(state.eps_ki + dt * r.d_eps_ki);
  next.eps_di = dev(state.eps_di + dt * r.d_eps_di);
  next.s = state.s + dt * r.d_s;
  next.s_d = state.s_d + dt * r.d_s_d;
  next.p = state.p + dt * r.d_p;

  const SymTensor2 de = next.eps_i - next.eps_di;
  const double alpha = params.kappa_d * params.c_d * norm(de);
  if (alpha > 1.0 + kAlphaRejectTol) {
    throw Error(ErrorCode::StepRejected, "distortion parameter would reach " + std::to_string(alpha));
  }
  if (alpha > 1.0) next.eps_di = next.eps_i - (1.0 / alpha) * de;
  return next;
}

MaterialState step_explicit(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  return apply_rates(params, state, compute_rates(params, state, eps), dt);
}

MaterialState step_explicit(const MaterialParams& params, const MaterialState& state, const StrainHistory& eps_fn,
                            double t, double dt) {
  return step_explicit(params, state, eps_fn(t), dt);
}

double free_energy(const MaterialParams& params, const MaterialState& state, const SymTensor2& eps) {
  const SymTensor2 eps_e = eps - state.eps_i;
  const double tr = trace(eps_e);
  const SymTensor2 ek = hardening_strain(state.eps_i, state.eps_ki);
  const SymTensor2 ed = hardening_strain(state.eps_i, state.eps_di);
  const double se = state.s - state.s_d;
  return 0.5 * params.k * tr * tr + params.mu * contract(dev(eps_e), dev(eps_e)) +
         0.5 * params.c_k * contract(ek, ek) + 0.5 * params.c_d * contract(ed, ed) + 0.5 * params.gamma * se * se;
}

}  // namespace dvp
