#include "dvp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dvp/error.hpp"
#include "dvp/geometry.hpp"
#include "dvp/io.hpp"

namespace dvp::verify {

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

SymTensor2 random_deviator(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  SymTensor2 t;
  for (;;) {
    for (std::size_t i = 0; i < SymTensor2::kSize; ++i) t[i] = g(rng);
    t = dev(t);
    const double n = norm(t);
    if (n > 1e-3) return (1.0 / n) * t;
  }
}

MaterialState random_hardening(const MaterialParams& p, std::mt19937_64& rng) {
  MaterialState st;
  st.eps_i = (0.02 * uniform(rng)) * random_deviator(rng);
  st.eps_ki = st.eps_i;
  st.eps_di = st.eps_i;
  if (p.c_k > 0.0 && p.kappa_k > 0.0) {
    const SymTensor2 X_k = (0.999 * uniform(rng) / p.kappa_k) * random_deviator(rng);
    st.eps_ki = st.eps_i - (1.0 / p.c_k) * X_k;
  }
  if (p.c_d > 0.0 && p.kappa_d > 0.0) {
    const SymTensor2 X_d = (0.999 * uniform(rng) / p.kappa_d) * random_deviator(rng);
    st.eps_di = st.eps_i - (1.0 / p.c_d) * X_d;
  }
  st.s_d = 0.05 * uniform(rng);
  st.s = st.s_d;
  if (p.gamma > 0.0) {
    const double r_max = p.beta > 0.0 ? p.gamma / p.beta : 10.0 * p.K0;
    st.s += uniform(rng) * r_max / p.gamma;
  }
  st.p = st.s;
  return st;
}

/// Small-scale tensor orthonormal basis: E11, E22, E33 and (ei ej + ej ei)/sqrt 2.
SymTensor2 basis(std::size_t a) {
  SymTensor2 b;
  b[a] = a < 3 ? 1.0 : 1.0 / std::sqrt(2.0);
  return b;
}

}  // namespace

PlasticSample random_plastic_state(const MaterialParams& params, std::mt19937_64& rng, ThetaRegime regime) {
  PlasticSample out;
  out.state = random_hardening(params, rng);
  const DerivedQuantities h = compute_derived(params, out.state, {});

  const double xd_norm = norm(h.X_d);
  const SymTensor2 axis = xd_norm > 0.0 ? (1.0 / xd_norm) * h.X_d : random_deviator(rng);
  SymTensor2 across = random_deviator(rng);
  across = across - contract(across, axis) * axis;
  across = (1.0 / norm(across)) * across;

  double theta = kPi * uniform(rng);
  const double small = std::pow(10.0, -10.0 + 7.0 * uniform(rng));
  if (regime == ThetaRegime::NearZero) theta = small;
  if (regime == ThetaRegime::NearPi) theta = kPi - small;
  const SymTensor2 dir = std::cos(theta) * axis + std::sin(theta) * across;

  const double size = std::sqrt(2.0 / 3.0) * (params.K0 + h.R);
  const double radius = geometry::k_bar(params.shape, theta, h.alpha) * (1.0 + std::pow(10.0, -3.0 + 3.0 * uniform(rng)));
  const SymTensor2 sigma_dev = h.X_k + h.X_d + (size * radius) * dir;
  const double pressure = 100.0 * (uniform(rng) - 0.5);

  out.eps = out.state.eps_i + (0.5 / params.mu) * sigma_dev;
  if (params.k > 0.0) out.eps += (pressure / (3.0 * params.k)) * SymTensor2::identity();
  return out;
}

PlasticSample random_elastic_state(const MaterialParams& params, std::mt19937_64& rng) {
  PlasticSample out;
  out.state = random_hardening(params, rng);
  const DerivedQuantities h = compute_derived(params, out.state, {});
  out.eps = out.state.eps_i + (0.5 / params.mu) * (h.X_k + h.X_d);
  return out;
}

SymTensor2 fd_stress_gradient(const MaterialParams& params, const DerivedQuantities& d, double h) {
  SymTensor2 g;
  for (std::size_t a = 0; a < SymTensor2::kSize; ++a) {
    const SymTensor2 b = basis(a);
    const double plus = overstress(params, d.X_k, d.X_d, d.R, d.sigma + h * b);
    const double minus = overstress(params, d.X_k, d.X_d, d.R, d.sigma - h * b);
    g += ((plus - minus) / (2.0 * h)) * b;
  }
  return g;
}

GradcheckReport gradcheck(MaterialParams params, std::size_t samples, std::uint64_t seed, double tol) {
  if (samples == 0) throw Error(ErrorCode::InvalidArgument, "gradcheck needs at least one sample");
  params.flow_rule = FlowRule::Normality;
  std::mt19937_64 rng(seed);
  GradcheckReport report;
  for (std::size_t j = 0; j < samples; ++j) {
    const ThetaRegime regime = j % 10 == 0 ? ThetaRegime::NearZero : j % 10 == 1 ? ThetaRegime::NearPi : ThetaRegime::Any;
    const PlasticSample sample = random_plastic_state(params, rng, regime);
    const DerivedQuantities d = compute_derived(params, sample.state, sample.eps);
    const SymTensor2 analytic = flow_direction(params, d);
    const SymTensor2 numeric = fd_stress_gradient(params, d);
    const double err = norm(numeric - analytic) / norm(analytic);
    report.max_norm_deviation = std::max(report.max_norm_deviation, std::abs(norm(analytic) - 1.0));
    report.max_trace = std::max(report.max_trace, std::abs(trace(analytic)));
    if (err > report.max_rel_error || j == 0) {
      report.max_rel_error = err;
      report.worst = sample;
      report.worst_theta = d.theta;
    }
    ++report.samples;
  }
  report.passed = report.max_rel_error < tol && report.max_norm_deviation < 1e-10;
  return report;
}

Program random_program(const MaterialParams& params, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const std::size_t segments = 2 + static_cast<std::size_t>(rng() % 3);
  const bool free_out_of_plane = uniform(rng) < 0.3;
  Program program;
  for (std::size_t k = 0; k < segments; ++k) {
    SymTensor2 dir;
    for (std::size_t i = 0; i < SymTensor2::kSize; ++i) dir[i] = g(rng);
    dir = dev(dir) + (0.1 * trace(dir) / 3.0) * SymTensor2::identity();
    dir = (1.0 / norm(dir)) * dir;

    const double increment = 0.5e-3 + 2.5e-3 * uniform(rng);
    const double f_target = std::exp(std::log(0.1) + uniform(rng) * std::log(20.0));
    const double rate = std::pow(f_target / params.k0_ref, params.m) / params.eta;

    LoadingSegment seg;
    seg.duration = increment / rate;
    for (std::size_t i = 0; i < SymTensor2::kSize; ++i) seg.controls[i] = {ControlKind::StrainRate, rate * dir[i]};
    if (free_out_of_plane) {
      for (std::size_t i : {2, 4, 5}) seg.controls[i] = {ControlKind::Stress, 0.0};
    }
    program.push_back(seg);
  }
  return program;
}

AuditReport thermo_audit(const MaterialParams& base, std::size_t programs, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  const geometry::ArcBoundary circle = geometry::unit_half_disc();
  constexpr double kExponents[] = {1.0, 1.0, 1.0, 1.5, 2.0};

  AuditReport report;
  report.programs = programs;
  report.worst_total = std::numeric_limits<double>::infinity();
  report.worst_term = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < programs; ++j) {
    MaterialParams params = base;
    params.flow_rule = uniform(rng) < 0.3 ? FlowRule::Radial : FlowRule::Normality;
    if (uniform(rng) < 0.25) params.shape = circle;
    params.m = kExponents[rng() % 5];

    PlasticSample start;
    if (uniform(rng) < 0.5) start = random_elastic_state(params, rng);
    const Program program = random_program(params, rng);

    RunOptions options;
    options.sample_every = static_cast<std::size_t>(-1);
    options.observer = [&](const StepObservation& obs) {
      const StateRates& r = obs.evaluation.rates;
      if (r.lambda_i == 0.0) return;
      ++report.plastic_steps;
      const double scale = params.K0 * r.lambda_i;
      const double total = r.delta_i.total / scale;
      double lowest = r.delta_i.terms[0] / scale;
      for (double term : r.delta_i.terms) lowest = std::min(lowest, term / scale);
      report.worst_total = std::min(report.worst_total, total);
      report.worst_term = std::min(report.worst_term, lowest);
      if (total < -tol || lowest < -tol) {
        if (report.violations == 0) {
          std::ostringstream msg;
          msg << "program " << j << " t=" << io::format_number(obs.t) << " delta/(K0 lambda)="
              << io::format_number(total) << " smallest term=" << io::format_number(lowest);
          report.first_violation = msg.str();
        }
        ++report.violations;
      }
    };
    try {
      const Trajectory traj = run(params, start.state, program, options, start.eps);
      report.steps += traj.steps;
    } catch (const Error& e) {
      if (report.violations == 0) report.first_violation = "program " + std::to_string(j) + ": " + e.what();
      ++report.violations;
    }
  }
  if (report.plastic_steps == 0) report.worst_total = report.worst_term = 0.0;
  report.passed = report.violations == 0;
  return report;
}

}  // namespace dvp::verify
