#include "dvp/driver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dvp/error.hpp"

namespace dvp {

namespace {

constexpr double kMaxIncrementPerStep = 1e-5;

/// Tensor-component elastic stiffness: sigma_i = sum_j S_ij eps_e_j.
std::array<std::array<double, 6>, 6> elastic_matrix(const MaterialParams& p) {
  std::array<std::array<double, 6>, 6> s{};
  const double lame = p.k - 2.0 * p.mu / 3.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) s[i][j] = lame + (i == j ? 2.0 * p.mu : 0.0);
  }
  for (std::size_t i = 3; i < 6; ++i) s[i][i] = 2.0 * p.mu;
  return s;
}

double strain_rate_norm(const LoadingSegment& segment) {
  double sum = 0.0;
  for (std::size_t i = 0; i < SymTensor2::kSize; ++i) {
    const ComponentControl& c = segment.controls[i];
    if (c.kind == ControlKind::StrainRate) sum += SymTensor2::weight(i) * c.value * c.value;
  }
  return std::sqrt(sum);
}

TrajectoryRow make_row(double t, const SymTensor2& eps, const MaterialState& state, const Evaluation& ev) {
  TrajectoryRow row;
  row.t = t;
  row.eps = eps;
  row.sigma = ev.derived.sigma;
  row.X_k = ev.derived.X_k;
  row.X_d = ev.derived.X_d;
  row.R = ev.derived.R;
  row.alpha = ev.derived.alpha;
  row.theta = ev.derived.theta;
  row.f = ev.derived.f;
  row.p = state.p;
  row.s = state.s;
  row.s_d = state.s_d;
  row.diss = ev.rates.delta_i.total;
  return row;
}

class Runner {
 public:
  Runner(const MaterialParams& params, const RunOptions& options, Trajectory& out)
      : params_(params), options_(options), out_(out) {}

  void advance(MaterialState& state, SymTensor2& eps, const LoadingSegment& segment, double t, double dt,
               int depth, bool sample) {
    const SymTensor2 full = resolve_mixed_control(params_, state, eps, segment);
    const Evaluation ev = evaluate(params_, state, full);
    MaterialState next;
    try {
      next = apply_rates(params_, state, ev.rates, dt);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::StepRejected || depth >= options_.max_halvings) throw;
      ++out_.rejected_steps;
      advance(state, eps, segment, t, 0.5 * dt, depth + 1, sample);
      advance(state, eps, segment, t + 0.5 * dt, 0.5 * dt, depth + 1, false);
      return;
    }
    if (options_.observer) options_.observer(StepObservation{t, dt, full, state, ev});
    if (sample) out_.rows.push_back(make_row(t, full, state, ev));
    out_.min_dissipation = std::min(out_.min_dissipation, ev.rates.delta_i.total);
    ++out_.steps;
    state = next;
    eps = full;
    for (std::size_t i = 0; i < SymTensor2::kSize; ++i) {
      if (segment.controls[i].kind == ControlKind::StrainRate) eps[i] += segment.controls[i].value * dt;
    }
  }

 private:
  const MaterialParams& params_;
  const RunOptions& options_;
  Trajectory& out_;
};

}  // namespace

void validate(const Program& program) {
  if (program.empty()) throw Error(ErrorCode::InvalidArgument, "loading program has no segments");
  for (std::size_t k = 0; k < program.size(); ++k) {
    const LoadingSegment& seg = program[k];
    const std::string where = "segment " + std::to_string(k + 1);
    if (!(std::isfinite(seg.duration) && seg.duration > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, where + ": duration must be positive");
    }
    bool strain_controlled = false;
    for (const ComponentControl& c : seg.controls) {
      if (!std::isfinite(c.value)) throw Error(ErrorCode::InvalidArgument, where + ": non-finite control value");
      strain_controlled = strain_controlled || c.kind == ControlKind::StrainRate;
    }
    if (!strain_controlled) {
      throw Error(ErrorCode::InvalidArgument, where + ": needs at least one strain-controlled component");
    }
  }
}

double default_time_step(const MaterialParams& params, const Program& program) {
  double rate = 0.0;
  double shortest = std::numeric_limits<double>::infinity();
  for (const LoadingSegment& seg : program) {
    rate = std::max(rate, strain_rate_norm(seg));
    shortest = std::min(shortest, seg.duration);
  }
  // Inelastic rate bound: under mixed control the inelastic strain rate
  // can exceed the imposed one (uniaxial stress: sqrt(3/2)).
  const double lambda_max = 1.5 * rate;
  const double k_eff = 2.0 * params.mu + params.c_k + params.c_d + params.gamma;
  const double f_ss = std::max(params.k0_ref * std::pow(params.eta * lambda_max, 1.0 / params.m), 1e-3 * params.k0_ref);
  double dt = params.eta * std::pow(params.k0_ref, params.m) /
              (params.m * std::pow(2.0 * f_ss, params.m - 1.0) * std::max(k_eff, 1e-300));
  if (lambda_max > 0.0) dt = std::min(dt, kMaxIncrementPerStep / lambda_max);
  return std::min(dt, shortest);
}

SymTensor2 resolve_mixed_control(const MaterialParams& params, const MaterialState& state, SymTensor2 eps,
                                 const LoadingSegment& segment) {
  std::array<std::size_t, 6> targeted{};
  std::size_t n = 0;
  for (std::size_t i = 0; i < SymTensor2::kSize; ++i) {
    if (segment.controls[i].kind == ControlKind::Stress) targeted[n++] = i;
  }
  if (n == 0) return eps;

  const auto s = elastic_matrix(params);
  double scale = 0.0;
  for (const auto& row : s) {
    for (double v : row) scale = std::max(scale, std::abs(v));
  }

  // Unknowns: elastic strain of the targeted components.
  std::array<std::array<double, 7>, 6> a{};
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = targeted[r];
    double rhs = segment.controls[i].value;
    for (std::size_t j = 0; j < SymTensor2::kSize; ++j) {
      if (segment.controls[j].kind == ControlKind::StrainRate) rhs -= s[i][j] * (eps[j] - state.eps_i[j]);
    }
    for (std::size_t c = 0; c < n; ++c) a[r][c] = s[i][targeted[c]];
    a[r][n] = rhs;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (!(std::abs(a[pivot][col]) > 1e-12 * scale)) {
      throw Error(ErrorCode::SingularControl, "stress-controlled components cannot be resolved elastically");
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  std::array<double, 6> x{};
  for (std::size_t r = n; r-- > 0;) {
    double v = a[r][n];
    for (std::size_t c = r + 1; c < n; ++c) v -= a[r][c] * x[c];
    x[r] = v / a[r][r];
  }
  for (std::size_t r = 0; r < n; ++r) eps[targeted[r]] = state.eps_i[targeted[r]] + x[r];
  return eps;
}

Trajectory run(const MaterialParams& params, const MaterialState& initial_state, const Program& program,
               const RunOptions& options, const SymTensor2& initial_eps) {
  validate(params);
  validate(program);
  const double dt = options.dt > 0.0 ? options.dt : default_time_step(params, program);
  if (!(std::isfinite(dt) && dt > 0.0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
  const std::size_t sample_every = std::max<std::size_t>(options.sample_every, 1);

  Trajectory out;
  Runner runner(params, options, out);
  MaterialState state = initial_state;
  SymTensor2 eps = initial_eps;
  double t0 = 0.0;
  std::size_t step_index = 0;
  for (const LoadingSegment& seg : program) {
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(seg.duration / dt - 1e-9)));
    const double h = seg.duration / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k, ++step_index) {
      runner.advance(state, eps, seg, t0 + static_cast<double>(k) * h, h, 0, step_index % sample_every == 0);
    }
    t0 += seg.duration;
  }

  const SymTensor2 final_eps = resolve_mixed_control(params, state, eps, program.back());
  const Evaluation ev = evaluate(params, state, final_eps);
  out.rows.push_back(make_row(t0, final_eps, state, ev));
  out.min_dissipation = std::min(out.min_dissipation, ev.rates.delta_i.total);
  out.final_state = state;
  out.final_eps = final_eps;
  out.final_time = t0;
  return out;
}

}  // namespace dvp
