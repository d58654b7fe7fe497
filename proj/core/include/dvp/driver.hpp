#pragma once

// Loading programs for a single material point with mixed strain-rate /
// stress control per tensor component.

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "dvp/material.hpp"

namespace dvp {

enum class ControlKind { StrainRate, Stress };

struct ComponentControl {
  ControlKind kind = ControlKind::Stress;
  double value = 0.0;  // 1/s for StrainRate, MPa for Stress
};

/// Controls indexed like SymTensor2 (11, 22, 33, 12, 13, 23). Components not
/// mentioned in a program file are held at zero stress.
struct LoadingSegment {
  double duration = 0.0;
  std::array<ComponentControl, SymTensor2::kSize> controls{};
};

using Program = std::vector<LoadingSegment>;

/// Throws InvalidArgument for empty programs, non-positive durations or
/// segments without a strain-controlled component.
void validate(const Program& program);

struct TrajectoryRow {
  double t = 0.0;
  SymTensor2 eps;
  SymTensor2 sigma;
  SymTensor2 X_k;
  SymTensor2 X_d;
  double R = 0.0;
  double alpha = 0.0;
  double theta = 0.0;
  double f = 0.0;
  double p = 0.0;
  double s = 0.0;
  double s_d = 0.0;
  double diss = 0.0;
};

struct Trajectory {
  std::vector<TrajectoryRow> rows;
  MaterialState final_state;
  SymTensor2 final_eps;
  double final_time = 0.0;
  std::size_t steps = 0;           // accepted steps, substeps included
  std::size_t rejected_steps = 0;  // halvings
  double min_dissipation = 0.0;
};

/// Everything known about one accepted step, evaluated at its start.
struct StepObservation {
  double t = 0.0;
  double dt = 0.0;
  const SymTensor2& eps;
  const MaterialState& state;
  const Evaluation& evaluation;
};

struct RunOptions {
  double dt = 0.0;  // 0 selects default_time_step
  std::size_t sample_every = 1;
  int max_halvings = 20;
  std::function<void(const StepObservation&)> observer;
};

/// Step size resolving the viscous relaxation of the overstress and keeping
/// the inelastic increment per step below 1e-5.
double default_time_step(const MaterialParams& params, const Program& program);

/// Fills the stress-controlled components of eps so that the stress at
/// (state, eps) matches the targets. Throws SingularControl if the elastic
/// sub-problem cannot be solved.
SymTensor2 resolve_mixed_control(const MaterialParams& params, const MaterialState& state, SymTensor2 eps,
                                 const LoadingSegment& segment);

Trajectory run(const MaterialParams& params, const MaterialState& initial_state, const Program& program,
               const RunOptions& options = {}, const SymTensor2& initial_eps = {});

}  // namespace dvp
