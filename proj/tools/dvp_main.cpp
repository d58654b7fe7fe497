// dvp: command-line front end for the distortional viscoplasticity library.
//
// Exit codes:
//   0  success
//   1  invalid input, failed validation or tolerance breach
//   2  locus ray found no crossing (RayEscapes)
//   3  simulation failure (rejected steps, corrupt state, singular control)

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dvp/driver.hpp"
#include "dvp/error.hpp"
#include "dvp/geometry.hpp"
#include "dvp/io.hpp"
#include "dvp/material.hpp"
#include "dvp/probe.hpp"
#include "dvp/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int exit_code_for(dvp::ErrorCode code) {
  switch (code) {
    case dvp::ErrorCode::RayEscapes:
      return 2;
    case dvp::ErrorCode::StepRejected:
    case dvp::ErrorCode::StateCorrupt:
    case dvp::ErrorCode::SingularControl:
    case dvp::ErrorCode::ConvergenceFailure:
    case dvp::ErrorCode::NoArcFound:
    case dvp::ErrorCode::InsideSet:
    case dvp::ErrorCode::ZeroEffectiveStress:
      return 3;
    default:
      return 1;
  }
}

const char* status_name(dvp::geometry::ShapeCheck::Status s) {
  switch (s) {
    case dvp::geometry::ShapeCheck::Status::Pass:
      return "pass";
    case dvp::geometry::ShapeCheck::Status::Fail:
      return "fail";
    default:
      return "skipped";
  }
}

void emit(const std::optional<fs::path>& out, const std::string& text) {
  if (out) {
    dvp::io::write_file_atomic(*out, text);
  } else {
    std::cout << text;
  }
}

struct Common {
  std::string config;
  std::string shape;
  std::string out;
  std::uint64_t seed = 1;
  double tol = 0.0;
};

std::optional<fs::path> opt_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return fs::path(s);
}

/// Material from either a material file or a run config.
dvp::MaterialParams material_from(const Common& c) {
  if (c.config.empty()) throw dvp::Error(dvp::ErrorCode::InvalidArgument, "--config is required");
  const fs::path path(c.config);
  if (dvp::io::is_material_file(path)) return dvp::io::load_material(path, &std::cerr, opt_path(c.shape));
  const dvp::io::RunConfig cfg = dvp::io::load_run_config(path);
  return dvp::io::load_material(cfg.material, &std::cerr, c.shape.empty() ? cfg.shape : opt_path(c.shape));
}

int cmd_validate(const Common& c) {
  if (c.shape.empty()) throw dvp::Error(dvp::ErrorCode::InvalidArgument, "--shape is required");
  json report;
  report["file"] = c.shape;
  report["checks"] = json::array();
  bool valid = false;
  try {
    const auto specs = dvp::io::parse_shape_specs(dvp::io::read_file(c.shape));
    dvp::geometry::ArcBoundary shape;
    const auto checks = dvp::geometry::check_arc_specs(specs, &shape);
    valid = true;
    report["violation"] = nullptr;
    for (const auto& check : checks) {
      json entry = {{"name", check.name}, {"status", status_name(check.status)}};
      if (check.status == dvp::geometry::ShapeCheck::Status::Fail) {
        entry["code"] = dvp::to_string(check.code);
        entry["detail"] = check.detail;
        report["violation"] = dvp::to_string(check.code);
        valid = false;
      }
      report["checks"].push_back(entry);
    }
    report["arcs"] = specs.size();
    if (valid) report["k_sat_pi"] = shape.k_sat_pi();
  } catch (const dvp::Error& e) {
    report["violation"] = dvp::to_string(e.code());
    report["detail"] = e.what();
  }
  report["valid"] = valid;
  emit(opt_path(c.out), report.dump(2) + "\n");
  if (!valid) std::cerr << "invalid shape: " << report["violation"].get<std::string>() << "\n";
  return valid ? 0 : 1;
}

int cmd_simulate(const Common& c, double dt_flag, const std::string& state_out) {
  if (c.config.empty()) throw dvp::Error(dvp::ErrorCode::InvalidArgument, "--config is required");
  const dvp::io::RunConfig cfg = dvp::io::load_run_config(c.config);
  const dvp::MaterialParams params =
      dvp::io::load_material(cfg.material, &std::cerr, c.shape.empty() ? cfg.shape : opt_path(c.shape));
  if (cfg.program.empty()) throw dvp::Error(dvp::ErrorCode::InvalidArgument, "run config has no program");
  const dvp::Program program = dvp::io::load_program(cfg.program);

  dvp::RunOptions options;
  options.dt = dt_flag > 0.0 ? dt_flag : cfg.dt;
  options.sample_every = cfg.sample_every;
  const dvp::Trajectory traj = dvp::run(params, cfg.initial_state, program, options);

  const auto traj_out = c.out.empty() ? cfg.trajectory_out : opt_path(c.out);
  const auto snap_out = state_out.empty() ? cfg.state_out : opt_path(state_out);
  if (traj_out) dvp::io::write_file_atomic(*traj_out, dvp::io::trajectory_csv(traj));
  if (snap_out) {
    dvp::io::StateSnapshot snap{traj.final_state, traj.final_eps, traj.final_time, dvp::io::params_hash(params)};
    dvp::io::write_file_atomic(*snap_out, dvp::io::snapshot_to_json(snap));
  }
  const dvp::TrajectoryRow& last = traj.rows.back();
  std::cout << "final alpha=" << dvp::io::format_number(last.alpha) << " R=" << dvp::io::format_number(last.R)
            << " |X_k|=" << dvp::io::format_number(dvp::norm(last.X_k))
            << " |X_d|=" << dvp::io::format_number(dvp::norm(last.X_d))
            << " p=" << dvp::io::format_number(last.p)
            << " min_diss=" << dvp::io::format_number(traj.min_dissipation) << " steps=" << traj.steps
            << " halvings=" << traj.rejected_steps << "\n";
  return 0;
}

int cmd_locus(const Common& c, const std::string& state_file, const std::string& plane_name, double fixed,
              double f_level, std::size_t points) {
  if (state_file.empty()) throw dvp::Error(dvp::ErrorCode::InvalidArgument, "--state is required");
  const dvp::MaterialParams params = material_from(c);
  const dvp::io::StateSnapshot snap = dvp::io::parse_snapshot(dvp::io::read_file(state_file));
  if (snap.params_hash != dvp::io::params_hash(params)) {
    throw dvp::Error(dvp::ErrorCode::InvalidArgument,
                     "state snapshot was produced with different material parameters (" + snap.params_hash + ")");
  }
  dvp::probe::Plane plane = dvp::probe::Plane::AxialTorsion;
  if (plane_name == "hoop") {
    plane = dvp::probe::Plane::HoopTorsion;
  } else if (plane_name != "axial") {
    throw dvp::Error(dvp::ErrorCode::InvalidArgument, "--plane must be axial or hoop");
  }
  const dvp::probe::YieldLocus locus = dvp::probe::locus(params, snap.state, plane, fixed, f_level, points);
  emit(opt_path(c.out), dvp::io::locus_csv(locus));
  const dvp::probe::LocusMetrics m = dvp::probe::locus_metrics(locus);
  std::cerr << "forward_extent=" << dvp::io::format_number(m.forward_extent)
            << " backward_extent=" << dvp::io::format_number(m.backward_extent)
            << " area=" << dvp::io::format_number(m.area)
            << " center_offset=" << dvp::io::format_number(m.center_offset) << "\n";
  return 0;
}

int cmd_gradcheck(const Common& c, std::size_t samples) {
  const dvp::MaterialParams params = material_from(c);
  const double tol = c.tol > 0.0 ? c.tol : 1e-5;
  const dvp::verify::GradcheckReport r = dvp::verify::gradcheck(params, samples, c.seed, tol);
  json report = {{"samples", r.samples},
                 {"tol", tol},
                 {"max_rel_error", r.max_rel_error},
                 {"max_norm_deviation", r.max_norm_deviation},
                 {"max_trace", r.max_trace},
                 {"passed", r.passed}};
  if (!r.passed) {
    const dvp::io::StateSnapshot worst{r.worst.state, r.worst.eps, 0.0, dvp::io::params_hash(params)};
    report["worst_theta"] = r.worst_theta;
    report["worst_state"] = json::parse(dvp::io::snapshot_to_json(worst));
  }
  emit(opt_path(c.out), report.dump(2) + "\n");
  return r.passed ? 0 : 1;
}

int cmd_thermo_audit(const Common& c, std::size_t programs) {
  const dvp::MaterialParams params = material_from(c);
  const double tol = c.tol > 0.0 ? c.tol : 1e-12;
  const dvp::verify::AuditReport r = dvp::verify::thermo_audit(params, programs, c.seed, tol);
  json report = {{"programs", r.programs},         {"steps", r.steps},
                 {"plastic_steps", r.plastic_steps}, {"violations", r.violations},
                 {"worst_scaled_total", r.worst_total}, {"worst_scaled_term", r.worst_term},
                 {"tol", tol},                        {"passed", r.passed}};
  if (!r.passed) report["first_violation"] = r.first_violation;
  emit(opt_path(c.out), report.dump(2) + "\n");
  return r.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Material-point simulator for viscoplasticity with distortional hardening"};
  app.require_subcommand(1);

  Common common;
  double dt = 0.0;
  std::string state;
  std::string plane = "axial";
  double fixed = 0.0;
  double f_level = 0.0;
  std::size_t points = 360;
  std::size_t samples = 1000;
  std::size_t programs = 100;

  auto* validate = app.add_subcommand("validate", "Validate a shape file and print a JSON report");
  validate->add_option("--shape", common.shape, "Shape JSON file")->required();
  validate->add_option("--out", common.out, "Write the report here instead of stdout");

  auto* simulate = app.add_subcommand("simulate", "Run a loading program");
  simulate->add_option("--config", common.config, "Run config JSON")->required();
  simulate->add_option("--shape", common.shape, "Override the material's shape file");
  simulate->add_option("--out", common.out, "Trajectory CSV (overrides trajectory_out)");
  simulate->add_option("--state", state, "Final state snapshot JSON (overrides state_out)");
  simulate->add_option("--dt", dt, "Time step in s (default: derived from the program)")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", common.seed, "Accepted for symmetry with the randomized commands");

  auto* locus = app.add_subcommand("locus", "Extract a yield locus or overstress isoline");
  locus->add_option("--config", common.config, "Material file or run config")->required();
  locus->add_option("--shape", common.shape, "Override the material's shape file");
  locus->add_option("--state", state, "State snapshot JSON")->required();
  locus->add_option("--plane", plane, "axial (sigma11, sqrt3 sigma12) or hoop (sigma22, sqrt3 sigma12)")
      ->check(CLI::IsMember({"axial", "hoop"}));
  locus->add_option("--fixed-stress", fixed, "Out-of-plane normal stress, MPa");
  locus->add_option("--f-level", f_level, "Overstress level, MPa")->check(CLI::NonNegativeNumber);
  locus->add_option("--points", points, "Number of rays")->check(CLI::Range(16, 1000000));
  locus->add_option("--out", common.out, "Locus CSV (default stdout)");

  auto* grad = app.add_subcommand("gradcheck", "Check the flow direction against finite differences");
  grad->add_option("--config", common.config, "Material file or run config")->required();
  grad->add_option("--shape", common.shape, "Override the material's shape file");
  grad->add_option("--samples", samples, "Random plastic states")->check(CLI::PositiveNumber);
  grad->add_option("--tol", common.tol, "Relative tolerance (default 1e-5)");
  grad->add_option("--seed", common.seed, "Random seed");
  grad->add_option("--out", common.out, "Report JSON (default stdout)");

  auto* audit = app.add_subcommand("thermo-audit", "Check dissipation over random loading programs");
  audit->add_option("--config", common.config, "Material file or run config")->required();
  audit->add_option("--shape", common.shape, "Override the material's shape file");
  audit->add_option("--programs", programs, "Number of random programs")->check(CLI::PositiveNumber);
  audit->add_option("--tol", common.tol, "Scaled tolerance (default 1e-12)");
  audit->add_option("--seed", common.seed, "Random seed");
  audit->add_option("--out", common.out, "Report JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*validate) return cmd_validate(common);
    if (*simulate) return cmd_simulate(common, dt, state);
    if (*locus) return cmd_locus(common, state, plane, fixed, f_level, points);
    if (*grad) return cmd_gradcheck(common, samples);
    if (*audit) return cmd_thermo_audit(common, programs);
  } catch (const dvp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
