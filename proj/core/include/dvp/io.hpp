#pragma once

// File formats: shapes, material parameters, loading programs, state
// snapshots (JSON) and trajectory / locus tables (CSV).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dvp/driver.hpp"
#include "dvp/geometry.hpp"
#include "dvp/material.hpp"
#include "dvp/probe.hpp"

namespace dvp::io {

/// Shortest round-trip-safe decimal form with 17 significant digits,
/// independent of the global locale.
std::string format_number(double value);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file and renames it over `path`, so that a
/// failed write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::vector<geometry::ArcSpec> parse_shape_specs(const std::string& text);
geometry::ArcBoundary load_shape(const std::filesystem::path& path);

/// Reads a material file. `shape_file` is resolved relative to the material
/// file unless `shape_override` is given. eta = 0 is replaced by
/// kEtaRegularized and reported on `notices`.
MaterialParams load_material(const std::filesystem::path& path, std::ostream* notices = nullptr,
                             const std::optional<std::filesystem::path>& shape_override = std::nullopt);

/// Stable fingerprint of every parameter that affects the response.
std::string params_hash(const MaterialParams& params);

Program parse_program(const std::string& text);
Program load_program(const std::filesystem::path& path);

struct StateSnapshot {
  MaterialState state;
  SymTensor2 eps;
  double t = 0.0;
  std::string params_hash;
};

std::string snapshot_to_json(const StateSnapshot& snapshot);
StateSnapshot parse_snapshot(const std::string& text);

/// Inline initial state: optional keys eps_i, eps_ki, eps_di (six components
/// each, traceless), s, s_d, p.
MaterialState parse_initial_state(const std::string& json_object);

struct RunConfig {
  std::filesystem::path material;
  std::optional<std::filesystem::path> shape;
  std::filesystem::path program;
  double dt = 0.0;
  std::size_t sample_every = 1;
  std::optional<std::filesystem::path> trajectory_out;
  std::optional<std::filesystem::path> state_out;
  std::uint64_t seed = 1;
  MaterialState initial_state;
};

/// Paths inside the config are resolved relative to the config file.
RunConfig load_run_config(const std::filesystem::path& path);

/// True if the JSON document at `path` looks like a material file rather
/// than a run config.
bool is_material_file(const std::filesystem::path& path);

std::string trajectory_csv(const Trajectory& trajectory);
std::string locus_csv(const probe::YieldLocus& locus);

}  // namespace dvp::io
