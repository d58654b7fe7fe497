#include "dvp/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "dvp/error.hpp"

namespace dvp::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<const char*, 6> kComponentNames = {"11", "22", "33", "12", "13", "23"};
constexpr std::array<const char*, 11> kParamKeys = {"k",   "mu",  "c_k",     "c_d",     "gamma", "K0",
                                                     "m",   "eta", "kappa_k", "kappa_d", "beta"};

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(what + ": " + e.what());
  }
}

double number_at(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_error(where + ": missing key \"" + key + "\"");
  if (!it->is_number()) parse_error(where + ": \"" + std::string(key) + "\" must be a number");
  return it->get<double>();
}

geometry::Vec2 vec2_at(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_array() || it->size() != 2 || !(*it)[0].is_number() || !(*it)[1].is_number()) {
    parse_error(where + ": \"" + std::string(key) + "\" must be a pair of numbers");
  }
  return {(*it)[0].get<double>(), (*it)[1].get<double>()};
}

SymTensor2 tensor_from(const json& value, const std::string& where) {
  if (!value.is_array() || value.size() != SymTensor2::kSize) parse_error(where + " must list six components");
  SymTensor2 t;
  for (std::size_t i = 0; i < SymTensor2::kSize; ++i) {
    if (!value[i].is_number()) parse_error(where + " must list six numbers");
    t[i] = value[i].get<double>();
  }
  return t;
}

json tensor_to(const SymTensor2& t) {
  json out = json::array();
  for (double v : t.components()) out.push_back(v);
  return out;
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) parse_error(where + ": unknown key \"" + key + "\"");
  }
}

fs::path resolve(const fs::path& base_file, const std::string& relative) {
  const fs::path p(relative);
  return p.is_absolute() ? p : base_file.parent_path() / p;
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_number(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot move output into place at " + path.string());
  }
}

std::vector<geometry::ArcSpec> parse_shape_specs(const std::string& text) {
  const json doc = parse_json(text, "shape file");
  if (!doc.is_object() || !doc.contains("arcs") || !doc["arcs"].is_array()) {
    parse_error("shape file: expected an object with an \"arcs\" list");
  }
  std::vector<geometry::ArcSpec> specs;
  for (std::size_t i = 0; i < doc["arcs"].size(); ++i) {
    const json& arc = doc["arcs"][i];
    const std::string where = "shape file, arc " + std::to_string(i + 1);
    if (!arc.is_object()) parse_error(where + ": expected an object");
    reject_unknown_keys(arc, {"center", "radius", "end"}, where);
    specs.push_back({vec2_at(arc, "center", where), number_at(arc, "radius", where), vec2_at(arc, "end", where)});
  }
  return specs;
}

geometry::ArcBoundary load_shape(const fs::path& path) {
  return geometry::build_arc_boundary(parse_shape_specs(read_file(path)));
}

MaterialParams load_material(const fs::path& path, std::ostream* notices,
                             const std::optional<fs::path>& shape_override) {
  const json doc = parse_json(read_file(path), "material file " + path.string());
  const std::string where = "material file";
  if (!doc.is_object()) parse_error(where + ": expected an object");
  std::set<std::string> allowed(kParamKeys.begin(), kParamKeys.end());
  allowed.insert({"shape_file", "flow_rule"});
  reject_unknown_keys(doc, allowed, where);

  MaterialParams p;
  p.k = number_at(doc, "k", where);
  p.mu = number_at(doc, "mu", where);
  p.c_k = number_at(doc, "c_k", where);
  p.c_d = number_at(doc, "c_d", where);
  p.gamma = number_at(doc, "gamma", where);
  p.K0 = number_at(doc, "K0", where);
  p.m = number_at(doc, "m", where);
  p.eta = number_at(doc, "eta", where);
  p.kappa_k = number_at(doc, "kappa_k", where);
  p.kappa_d = number_at(doc, "kappa_d", where);
  p.beta = number_at(doc, "beta", where);

  if (!doc.contains("flow_rule") || !doc["flow_rule"].is_string()) parse_error(where + ": missing \"flow_rule\"");
  const std::string rule = doc["flow_rule"].get<std::string>();
  if (rule == "normality") {
    p.flow_rule = FlowRule::Normality;
  } else if (rule == "radial") {
    p.flow_rule = FlowRule::Radial;
  } else {
    parse_error(where + ": flow_rule must be \"normality\" or \"radial\"");
  }

  if (shape_override) {
    p.shape = load_shape(*shape_override);
  } else {
    if (!doc.contains("shape_file") || !doc["shape_file"].is_string()) parse_error(where + ": missing \"shape_file\"");
    p.shape = load_shape(resolve(path, doc["shape_file"].get<std::string>()));
  }

  if (p.eta == 0.0) {
    p.eta = kEtaRegularized;
    if (notices) {
      *notices << "notice: eta = 0 replaced by the regularizing viscosity " << kEtaRegularized << " s\n";
    }
  }
  validate(p);
  return p;
}

std::string params_hash(const MaterialParams& p) {
  std::string canon;
  const std::array<std::pair<const char*, double>, 13> values = {{{"k", p.k},
                                                                   {"mu", p.mu},
                                                                   {"c_k", p.c_k},
                                                                   {"c_d", p.c_d},
                                                                   {"gamma", p.gamma},
                                                                   {"K0", p.K0},
                                                                   {"m", p.m},
                                                                   {"eta", p.eta},
                                                                   {"kappa_k", p.kappa_k},
                                                                   {"kappa_d", p.kappa_d},
                                                                   {"beta", p.beta},
                                                                   {"k0_ref", p.k0_ref},
                                                                   {"rho", p.rho}}};
  for (const auto& [key, value] : values) canon += std::string(key) + '=' + format_number(value) + ';';
  canon += p.flow_rule == FlowRule::Normality ? "flow=normality;" : "flow=radial;";
  for (const geometry::ArcSpec& a : p.shape.specs()) {
    canon += "arc=" + format_number(a.center.x) + ',' + format_number(a.center.y) + ',' + format_number(a.radius) +
             ',' + format_number(a.end.x) + ',' + format_number(a.end.y) + ';';
  }
  std::array<char, 17> hex{};
  const std::uint64_t h = fnv1a(canon);
  for (int i = 0; i < 16; ++i) hex[i] = "0123456789abcdef"[(h >> (60 - 4 * i)) & 0xF];
  return "fnv1a64:" + std::string(hex.data(), 16);
}

Program parse_program(const std::string& text) {
  const json doc = parse_json(text, "program file");
  if (!doc.is_array()) parse_error("program file: expected a list of segments");
  Program program;
  for (std::size_t k = 0; k < doc.size(); ++k) {
    const json& seg = doc[k];
    const std::string where = "program segment " + std::to_string(k + 1);
    if (!seg.is_object()) parse_error(where + ": expected an object");
    reject_unknown_keys(seg, {"duration", "controls"}, where);
    LoadingSegment s;
    s.duration = number_at(seg, "duration", where);
    if (!seg.contains("controls") || !seg["controls"].is_object()) parse_error(where + ": missing \"controls\"");
    for (const auto& [key, control] : seg["controls"].items()) {
      std::size_t slot = kComponentNames.size();
      for (std::size_t i = 0; i < kComponentNames.size(); ++i) {
        if (key == kComponentNames[i]) slot = i;
      }
      if (slot == kComponentNames.size()) parse_error(where + ": unknown component \"" + key + "\"");
      if (!control.is_object() || control.size() != 1) {
        parse_error(where + ", component " + key + ": expected {\"strain_rate\": v} or {\"stress\": v}");
      }
      if (control.contains("strain_rate")) {
        s.controls[slot] = {ControlKind::StrainRate, number_at(control, "strain_rate", where)};
      } else if (control.contains("stress")) {
        s.controls[slot] = {ControlKind::Stress, number_at(control, "stress", where)};
      } else {
        parse_error(where + ", component " + key + ": expected \"strain_rate\" or \"stress\"");
      }
    }
    program.push_back(s);
  }
  validate(program);
  return program;
}

Program load_program(const fs::path& path) { return parse_program(read_file(path)); }

std::string snapshot_to_json(const StateSnapshot& snap) {
  json doc;
  doc["format"] = "dvp-state";
  doc["version"] = 1;
  doc["params_hash"] = snap.params_hash;
  doc["t"] = snap.t;
  doc["eps"] = tensor_to(snap.eps);
  doc["state"] = {{"eps_i", tensor_to(snap.state.eps_i)},
                  {"eps_ki", tensor_to(snap.state.eps_ki)},
                  {"eps_di", tensor_to(snap.state.eps_di)},
                  {"s", snap.state.s},
                  {"s_d", snap.state.s_d},
                  {"p", snap.state.p}};
  return doc.dump(2) + "\n";
}

StateSnapshot parse_snapshot(const std::string& text) {
  const json doc = parse_json(text, "state snapshot");
  if (!doc.is_object() || doc.value("format", "") != "dvp-state") parse_error("not a state snapshot");
  StateSnapshot snap;
  if (!doc.contains("params_hash") || !doc["params_hash"].is_string()) parse_error("snapshot: missing params_hash");
  snap.params_hash = doc["params_hash"].get<std::string>();
  snap.t = number_at(doc, "t", "snapshot");
  if (!doc.contains("eps")) parse_error("snapshot: missing eps");
  snap.eps = tensor_from(doc["eps"], "snapshot eps");
  if (!doc.contains("state") || !doc["state"].is_object()) parse_error("snapshot: missing state");
  snap.state = parse_initial_state(doc["state"].dump());
  return snap;
}

MaterialState parse_initial_state(const std::string& text) {
  const json doc = parse_json(text, "state");
  if (!doc.is_object()) parse_error("state: expected an object");
  reject_unknown_keys(doc, {"eps_i", "eps_ki", "eps_di", "s", "s_d", "p"}, "state");
  MaterialState st;
  const std::array<std::pair<const char*, SymTensor2*>, 3> tensors = {
      {{"eps_i", &st.eps_i}, {"eps_ki", &st.eps_ki}, {"eps_di", &st.eps_di}}};
  for (const auto& [key, target] : tensors) {
    if (!doc.contains(key)) continue;
    *target = tensor_from(doc[key], std::string("state ") + key);
    if (std::abs(trace(*target)) > 1e-12 * std::max(1.0, norm(*target))) {
      throw Error(ErrorCode::InvalidArgument, std::string("state ") + key + " must be traceless");
    }
  }
  if (doc.contains("s")) st.s = number_at(doc, "s", "state");
  if (doc.contains("s_d")) st.s_d = number_at(doc, "s_d", "state");
  if (doc.contains("p")) st.p = number_at(doc, "p", "state");
  if (!(st.s >= st.s_d && st.s_d >= 0.0 && st.p >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "state requires s >= s_d >= 0 and p >= 0");
  }
  return st;
}

RunConfig load_run_config(const fs::path& path) {
  const json doc = parse_json(read_file(path), "run config " + path.string());
  const std::string where = "run config";
  if (!doc.is_object()) parse_error(where + ": expected an object");
  reject_unknown_keys(doc,
                      {"material", "shape", "program", "dt", "sample_every", "trajectory_out", "state_out", "seed",
                       "initial_state"},
                      where);
  const auto path_at = [&](const char* key) -> std::optional<fs::path> {
    if (!doc.contains(key)) return std::nullopt;
    if (!doc[key].is_string()) parse_error(where + ": \"" + std::string(key) + "\" must be a path");
    return resolve(path, doc[key].get<std::string>());
  };
  RunConfig cfg;
  const auto material = path_at("material");
  if (!material) parse_error(where + ": missing \"material\"");
  cfg.material = *material;
  cfg.shape = path_at("shape");
  const auto program = path_at("program");
  cfg.program = program.value_or(fs::path{});
  cfg.trajectory_out = path_at("trajectory_out");
  cfg.state_out = path_at("state_out");
  if (doc.contains("dt")) cfg.dt = number_at(doc, "dt", where);
  if (doc.contains("sample_every")) {
    if (!doc["sample_every"].is_number_unsigned()) parse_error(where + ": sample_every must be a positive integer");
    cfg.sample_every = doc["sample_every"].get<std::size_t>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) parse_error(where + ": seed must be a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  if (doc.contains("initial_state")) cfg.initial_state = parse_initial_state(doc["initial_state"].dump());
  if (cfg.dt < 0.0) throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  return cfg;
}

bool is_material_file(const fs::path& path) {
  const json doc = parse_json(read_file(path), path.string());
  return doc.is_object() && doc.contains("K0");
}

std::string trajectory_csv(const Trajectory& trajectory) {
  std::string out =
      "t,eps11,eps22,eps33,eps12,eps13,eps23,sig11,sig22,sig33,sig12,sig13,sig23,p,s,s_d,alpha,R,f,diss\n";
  for (const TrajectoryRow& r : trajectory.rows) {
    append_row(out, {r.t,        r.eps[0],   r.eps[1],   r.eps[2],   r.eps[3], r.eps[4], r.eps[5],
                     r.sigma[0], r.sigma[1], r.sigma[2], r.sigma[3], r.sigma[4], r.sigma[5], r.p,
                     r.s,        r.s_d,      r.alpha,    r.R,        r.f,      r.diss});
  }
  return out;
}

std::string locus_csv(const probe::YieldLocus& locus) {
  std::string out = "index,dir_angle_rad,a_MPa,b_MPa\n";
  for (std::size_t j = 0; j < locus.points.size(); ++j) {
    out += std::to_string(j) + ',';
    append_row(out, {locus.angles[j], locus.points[j].a, locus.points[j].b});
  }
  return out;
}

}  // namespace dvp::io
