// Scenario configuration, the built-in scenario library, and batch
// execution: build the model named by the config, integrate, and emit the
// trajectory CSV plus a structured summary.

#pragma once

#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swim/boundary.hpp"
#include "swim/cover.hpp"
#include "swim/engine.hpp"
#include "swim/highre.hpp"
#include "swim/io.hpp"
#include "swim/lowre.hpp"
#include "swim/shape_path.hpp"
#include "swim/synthetic.hpp"

namespace swim {

/// Configuration failure carrying every issue found, one per key path.
struct ConfigError : std::runtime_error {
  std::vector<std::string> issues;

  explicit ConfigError(std::vector<std::string> list)
      : std::runtime_error(join(list)), issues(std::move(list)) {}

  static std::string join(const std::vector<std::string>& list) {
    std::string msg = "invalid scenario configuration:";
    for (const auto& s : list) msg += "\n  - " + s;
    return msg;
  }
};

enum class ModelKind { LowRe, HighReFree, HighReObstacle, Synthetic };

inline const char* to_string(ModelKind m) {
  switch (m) {
    case ModelKind::LowRe: return "lowre";
    case ModelKind::HighReFree: return "highre-free";
    case ModelKind::HighReObstacle: return "highre-obstacle";
    case ModelKind::Synthetic: return "synthetic";
  }
  return "?";
}

struct ObstacleSpec {
  Vec2 center{-1.9, 0.0};
  double width{0.6};
  double height{4.0};
  int panel_count{28};

  [[nodiscard]] BodyBoundary build() const {
    return build_rectangle(center, width, height, panel_count);
  }
};

/// Named waveform templates with numeric parameters; no expression parser.
struct WaveformSpec {
  std::string kind{"cosine"};  // cosine | warped_cosine | damped | winding | csv
  double amplitude{pi / 3.0};
  double omega{1.0};
  double phase{0.0};
  double offset{0.0};
  double decay{0.15};
  double warp{0.0};
  double rate{1.0};
  double base{0.0};
  bool circle{false};
  std::string csv;

  [[nodiscard]] double period() const {
    if (kind == "cosine" || kind == "warped_cosine") return 2.0 * pi / omega;
    if (kind == "winding") return 2.0 * pi / std::abs(rate);
    return 0.0;
  }

  [[nodiscard]] ShapePath build(double horizon) const {
    if (kind == "cosine")
      return cosine_path(amplitude, omega, phase, offset, horizon);
    if (kind == "warped_cosine")
      return warped_cosine_path(amplitude, omega, warp, offset, horizon);
    if (kind == "damped")
      return damped_path(amplitude, omega, decay, offset, horizon);
    if (kind == "winding") return winding_path(rate, base, horizon);
    if (kind == "csv") {
      std::vector<double> t, s;
      read_ts_csv(csv, t, s);
      ShapePath p = spline_path(t, s, circle);
      p.horizon = std::min(p.horizon, horizon);  // never extrapolate the file
      return p;
    }
    throw std::invalid_argument("unknown waveform kind: " + kind);
  }

  /// Human-readable deviation waveform, e.g. "pi/3*cos(t)".
  [[nodiscard]] std::string describe() const {
    auto num = [](double v) {
      if (std::abs(v - pi / 3.0) < 1e-12) return std::string("pi/3");
      if (std::abs(v - pi / 2.0) < 1e-12) return std::string("pi/2");
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", v);
      return std::string(buf);
    };
    char buf[160];
    if (kind == "cosine") {
      if (std::abs(omega - 1.0) < 1e-12 && std::abs(phase) < 1e-12)
        return num(amplitude) + "*cos(t)";
      std::snprintf(buf, sizeof(buf), "%s*cos(%s*t%+g)", num(amplitude).c_str(),
                    num(omega).c_str(), phase);
      return buf;
    }
    if (kind == "warped_cosine") {
      std::snprintf(buf, sizeof(buf), "%s*cos(%s*t+%g*sin(%s*t))",
                    num(amplitude).c_str(), num(omega).c_str(), warp,
                    num(omega).c_str());
      return buf;
    }
    if (kind == "damped") {
      std::snprintf(buf, sizeof(buf), "%s*exp(-%g*t)*sin(%s*t)",
                    num(amplitude).c_str(), decay, num(omega).c_str());
      return buf;
    }
    if (kind == "winding") {
      std::snprintf(buf, sizeof(buf), "%g*t mod 2*pi", rate);
      return buf;
    }
    return "csv:" + csv;
  }
};

/// Validated scenario: model choice, geometry, shape program, integrator
/// settings and output paths.
struct Scenario {
  std::string name{"custom"};
  ModelKind model{ModelKind::LowRe};
  ScallopGeometry geometry;
  double c_t{1.0}, c_n{2.0}, mu{1.0};
  HighReParams fluid;
  int tabulate_nodes{0};  // 0: assemble per evaluation
  std::optional<ObstacleSpec> obstacle;
  SyntheticSpec synthetic;
  WaveformSpec waveform;
  double step{1e-3};
  double horizon{2.0 * pi};
  bool reparam_check{false};
  std::string trajectory_file{"trajectory.csv"};
  std::string summary_file{"summary.json"};
  std::string strengths_file;  // per-frame panel source densities, when set
  int strengths_stride{25};

  /// Shape box the fields accept; the stroke clamp about the rest opening.
  [[nodiscard]] ShapeDomain shape_domain() const {
    if (model == ModelKind::Synthetic)
      return ShapeDomain::scalar(-pi, pi, true);
    ShapeDomain d = ShapeDomain::scalar(geometry.alpha - pi / 3.0,
                                        geometry.alpha + pi / 3.0);
    if (obstacle) {
      // Keep contract probes well clear of the obstacle.
      d.pose_lo = Vec3(-0.1, -0.1, -0.2);
      d.pose_hi = Vec3(0.1, 0.3, 0.2);
    }
    return d;
  }
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

using nlohmann::json;

class ConfigReader {
 public:
  explicit ConfigReader(const json& root) : root_(root) {}

  void check_keys(const json& obj, const std::string& prefix,
                  std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      bool ok = false;
      for (const char* k : allowed)
        if (it.key() == k) ok = true;
      if (!ok) issues_.push_back(prefix + it.key() + ": unknown key");
    }
  }

  double number(const json& obj, const std::string& prefix, const char* key,
                double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) {
      issues_.push_back(prefix + key + ": expected a number");
      return fallback;
    }
    return obj[key].get<double>();
  }

  int integer(const json& obj, const std::string& prefix, const char* key,
              int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) {
      issues_.push_back(prefix + key + ": expected an integer");
      return fallback;
    }
    return obj[key].get<int>();
  }

  std::string text(const json& obj, const std::string& prefix, const char* key,
                   const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) {
      issues_.push_back(prefix + key + ": expected a string");
      return fallback;
    }
    return obj[key].get<std::string>();
  }

  bool boolean(const json& obj, const std::string& prefix, const char* key,
               bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_boolean()) {
      issues_.push_back(prefix + key + ": expected a boolean");
      return fallback;
    }
    return obj[key].get<bool>();
  }

  void require(bool cond, const std::string& message) {
    if (!cond) issues_.push_back(message);
  }

  void finish() const {
    if (!issues_.empty()) throw ConfigError(issues_);
  }

  std::vector<std::string>& issues() { return issues_; }
  const json& root() const { return root_; }

 private:
  const json& root_;
  std::vector<std::string> issues_;
};

}  // namespace detail

/// Parse and validate a scenario from structured key-value text (JSON).
/// Reports every problem found, each tagged with its key path.
inline Scenario parse_config(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError({std::string("not well-formed: ") + e.what()});
  }
  if (!root.is_object()) throw ConfigError({"top level must be an object"});

  detail::ConfigReader r(root);
  Scenario sc;

  r.check_keys(root, "",
               {"name", "model", "geometry", "drag", "fluid", "shape", "step",
                "horizon", "tabulate_nodes", "obstacle", "synthetic",
                "reparam_check", "output"});

  sc.name = r.text(root, "", "name", "custom");

  const std::string model = r.text(root, "", "model", "");
  if (model == "lowre") sc.model = ModelKind::LowRe;
  else if (model == "highre-free") sc.model = ModelKind::HighReFree;
  else if (model == "highre-obstacle") sc.model = ModelKind::HighReObstacle;
  else if (model == "synthetic") sc.model = ModelKind::Synthetic;
  else if (model.empty()) r.issues().push_back("model: missing required field");
  else r.issues().push_back("model: unknown model '" + model + "'");

  if (root.contains("geometry") && root["geometry"].is_object()) {
    const auto& g = root["geometry"];
    r.check_keys(g, "geometry.",
                 {"a", "b", "hinge_offset", "panel_count", "rest_opening"});
    sc.geometry.a = r.number(g, "geometry.", "a", sc.geometry.a);
    sc.geometry.b = r.number(g, "geometry.", "b", sc.geometry.b);
    sc.geometry.hinge_offset =
        r.number(g, "geometry.", "hinge_offset", sc.geometry.hinge_offset);
    sc.geometry.panel_count =
        r.integer(g, "geometry.", "panel_count", sc.geometry.panel_count);
    sc.geometry.alpha =
        r.number(g, "geometry.", "rest_opening", sc.geometry.alpha);
    r.require(sc.geometry.a > sc.geometry.b && sc.geometry.b > 0.0,
              "geometry: requires a > b > 0");
    r.require(sc.geometry.panel_count >= 8,
              "geometry.panel_count: out of range, must be >= 8");
    r.require(sc.geometry.alpha > 0.0 && sc.geometry.alpha < pi,
              "geometry.rest_opening: out of range, must lie in (0, pi)");
    r.require(sc.geometry.hinge_offset >=
                  sc.geometry.a * (1.0 + hinge_clearance_factor),
              "geometry.hinge_offset: out of range, no hinge clearance");
  } else {
    r.require(!root.contains("geometry"), "geometry: expected an object");
  }

  if (root.contains("drag") && root["drag"].is_object()) {
    const auto& d = root["drag"];
    r.check_keys(d, "drag.", {"c_t", "c_n", "mu"});
    sc.c_t = r.number(d, "drag.", "c_t", sc.c_t);
    sc.c_n = r.number(d, "drag.", "c_n", sc.c_n);
    sc.mu = r.number(d, "drag.", "mu", sc.mu);
    r.require(sc.c_t > 0.0 && sc.c_t <= sc.c_n,
              "drag: requires 0 < c_t <= c_n");
    r.require(sc.mu > 0.0, "drag.mu: out of range, must be > 0");
  } else {
    r.require(!root.contains("drag"), "drag: expected an object");
  }

  if (root.contains("fluid") && root["fluid"].is_object()) {
    const auto& f = root["fluid"];
    r.check_keys(f, "fluid.", {"rho_f", "rho_0"});
    sc.fluid.rho_f = r.number(f, "fluid.", "rho_f", sc.fluid.rho_f);
    sc.fluid.rho_0 = r.number(f, "fluid.", "rho_0", sc.fluid.rho_0);
    r.require(sc.fluid.rho_f >= 0.0, "fluid.rho_f: out of range, must be >= 0");
    r.require(sc.fluid.rho_0 >= 0.0, "fluid.rho_0: out of range, must be >= 0");
  } else {
    r.require(!root.contains("fluid"), "fluid: expected an object");
  }

  sc.waveform.offset = sc.geometry.alpha;  // deviations ride on the rest opening
  if (root.contains("shape") && root["shape"].is_object()) {
    const auto& s = root["shape"];
    r.check_keys(s, "shape.",
                 {"waveform", "amplitude", "omega", "phase", "offset", "decay",
                  "warp", "rate", "base", "circle", "csv"});
    sc.waveform.kind = r.text(s, "shape.", "waveform", sc.waveform.kind);
    sc.waveform.amplitude =
        r.number(s, "shape.", "amplitude", sc.waveform.amplitude);
    sc.waveform.omega = r.number(s, "shape.", "omega", sc.waveform.omega);
    sc.waveform.phase = r.number(s, "shape.", "phase", sc.waveform.phase);
    sc.waveform.offset = r.number(s, "shape.", "offset", sc.waveform.offset);
    sc.waveform.decay = r.number(s, "shape.", "decay", sc.waveform.decay);
    sc.waveform.warp = r.number(s, "shape.", "warp", sc.waveform.warp);
    sc.waveform.rate = r.number(s, "shape.", "rate", sc.waveform.rate);
    sc.waveform.base = r.number(s, "shape.", "base", sc.waveform.base);
    sc.waveform.circle = r.boolean(s, "shape.", "circle", sc.waveform.circle);
    sc.waveform.csv = r.text(s, "shape.", "csv", sc.waveform.csv);

    const bool known =
        sc.waveform.kind == "cosine" || sc.waveform.kind == "warped_cosine" ||
        sc.waveform.kind == "damped" || sc.waveform.kind == "winding" ||
        sc.waveform.kind == "csv";
    r.require(known, "shape.waveform: unknown template '" + sc.waveform.kind +
                         "'");
    if (sc.waveform.kind == "csv")
      r.require(std::filesystem::exists(sc.waveform.csv),
                "shape.csv: referenced file does not exist: " +
                    sc.waveform.csv);
    if (sc.waveform.kind == "warped_cosine")
      r.require(std::abs(sc.waveform.warp) < 1.0,
                "shape.warp: out of range, |warp| must be < 1");
    r.require(sc.waveform.omega > 0.0,
              "shape.omega: out of range, must be > 0");
  } else {
    r.require(!root.contains("shape"), "shape: expected an object");
  }

  sc.step = r.number(root, "", "step", sc.step);
  r.require(sc.step > 0.0, "step: out of range, must be > 0");
  sc.horizon = r.number(root, "", "horizon", sc.horizon);
  r.require(sc.horizon > 0.0, "horizon: out of range, must be > 0");

  sc.tabulate_nodes = r.integer(root, "", "tabulate_nodes", sc.tabulate_nodes);
  r.require(sc.tabulate_nodes == 0 || sc.tabulate_nodes >= 9,
            "tabulate_nodes: out of range, 0 or >= 9");

  if (root.contains("obstacle")) {
    if (!root["obstacle"].is_object()) {
      r.issues().push_back("obstacle: expected an object");
    } else {
      const auto& o = root["obstacle"];
      r.check_keys(o, "obstacle.", {"center", "width", "height", "panel_count"});
      ObstacleSpec spec;
      if (o.contains("center")) {
        if (o["center"].is_array() && o["center"].size() == 2 &&
            o["center"][0].is_number() && o["center"][1].is_number())
          spec.center = Vec2(o["center"][0].get<double>(),
                             o["center"][1].get<double>());
        else
          r.issues().push_back("obstacle.center: expected [x, y]");
      }
      spec.width = r.number(o, "obstacle.", "width", spec.width);
      spec.height = r.number(o, "obstacle.", "height", spec.height);
      spec.panel_count =
          r.integer(o, "obstacle.", "panel_count", spec.panel_count);
      r.require(spec.width > 0.0 && spec.height > 0.0,
                "obstacle: out of range, extents must be > 0");
      r.require(spec.panel_count >= 8,
                "obstacle.panel_count: out of range, must be >= 8");
      sc.obstacle = spec;
    }
  }

  if (root.contains("synthetic") && root["synthetic"].is_object()) {
    const auto& s = root["synthetic"];
    r.check_keys(s, "synthetic.", {"drift", "radial", "theta_gain"});
    sc.synthetic.drift = r.number(s, "synthetic.", "drift", sc.synthetic.drift);
    sc.synthetic.radial =
        r.number(s, "synthetic.", "radial", sc.synthetic.radial);
    sc.synthetic.theta_gain =
        r.number(s, "synthetic.", "theta_gain", sc.synthetic.theta_gain);
  } else {
    r.require(!root.contains("synthetic"), "synthetic: expected an object");
  }

  sc.reparam_check = r.boolean(root, "", "reparam_check", false);

  if (root.contains("output") && root["output"].is_object()) {
    const auto& o = root["output"];
    r.check_keys(o, "output.",
                 {"trajectory", "summary", "strengths", "strengths_stride"});
    sc.trajectory_file =
        r.text(o, "output.", "trajectory", sc.trajectory_file);
    sc.summary_file = r.text(o, "output.", "summary", sc.summary_file);
    sc.strengths_file = r.text(o, "output.", "strengths", sc.strengths_file);
    sc.strengths_stride =
        r.integer(o, "output.", "strengths_stride", sc.strengths_stride);
    r.require(sc.strengths_stride >= 1,
              "output.strengths_stride: out of range, must be >= 1");
    r.require(sc.strengths_file.empty() ||
                  sc.model == ModelKind::HighReFree ||
                  sc.model == ModelKind::HighReObstacle,
              "output.strengths: only the potential-flow models carry panel "
              "strengths");
  } else {
    r.require(!root.contains("output"), "output: expected an object");
  }

  // Model-specific requirements.
  r.require(!(sc.model == ModelKind::HighReObstacle && !sc.obstacle),
            "obstacle: missing required field for model highre-obstacle");
  r.require(!(sc.model == ModelKind::Synthetic && sc.obstacle),
            "obstacle: not applicable to model synthetic");
  r.require(!(sc.model == ModelKind::HighReFree && sc.obstacle),
            "obstacle: not applicable to model highre-free");
  if (sc.model == ModelKind::LowRe || sc.model == ModelKind::HighReFree ||
      sc.model == ModelKind::HighReObstacle) {
    if (sc.waveform.kind == "cosine" || sc.waveform.kind == "warped_cosine" ||
        sc.waveform.kind == "damped") {
      const double reach = std::abs(sc.waveform.offset - sc.geometry.alpha) +
                           std::abs(sc.waveform.amplitude);
      r.require(reach <= pi / 3.0 + 1e-9,
                "shape: out of range, stroke leaves the +/- pi/3 band about "
                "the rest opening");
    }
    r.require(sc.waveform.kind != "winding",
              "shape.waveform: winding requires the synthetic model");
  }

  r.finish();
  return sc;
}

// ---------------------------------------------------------------------------
// Built-in scenarios
// ---------------------------------------------------------------------------

inline const std::map<std::string, std::string>& builtin_scenarios() {
  static const std::map<std::string, std::string> lib = {
      {"scallop_free_lowre", R"({
  "name": "scallop_free_lowre",
  "model": "lowre",
  "geometry": {"a": 1.0, "b": 0.2, "hinge_offset": 1.5, "panel_count": 48, "rest_opening": 1.5707963267948966},
  "drag": {"c_t": 1.0, "c_n": 2.0, "mu": 1.0},
  "shape": {"waveform": "cosine", "amplitude": 1.0471975511965976, "omega": 1.0},
  "step": 0.001,
  "horizon": 12.566370614359172
})"},
      {"scallop_free_highre", R"({
  "name": "scallop_free_highre",
  "model": "highre-free",
  "geometry": {"a": 1.0, "b": 0.2, "hinge_offset": 1.5, "panel_count": 64, "rest_opening": 1.5707963267948966},
  "fluid": {"rho_f": 1.0, "rho_0": 1.0},
  "shape": {"waveform": "cosine", "amplitude": 1.0471975511965976, "omega": 1.0},
  "step": 0.001,
  "horizon": 6.283185307179586,
  "tabulate_nodes": 61
})"},
      {"scallop_obstacle", R"({
  "name": "scallop_obstacle",
  "model": "highre-obstacle",
  "geometry": {"a": 1.0, "b": 0.2, "hinge_offset": 1.5, "panel_count": 16, "rest_opening": 1.5707963267948966},
  "fluid": {"rho_f": 1.0, "rho_0": 1.0},
  "shape": {"waveform": "cosine", "amplitude": 1.0471975511965976, "omega": 1.0},
  "step": 0.005,
  "horizon": 50.26548245743669,
  "obstacle": {"center": [-1.9, 0.0], "width": 0.6, "height": 4.0, "panel_count": 28}
})"},
      {"damped_stroke", R"({
  "name": "damped_stroke",
  "model": "lowre",
  "geometry": {"a": 1.0, "b": 0.2, "hinge_offset": 1.5, "panel_count": 48, "rest_opening": 1.5707963267948966},
  "drag": {"c_t": 1.0, "c_n": 2.0, "mu": 1.0},
  "shape": {"waveform": "damped", "amplitude": 1.0, "omega": 1.0, "decay": 0.15},
  "step": 0.001,
  "horizon": 30.0
})"},
      {"winding_stroke", R"({
  "name": "winding_stroke",
  "model": "synthetic",
  "shape": {"waveform": "winding", "rate": 1.0, "base": 0.0, "circle": true},
  "synthetic": {"drift": 0.05, "radial": 0.02, "theta_gain": 0.3},
  "step": 0.001,
  "horizon": 62.83185307179586
})"},
      {"reparam_demo", R"({
  "name": "reparam_demo",
  "model": "lowre",
  "geometry": {"a": 1.0, "b": 0.2, "hinge_offset": 1.5, "panel_count": 48, "rest_opening": 1.5707963267948966},
  "drag": {"c_t": 1.0, "c_n": 2.0, "mu": 1.0},
  "shape": {"waveform": "warped_cosine", "amplitude": 1.0471975511965976, "omega": 1.0, "warp": 0.35},
  "step": 0.001,
  "horizon": 6.283185307179586,
  "reparam_check": true
})"}};
  return lib;
}

/// Resolve a CLI argument to scenario text: a built-in name or a file path.
inline std::string load_scenario_text(const std::string& name_or_path) {
  const auto& lib = builtin_scenarios();
  if (auto it = lib.find(name_or_path); it != lib.end()) return it->second;
  std::ifstream in(name_or_path);
  if (!in)
    throw std::runtime_error("no built-in scenario or readable file named '" +
                             name_or_path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

struct StrokeStat {
  int index{0};
  double dx{0.0}, dy{0.0}, dtheta{0.0};
  double mean_speed{0.0};
};

struct RunResult {
  Trajectory trajectory;
  bool second_order{false};
  bool collided{false};
  double collision_time{0.0};
  std::vector<StrokeStat> strokes;
  std::optional<VerdictReport> cover;
  double reparam_sup{-1.0};
  int exit_status{0};
  std::string trajectory_path, summary_path, strengths_path;
};

namespace detail {

inline Field build_field(const Scenario& sc) {
  const ShapeDomain dom = sc.shape_domain();
  switch (sc.model) {
    case ModelKind::LowRe: {
      const RftModel model =
          make_scallop_rft(sc.geometry, sc.c_t, sc.c_n, sc.mu);
      if (sc.obstacle)
        return lowre_field_with_obstacle(model, sc.obstacle->build(), dom);
      return lowre_field(model, dom);
    }
    case ModelKind::HighReFree:
      if (sc.tabulate_nodes > 0)
        return highre_free_field_tabulated(sc.geometry, sc.fluid, dom,
                                           sc.tabulate_nodes);
      return highre_free_field(sc.geometry, sc.fluid, dom);
    case ModelKind::Synthetic:
      return synthetic_holonomy_field(sc.synthetic);
    default:
      throw std::logic_error("build_field: model is second order");
  }
}

inline std::vector<StrokeStat> stroke_stats(const Trajectory& traj,
                                            double period) {
  std::vector<StrokeStat> out;
  if (period <= 0.0) return out;
  const double t_end = traj.samples.back().t;
  const int n = static_cast<int>(std::floor(t_end / period + 1e-9));
  for (int k = 0; k < n; ++k) {
    const Pose a = traj.eval(k * period);
    const Pose b = traj.eval((k + 1) * period);
    StrokeStat s;
    s.index = k + 1;
    s.dx = b.r.x() - a.r.x();
    s.dy = b.r.y() - a.r.y();
    s.dtheta = b.theta - a.theta;
    s.mean_speed = (b.r - a.r).norm() / period;
    out.push_back(s);
  }
  return out;
}

/// Per-frame source densities of the instantaneous flow, for debugging the
/// potential-flow models. Each dumped row re-solves the frame's Neumann
/// problem with the velocity data the dynamics saw.
inline void write_strengths_csv(const Scenario& sc, const Trajectory& traj,
                                const ShapePath& path,
                                const std::string& out_path) {
  std::ofstream out(out_path);
  if (!out)
    throw std::runtime_error("cannot open " + out_path + " for writing");
  bool wrote_header = false;
  for (std::size_t i = 0; i < traj.samples.size();
       i += static_cast<std::size_t>(sc.strengths_stride)) {
    const TrajectorySample& smp = traj.samples[i];
    BodyBoundary body =
        transform(build_scallop(sc.geometry.at_opening(smp.s[0])), smp.pose);
    if (sc.obstacle) body = merge(body, sc.obstacle->build());

    const ShapeVec sd = path.sample(smp.t).second;
    Eigen::VectorXd data(body.panel_count());
    for (std::size_t p = 0; p < body.panel_count(); ++p) {
      const Panel& panel = body.panels[p];
      Vec2 u = smp.qdot[0] * perp(panel.mid - smp.pose.r) +
               Vec2(smp.qdot[1], smp.qdot[2]);
      for (int k = 0; k < body.mode_count(); ++k)
        u += sd[k] * body.mode_velocities[k][p];
      if (panel.loop >= 2) u.setZero();  // fixed obstacle loop
      data[p] = u.dot(panel.normal);
    }
    const PanelSolution sol = NeumannSolver(body).solve(data);
    if (!wrote_header) {
      out << "t";
      for (Eigen::Index k = 0; k < sol.strengths.size(); ++k)
        out << ",sigma" << k;
      out << "\n";
      wrote_header = true;
    }
    out << format_double(smp.t);
    for (Eigen::Index k = 0; k < sol.strengths.size(); ++k)
      out << ',' << format_double(sol.strengths[k]);
    out << "\n";
  }
}

inline nlohmann::ordered_json summary_json(const Scenario& sc,
                                           const RunResult& res) {
  nlohmann::ordered_json j;
  j["name"] = sc.name;
  j["model"] = to_string(sc.model);
  j["waveform"] = sc.waveform.describe();
  j["step"] = sc.step;
  j["horizon"] = sc.horizon;
  const Pose& qf = res.trajectory.final();
  j["final_pose"] = {{"theta", qf.theta}, {"x", qf.r.x()}, {"y", qf.r.y()}};
  j["net_displacement"] =
      (qf.r - res.trajectory.initial().r).norm();
  if (!res.strokes.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : res.strokes)
      arr.push_back({{"stroke", s.index},
                     {"dx", s.dx},
                     {"dy", s.dy},
                     {"dtheta", s.dtheta},
                     {"mean_speed", s.mean_speed}});
    j["strokes"] = arr;
  }
  if (res.cover) {
    j["cover"] = {{"verdict", to_string(res.cover->verdict)},
                  {"lift_length", res.cover->lift_tv},
                  {"image", {res.cover->image_lo, res.cover->image_hi}},
                  {"witness_bound", res.cover->witness_bound},
                  {"base_point", res.cover->base_point},
                  {"horizon", res.cover->horizon}};
  }
  if (res.reparam_sup >= 0.0) j["reparam_sup_discrepancy"] = res.reparam_sup;
  j["collided"] = res.collided;
  if (res.collided) j["collision_time"] = res.collision_time;
  j["exit_status"] = res.exit_status;
  return j;
}

}  // namespace detail

/// Execute one scenario and write its artifacts into out_dir. Deterministic
/// given identical configuration. Exit status 0 is a normal run; 2 flags a
/// collision stop.
inline RunResult run_scenario(const Scenario& sc, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const ShapePath path = sc.waveform.build(sc.horizon);

  RunResult res;
  std::optional<Field> field;
  if (sc.model == ModelKind::HighReObstacle) {
    res.second_order = true;
    ObstacleDynamics dyn = make_obstacle_dynamics(
        sc.geometry, sc.fluid, sc.obstacle ? std::optional<BodyBoundary>(
                                                 sc.obstacle->build())
                                           : std::nullopt);
    auto [s0, sd0] = path.sample(0.0);
    const RichState start = rest_start(dyn, Pose::identity(), s0, sd0);
    SecondOrderRun run = integrate_second_order(dyn, path, start, sc.step);
    res.trajectory = std::move(run.trajectory);
    res.collided = run.collided;
    res.collision_time = run.collision_time;
    res.exit_status = run.collided ? 2 : 0;
  } else {
    field = detail::build_field(sc);
    res.trajectory = integrate(*field, path, Pose::identity(), sc.step);

    if (sc.reparam_check && sc.waveform.kind == "warped_cosine") {
      // The warped stroke equals the plain stroke composed with
      // beta(t) = t + (warp/omega) sin(omega t); compare against it.
      WaveformSpec plain = sc.waveform;
      plain.kind = "cosine";
      const double slack = std::abs(sc.waveform.warp) / sc.waveform.omega;
      const ShapePath base_path = plain.build(sc.horizon + slack + sc.step);
      const Trajectory base =
          integrate(*field, base_path, Pose::identity(), sc.step);
      double sup = 0.0;
      for (const auto& smp : res.trajectory.samples) {
        const double b =
            smp.t + sc.waveform.warp / sc.waveform.omega *
                        std::sin(sc.waveform.omega * smp.t);
        sup = std::max(sup, chart_distance(smp.pose, base.eval(b)));
      }
      res.reparam_sup = sup;
    }
  }

  // Cover analysis of the (always one-dof) shape history.
  {
    std::vector<double> t, s;
    t.reserve(res.trajectory.samples.size());
    for (const auto& smp : res.trajectory.samples) {
      t.push_back(smp.t);
      s.push_back(smp.s[0]);
    }
    const bool circle = !path.circle.empty() && path.circle[0];
    const LiftedPath lp = lift(t, s, s.front(), circle);
    const double K = field ? field->bound_K : 0.0;
    res.cover = verdict(lp, 0.1, K);
  }

  res.strokes = detail::stroke_stats(res.trajectory, sc.waveform.period());

  res.trajectory_path =
      (std::filesystem::path(out_dir) / sc.trajectory_file).string();
  res.summary_path =
      (std::filesystem::path(out_dir) / sc.summary_file).string();
  write_trajectory_csv(res.trajectory_path, res.trajectory, res.second_order);
  if (!sc.strengths_file.empty()) {
    res.strengths_path =
        (std::filesystem::path(out_dir) / sc.strengths_file).string();
    detail::write_strengths_csv(sc, res.trajectory, path, res.strengths_path);
  }
  std::ofstream out(res.summary_path);
  if (!out)
    throw std::runtime_error("cannot open " + res.summary_path +
                             " for writing");
  out << detail::summary_json(sc, res).dump(2) << "\n";
  return res;
}

/// Boundary (and obstacle, when present) at the stroke's initial shape.
inline BodyBoundary scenario_mesh(const Scenario& sc) {
  if (sc.model == ModelKind::Synthetic)
    throw std::runtime_error("export-mesh: the synthetic model has no mesh");
  const ShapePath path = sc.waveform.build(sc.horizon);
  const double opening = path.sample(0.0).first[0];
  BodyBoundary body = build_scallop(sc.geometry.at_opening(opening));
  if (sc.obstacle) body = merge(body, sc.obstacle->build());
  return body;
}

}  // namespace swim
