// Command-line front end: run scenarios, lift shape histories, list the
// built-in scenario library, and export panel meshes.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swim/cover.hpp"
#include "swim/io.hpp"
#include "swim/scenario.hpp"

namespace {

std::string output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("SWIM_OUTPUT_DIR"); env && *env)
    return env;
  return ".";
}

int cmd_run(const std::string& config, const std::string& out_flag) {
  const swim::Scenario sc =
      swim::parse_config(swim::load_scenario_text(config));
  const swim::RunResult res = swim::run_scenario(sc, output_dir(out_flag));
  std::cout << "scenario " << sc.name << ": wrote " << res.trajectory_path
            << " and " << res.summary_path << "\n";
  if (res.collided)
    std::cout << "collision stop at t=" << res.collision_time << "\n";
  return res.exit_status;
}

int cmd_verdict(const std::string& csv, bool circle, double base,
                bool base_set, double bound_K) {
  std::vector<double> t, s;
  swim::read_ts_csv(csv, t, s);
  const double base_point = base_set ? base : s.front();
  const swim::LiftedPath lp = swim::lift(t, s, base_point, circle);
  const swim::VerdictReport rep = swim::verdict(lp, 0.1, bound_K);
  std::cout << "verdict: " << swim::to_string(rep.verdict) << "\n"
            << "lift_length: " << swim::format_double(rep.lift_tv) << "\n"
            << "image: [" << swim::format_double(rep.image_lo) << ", "
            << swim::format_double(rep.image_hi) << "]\n"
            << "witness_bound: " << swim::format_double(rep.witness_bound)
            << "\n"
            << "base_point: " << swim::format_double(rep.base_point) << "\n"
            << "horizon: " << swim::format_double(rep.horizon) << "\n";
  return 0;
}

int cmd_list() {
  for (const auto& [name, text] : swim::builtin_scenarios()) {
    const swim::Scenario sc = swim::parse_config(text);
    std::cout << name << ": model=" << swim::to_string(sc.model)
              << " waveform=" << sc.waveform.describe()
              << " horizon=" << sc.horizon << "\n";
  }
  return 0;
}

int cmd_export_mesh(const std::string& config, const std::string& out_flag,
                    const std::string& file) {
  const swim::Scenario sc =
      swim::parse_config(swim::load_scenario_text(config));
  const std::string path =
      (std::filesystem::path(output_dir(out_flag)) / file).string();
  std::filesystem::create_directories(output_dir(out_flag));
  swim::write_mesh_csv(path, swim::scenario_mesh(sc));
  std::cout << "wrote " << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shape-changing swimmer simulator"};
  app.require_subcommand(1);

  std::string config, out_flag, csv_path, mesh_file = "mesh.csv";
  bool circle = false;
  double base = 0.0, bound_K = 1.0;

  auto* run = app.add_subcommand("run", "run a scenario (built-in name or config file)");
  run->add_option("config", config, "built-in scenario name or path to a config file")
      ->required();
  run->add_option("-o,--out", out_flag, "output directory (default: $SWIM_OUTPUT_DIR or .)");

  auto* verdict = app.add_subcommand("verdict", "lift a (t, s) CSV and report the boundedness verdict");
  verdict->add_option("csv", csv_path, "CSV with columns t,s")->required();
  verdict->add_flag("--circle", circle, "shape coordinate lives on the circle");
  auto* base_opt = verdict->add_option("--base", base, "base point of the lift (default s(0))");
  verdict->add_option("--bound-K", bound_K, "growth constant for the witness bound (default 1)");

  auto* list = app.add_subcommand("list-scenarios", "list built-in scenarios");

  auto* mesh = app.add_subcommand("export-mesh", "export the panel mesh of a scenario");
  mesh->add_option("config", config, "built-in scenario name or path to a config file")
      ->required();
  mesh->add_option("-o,--out", out_flag, "output directory (default: $SWIM_OUTPUT_DIR or .)");
  mesh->add_option("-f,--file", mesh_file, "mesh file name (default mesh.csv)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config, out_flag);
    if (verdict->parsed())
      return cmd_verdict(csv_path, circle, base, base_opt->count() > 0,
                         bound_K);
    if (list->parsed()) return cmd_list();
    if (mesh->parsed()) return cmd_export_mesh(config, out_flag, mesh_file);
  } catch (const swim::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
