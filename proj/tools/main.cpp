// Command line driver: run scene files and print support-function profiles.
#include "polytube/scene.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw polytube::scene::SceneError("cannot open scene file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw polytube::scene::SceneError("cannot open output file '" + out + "'");
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polytube: polyhedral tube semigroups, their absolute values and norms"};
  app.require_subcommand(1);

  std::string scene_path, out_path, format = "json";
  polytube::scene::RunOptions opts;
  int grid = 64;

  auto* run = app.add_subcommand("run", "execute the queries of a scene file");
  run->add_option("scene", scene_path, "scene JSON file")->required();
  run->add_option("--seed", opts.seed, "seed for the randomized verification suites");
  run->add_option("--tol-geom", opts.tol_geom, "geometric tolerance")
      ->check(CLI::PositiveNumber);
  run->add_option("--tol-norm", opts.tol_norm, "relative norm bracket width target")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_path, "write the report here instead of stdout");
  run->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_flag("--timings", opts.timings,
                "include wall times (reports are no longer byte-reproducible)");

  auto* profile = app.add_subcommand("support-profile",
                                     "tabulate the support function over a direction grid");
  profile->add_option("scene", scene_path, "scene JSON file")->required();
  profile->add_option("--grid", grid, "directions per angular axis")
      ->check(CLI::PositiveNumber);
  profile->add_option("--tol-geom", opts.tol_geom, "geometric tolerance")
      ->check(CLI::PositiveNumber);
  profile->add_option("--out", out_path, "write the table here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    const auto scene = polytube::scene::parse_scene_text(read_file(scene_path));
    if (profile->parsed()) {
      write_output(out_path, polytube::scene::support_profile_csv(scene, grid, opts.tol_geom));
      return 0;
    }
    const auto result = polytube::scene::run_scene(scene, opts);
    write_output(out_path, format == "csv" ? polytube::scene::report_to_csv(result.report)
                                           : result.report.dump(2) + "\n");
    return result.all_passed ? 0 : 1;
  } catch (const polytube::scene::SceneError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
}
