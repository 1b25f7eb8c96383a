// Batch runner for the experiment catalog.
//
//   rossonct list
//   rossonct run <id>... [--field Q] [--d 2] [--samples N] [--seed S]
//                        [--radius R] [--n-max N] [--out DIR] [--config FILE]
//   rossonct run --all --seed 7

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rossonct/experiments.hpp"

namespace fs = std::filesystem;
using namespace rossonct;

namespace {

std::string default_out() {
  if (const char* env = std::getenv("ROSSONCT_OUT"); env && *env) return env;
  return "rossonct-out";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Experiments on rank-one symmetric spaces and their parabolic lattices"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file of run options; flags take precedence");

  auto* list = app.add_subcommand("list", "Print the experiment catalog");

  auto* run = app.add_subcommand("run", "Run experiments, write one CSV each");
  std::vector<std::string> ids;
  bool all = false;
  std::string field, out;
  int d = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double radius = 0.0;
  long long n_max = 0;
  run->add_option("ids", ids, "Experiment ids");
  app.add_flag("--all", all, "Run the whole catalog");
  auto* o_field = app.add_option("--field", field, "Base field")->check(CLI::IsMember({"R", "C", "Q"}));
  auto* o_d = app.add_option("--d", d, "Dimension")->check(CLI::PositiveNumber);
  auto* o_samples = app.add_option("--samples", samples, "Sample count")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "Random seed");
  auto* o_radius = app.add_option("--radius", radius, "Ball or sampling radius")->check(CLI::PositiveNumber);
  auto* o_nmax = app.add_option("--n-max", n_max, "Largest power")->check(CLI::PositiveNumber);
  app.add_option("--out", out, "Output directory (default $ROSSONCT_OUT or ./rossonct-out)");
  // Options live on the app so that plain config keys reach them; they may
  // still follow the subcommand.
  run->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& e : catalog()) std::cout << e.id << "\t" << e.criterion << "\t" << e.description << "\n";
    return 0;
  }

  try {
    if (all) {
      ids.clear();
      for (const auto& e : catalog()) ids.push_back(e.id);
    }
    if (ids.empty()) throw std::invalid_argument("no experiment given; pass ids or --all");
    for (const auto& id : ids) lookup_experiment(id);

    ExperimentConfig cfg;
    cfg.seed = seed;
    if (o_field->count()) cfg.field = parse_field(field);
    if (o_d->count()) cfg.d = d;
    if (o_samples->count()) cfg.samples = samples;
    if (o_radius->count()) cfg.radius = radius;
    if (o_nmax->count()) cfg.n_max = n_max;

    const fs::path dir = out.empty() ? fs::path(default_out()) : fs::path(out);
    fs::create_directories(dir);

    bool ok = true;
    for (const auto& id : ids) {
      const ExperimentResult r = run_experiment(id, cfg);
      write_atomic((dir / (id + ".csv")).string(), to_csv(r.table));
      if (r.pass) {
        std::cout << id << ": PASS  " << r.summary << "\n";
      } else {
        std::cout << id << ": FAIL " << r.criterion << "  " << r.summary << "\n";
        ok = false;
      }
      std::cout.flush();
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
