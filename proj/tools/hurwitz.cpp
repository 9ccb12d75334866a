#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hurwitz/braid.hpp"
#include "hurwitz/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Nielsen classes, braid orbits, reduced cusps and lift invariants"};
  std::string spec_file;
  hurwitz::RunConfig cfg;
  app.add_option("--spec", spec_file, "NielsenSpec JSON file")->required();
  app.add_option("--cmd", cfg.command, "enumerate|orbits|cusps|genus|shmatrix|lift|tower|report");
  app.add_option("--out", cfg.out_dir, "directory for the report file");
  app.add_option("--format", cfg.format, "json|tsv|dot|text");
  app.add_option("--jobs", cfg.jobs, "worker threads");
  app.add_option("--budget", cfg.budget, "raw tuple budget");
  app.add_option("--cache", cfg.cache_dir, "orbit cache directory");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : hurwitz::kExitConfig;
  }

  std::ifstream in(spec_file);
  if (!in) {
    std::cerr << "error: cannot read " << spec_file << "\n";
    return hurwitz::kExitConfig;
  }
  cfg.spec = nlohmann::json::parse(in, nullptr, false);
  if (cfg.spec.is_discarded()) {
    std::cerr << "error: " << spec_file << " is not valid JSON\n";
    return hurwitz::kExitConfig;
  }
  try {
    hurwitz::apply_env(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return hurwitz::kExitConfig;
  }

  const auto res = hurwitz::run(cfg);
  if (res.exit_code != 0) {
    std::cerr << "error: " << res.error << "\n";
    return res.exit_code;
  }
  if (cfg.out_dir.empty()) std::cout << res.text;
  const auto& g = hurwitz::gate_stats();
  std::cerr << "gates: nielsen " << g.nielsen_preserved << ", lift-constant " << g.lift_constant << ", genus-oracle "
            << g.genus_oracles << ", cusp-predictions " << g.cusp_predictions << " (misses " << g.cusp_prediction_misses
            << "), tower " << g.tower_checks << (res.cache_hit ? ", cache hit" : "") << "\n";
  return 0;
}
