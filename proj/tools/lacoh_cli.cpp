#include "lacoh/json_io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

using lacoh::io::json;

int main(int argc, char** argv) {
  CLI::App app{"lacoh: locally analytic cohomology at desk scale"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
  bool timing = false;

  for (const auto& name : lacoh::io::subcommands()) {
    auto* sc = app.add_subcommand(name);
    sc->add_option("--config", config_path, "scenario JSON")->check(CLI::ExistingFile);
    sc->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) {
      seed = s;
      seed_given = true;
    }, "random seed (overrides the config)");
    sc->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));
    sc->add_option("--out", out_path, "write the report here instead of stdout");
    sc->add_flag("--timing", timing, "print wall-clock time to stderr");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string sub = app.get_subcommands().front()->get_name();

  auto t0 = std::chrono::steady_clock::now();
  try {
    json cfg_json = json::object();
    lacoh::io::ScenarioConfig cfg =
        config_path.empty() ? lacoh::io::parse_config(cfg_json) : lacoh::io::load_config(config_path);
    if (seed_given) cfg.seed = seed;
    cfg.threads = threads;
    auto report = lacoh::io::run(sub, cfg);
    std::string text = report.body.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 3;
      }
      out << text;
    }
    if (timing)
      std::cerr << sub << ": "
                << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
    return report.ok ? 0 : 1;
  } catch (const lacoh::io::ConfigError& ex) {
    std::cerr << json{{"error", "ConfigError"}, {"field", ex.field()}, {"message", ex.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << json{{"error", "RuntimeError"}, {"message", ex.what()}}.dump() << "\n";
    return 3;
  }
}
