// Command-line front end: run, sweep, gradcheck, version.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gdr/config.hpp"
#include "gdr/csv.hpp"
#include "gdr/error.hpp"
#include "gdr/gradcheck.hpp"
#include "gdr/harness.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr double kGradcheckTolerance = 1e-4;

void print_progress(const gdr::GenerationLog& l) {
  if (std::isnan(l.center_fitness_mean)) return;
  std::fprintf(stderr, "gen %5lld  evals %8lld  center %12.4f  actor %12.4f  distance %12.4f  weight %.4f\n",
               static_cast<long long>(l.generation), static_cast<long long>(l.total_evals), l.center_fitness_mean,
               l.actor_fitness, l.genetic_distance, l.actor_update_weight);
}

std::filesystem::path suffixed(const std::filesystem::path& base, const std::string& key, const std::string& value) {
  std::filesystem::path out = base;
  out.replace_filename(base.stem().string() + "_" + key + "-" + value + base.extension().string());
  return out;
}

std::vector<std::string> split_values(const std::string& csv) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const std::string item = csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!item.empty()) out.push_back(item);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolution strategies with TD3 actor injection and genetic drift regularization"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  int threads = 0;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "Run one experiment and write its CSV log");
  run->add_option("--config", config_path, "Config file (key = value)")->required();
  auto* seed_opt = run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out_path, "Override the output CSV path");
  run->add_option("--threads", threads, "Rollout worker threads (does not change results)");
  run->add_flag("--quiet", quiet, "No per-evaluation progress on stderr");

  std::string sweep_key;
  std::string sweep_values;
  auto* sweep = app.add_subcommand("sweep", "Run one experiment per value of a config key");
  sweep->add_option("--config", config_path, "Config file (key = value)")->required();
  sweep->add_option("--key", sweep_key, "Config key to vary")->required();
  sweep->add_option("--values", sweep_values, "Comma-separated values")->required();
  sweep->add_option("--out", out_path, "Base output CSV path; files are suffixed per value");
  sweep->add_option("--threads", threads, "Rollout worker threads (does not change results)");
  sweep->add_flag("--quiet", quiet, "No per-evaluation progress on stderr");

  int instances = 20;
  std::uint64_t gc_seed = 1;
  auto* gradcheck = app.add_subcommand("gradcheck", "Compare analytic TD3 gradients with finite differences");
  gradcheck->add_option("--instances", instances, "Random tiny instances to check")->check(CLI::PositiveNumber);
  gradcheck->add_option("--seed", gc_seed, "Instance generator seed");

  app.add_subcommand("version", "Print the version");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("version")) {
      std::cout << "gdr " << kVersion << '\n';
      return 0;
    }

    if (app.got_subcommand("gradcheck")) {
      const auto t0 = std::chrono::steady_clock::now();
      const gdr::GradcheckReport r = gdr::run_gradcheck(instances, gc_seed);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::printf("instances              %d\n", r.instances);
      std::printf("critic loss            %.3e\n", r.critic);
      std::printf("actor loss (none)      %.3e\n", r.actor_none);
      std::printf("actor loss (l2)        %.3e\n", r.actor_l2);
      std::printf("actor loss (squared)   %.3e\n", r.actor_squared_l2);
      std::printf("elapsed                %.2f s\n", secs);
      const bool ok = r.worst() < kGradcheckTolerance;
      std::printf("%s (tolerance %.0e)\n", ok ? "PASS" : "FAIL", kGradcheckTolerance);
      return ok ? 0 : kExitNumeric;
    }

    gdr::RunConfig cfg = gdr::load_config(config_path);
    if (!out_path.empty()) cfg.output = out_path;
    if (threads > 0) cfg.threads = threads;
    const gdr::GenerationCallback progress = quiet ? gdr::GenerationCallback{} : print_progress;

    if (app.got_subcommand("run")) {
      if (seed_opt->count() > 0) cfg.seed = seed;
      cfg.validate();
      const auto logs = gdr::run_experiment(cfg, progress);
      gdr::write_csv(logs, cfg.output);
      std::cerr << "wrote " << cfg.output << '\n';
      return 0;
    }

    const auto values = split_values(sweep_values);
    if (values.empty()) throw gdr::ConfigError("sweep: --values is empty");
    for (const std::string& v : values) {
      gdr::RunConfig c = cfg;
      gdr::apply_config_value(c, sweep_key, v);
      c.validate();
      c.output = suffixed(cfg.output, sweep_key, v).string();
      const auto logs = gdr::run_experiment(c, progress);
      gdr::write_csv(logs, c.output);
      std::cerr << "wrote " << c.output << '\n';
    }
    return 0;
  } catch (const gdr::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const gdr::NumericError& e) {
    std::cerr << "numeric abort: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
