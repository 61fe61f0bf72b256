#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gdr/td3.hpp"

namespace gdr {

enum class Algo { Es, EsInject, EsClip, EsGdr, EsGdr2, ParallelTd3 };

std::string_view algo_name(Algo a);
/// Throws ConfigError for unknown names.
Algo parse_algo(std::string_view name);

struct RunConfig {
  Algo algo = Algo::Es;
  std::string env = "static_target";
  std::uint64_t seed = 0;
  int generations = 100;
  int lambda = 100;
  int mu = 50;
  double sigma = 10.0;
  double epsilon = 0.01;
  double clip_factor = 1.0;
  Td3Hyperparams td3;
  std::size_t buffer_size = 1'000'000;
  int n_steps = 1000;
  double exploration_std = 0.1;
  int eval_every = 10;
  int eval_reps = 1;
  std::vector<int> hidden{128, 128};         // actor (genome) hidden widths
  std::vector<int> critic_hidden{128, 128};
  int threads = 1;                           // rollout workers; results do not depend on it
  std::string output = "run.csv";

  /// Throws ConfigError naming the first offending key.
  void validate() const;
};

/// Sets one key from its textual value. Throws ConfigError for unknown keys
/// or unparsable values.
void apply_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

/// Parses `key = value` lines with `#` comments. `algo` is required; every
/// other key defaults.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace gdr
