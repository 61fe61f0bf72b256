#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "gdr/config.hpp"
#include "gdr/envs.hpp"
#include "gdr/genome.hpp"

namespace gdr {

/// One row of run telemetry. Fitness columns are NaN on generations without
/// an evaluation.
struct GenerationLog {
  std::int64_t generation = 0;
  std::int64_t total_evals = 0;
  double center_fitness_mean = 0.0;
  double center_fitness_std = 0.0;
  double actor_fitness = 0.0;
  double genetic_distance = 0.0;
  double actor_update_weight = 0.0;
  double best_pop_fitness = 0.0;
};

using GenerationCallback = std::function<void(const GenerationLog&)>;

/// ES runs (es, es_inject, es_clip, es_gdr, es_gdr2): sample, inject, evaluate,
/// rank, update the center, then train the actor toward the new center.
std::vector<GenerationLog> run_es_rl(const RunConfig& cfg, const GenerationCallback& on_generation = {});

/// Batches of noisy actor rollouts alternating with blocks of TD3 steps.
std::vector<GenerationLog> run_parallel_td3(const RunConfig& cfg, const GenerationCallback& on_generation = {});

/// Dispatches on cfg.algo.
std::vector<GenerationLog> run_experiment(const RunConfig& cfg, const GenerationCallback& on_generation = {});

/// eval_reps noiseless rollouts; returns (mean, population std).
std::pair<double, double> evaluate_center(const RunConfig& cfg, const Genome& genome);

/// Policy architecture implied by the config's env and hidden widths.
PolicyArchitecture config_architecture(const RunConfig& cfg);

/// Calls fn(i) for i in [0, n) on up to `threads` workers.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace gdr
