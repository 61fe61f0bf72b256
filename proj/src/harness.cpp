#include "gdr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "gdr/error.hpp"
#include "gdr/es_core.hpp"
#include "gdr/injection.hpp"
#include "gdr/replay_buffer.hpp"
#include "gdr/rng.hpp"
#include "gdr/td3.hpp"

namespace gdr {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

InjectionMode injection_for(const RunConfig& cfg) {
  switch (cfg.algo) {
    case Algo::Es:
    case Algo::ParallelTd3:
      return InjectionMode::none();
    case Algo::EsClip:
      return InjectionMode::clipped(cfg.clip_factor);
    case Algo::EsInject:
    case Algo::EsGdr:
    case Algo::EsGdr2:
      return InjectionMode::standard();
  }
  return InjectionMode::none();
}

RegularizationMode regularization_for(const RunConfig& cfg) {
  switch (cfg.algo) {
    case Algo::EsGdr: return RegularizationMode::l2(cfg.epsilon);
    case Algo::EsGdr2: return RegularizationMode::squared_l2(cfg.epsilon);
    default: return RegularizationMode::none();
  }
}

/// Rolls out every genome, one rng substream per population index. Results
/// come back in index order regardless of the worker count.
std::vector<RolloutResult> evaluate_population(const RunConfig& cfg, const EnvSpec& spec,
                                               const PolicyArchitecture& arch, const std::vector<Genome>& genomes,
                                               double exploration_std, const RngTree& tree, std::int64_t generation) {
  std::vector<RolloutResult> results(genomes.size());
  parallel_for(static_cast<int>(genomes.size()), cfg.threads, [&](int i) {
    std::mt19937_64 rng = tree.stream("exploration", static_cast<std::uint64_t>(generation), static_cast<std::uint64_t>(i));
    results[static_cast<std::size_t>(i)] = rollout(spec, arch, genomes[static_cast<std::size_t>(i)], exploration_std, rng);
  });
  return results;
}

void append_transitions(ReplayBuffer& buffer, const std::vector<RolloutResult>& results) {
  for (const RolloutResult& r : results) {
    for (const Transition& t : r.transitions) buffer.push(t);
  }
}

double noiseless_fitness(const EnvSpec& spec, const PolicyArchitecture& arch, const Genome& g) {
  std::mt19937_64 unused(0);
  return rollout(spec, arch, g, 0.0, unused).fitness;
}

void check_finite(const Genome& g, const char* what, std::int64_t generation) {
  if (!g.all_finite()) {
    throw NumericError(std::string("non-finite ") + what + " at generation " + std::to_string(generation));
  }
}

}  // namespace

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  const int workers = std::clamp(threads, 1, std::max(n, 1));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = w; i < n; i += workers) fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

PolicyArchitecture config_architecture(const RunConfig& cfg) {
  const EnvSpec spec = make_env(cfg.env);
  PolicyArchitecture arch{spec.obs_dim, spec.act_dim, cfg.hidden};
  arch.validate();
  return arch;
}

std::pair<double, double> evaluate_center(const RunConfig& cfg, const Genome& genome) {
  const EnvSpec spec = make_env(cfg.env);
  const PolicyArchitecture arch = config_architecture(cfg);
  std::vector<double> f(static_cast<std::size_t>(std::max(cfg.eval_reps, 1)));
  for (double& v : f) v = noiseless_fitness(spec, arch, genome);
  double mean = 0.0;
  for (double v : f) mean += v;
  mean /= static_cast<double>(f.size());
  double var = 0.0;
  for (double v : f) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / static_cast<double>(f.size()))};
}

std::vector<GenerationLog> run_es_rl(const RunConfig& cfg, const GenerationCallback& on_generation) {
  cfg.validate();
  if (cfg.algo == Algo::ParallelTd3) {
    throw ConfigError("run_es_rl: algo parallel_td3 is not an ES variant");
  }
  const EnvSpec spec = make_env(cfg.env);
  const PolicyArchitecture arch = config_architecture(cfg);
  const RngTree tree(cfg.seed);
  const InjectionMode mode = injection_for(cfg);
  const bool injects = mode.kind != InjectionMode::Kind::NoInjection;

  std::mt19937_64 init_rng = tree.stream("init");
  const Genome start = init_genome(arch, init_rng);
  EsState es{start, cfg.sigma, 0, cfg.lambda, cfg.mu};
  const RecombinationWeights weights = recombination_weights(cfg.lambda, cfg.mu);
  Td3State td3 = make_td3(arch, cfg.critic_hidden, start, cfg.td3, regularization_for(cfg), init_rng);
  ReplayBuffer buffer(spec.obs_dim, spec.act_dim, cfg.buffer_size);

  std::vector<GenerationLog> logs;
  logs.reserve(static_cast<std::size_t>(cfg.generations));
  std::int64_t total_evals = 0;
  for (std::int64_t g = 1; g <= cfg.generations; ++g) {
    std::mt19937_64 es_rng = tree.stream("es_sampling", static_cast<std::uint64_t>(g));
    std::vector<Genome> population =
        inject(sample_population(es, injects ? cfg.lambda - 1 : cfg.lambda, es_rng), td3.actor, mode, es);

    const auto results = evaluate_population(cfg, spec, arch, population, 0.0, tree, g);
    append_transitions(buffer, results);
    total_evals += static_cast<std::int64_t>(results.size());

    std::vector<double> fitness(results.size());
    std::transform(results.begin(), results.end(), fitness.begin(), [](const RolloutResult& r) { return r.fitness; });
    const std::optional<std::size_t> actor_index =
        injects ? std::optional<std::size_t>(population.size() - 1) : std::nullopt;
    const bool injected_verbatim = injects && population.back() == td3.actor;
    const double injected_fitness = injects ? fitness.back() : kNaN;

    const RankedPopulation ranked = make_ranked(std::move(population), std::move(fitness));
    const DriftSample drift = measure_drift(td3.actor, es, ranked, weights, actor_index);
    const Genome actor_before_training = td3.actor;

    es = es_update(es, ranked, weights);
    check_finite(es.center, "ES center", g);

    std::mt19937_64 sample_rng = tree.stream("buffer_sampling", static_cast<std::uint64_t>(g));
    std::mt19937_64 noise_rng = tree.stream("target_noise", static_cast<std::uint64_t>(g));
    try {
      td3_train(td3, buffer, cfg.n_steps, es.center, sample_rng, noise_rng);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (generation " + std::to_string(g) + ")");
    }
    check_finite(td3.actor, "actor", g);

    GenerationLog log;
    log.generation = g;
    log.genetic_distance = drift.distance;
    log.actor_update_weight = drift.actor_weight;
    log.best_pop_fitness = ranked.fitnesses[ranked.order.front()];
    log.center_fitness_mean = kNaN;
    log.center_fitness_std = kNaN;
    log.actor_fitness = kNaN;
    if (g % cfg.eval_every == 0) {
      const auto [mean, sd] = evaluate_center(cfg, es.center);
      total_evals += cfg.eval_reps;
      log.center_fitness_mean = mean;
      log.center_fitness_std = sd;
      if (injected_verbatim) {
        log.actor_fitness = injected_fitness;
      } else {
        log.actor_fitness = noiseless_fitness(spec, arch, actor_before_training);
        total_evals += 1;
      }
    }
    log.total_evals = total_evals;
    logs.push_back(log);
    if (on_generation) on_generation(log);
  }
  return logs;
}

std::vector<GenerationLog> run_parallel_td3(const RunConfig& cfg, const GenerationCallback& on_generation) {
  cfg.validate();
  if (cfg.algo != Algo::ParallelTd3) {
    throw ConfigError("run_parallel_td3: algo must be parallel_td3");
  }
  const EnvSpec spec = make_env(cfg.env);
  const PolicyArchitecture arch = config_architecture(cfg);
  const RngTree tree(cfg.seed);

  std::mt19937_64 init_rng = tree.stream("init");
  const Genome start = init_genome(arch, init_rng);
  Td3State td3 = make_td3(arch, cfg.critic_hidden, start, cfg.td3, RegularizationMode::none(), init_rng);
  ReplayBuffer buffer(spec.obs_dim, spec.act_dim, cfg.buffer_size);

  std::vector<GenerationLog> logs;
  std::int64_t total_evals = 0;
  for (std::int64_t g = 1; g <= cfg.generations; ++g) {
    const std::vector<Genome> copies(static_cast<std::size_t>(cfg.lambda), td3.actor);
    const auto results = evaluate_population(cfg, spec, arch, copies, cfg.exploration_std, tree, g);
    append_transitions(buffer, results);
    total_evals += static_cast<std::int64_t>(results.size());
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& r : results) best = std::max(best, r.fitness);

    std::mt19937_64 sample_rng = tree.stream("buffer_sampling", static_cast<std::uint64_t>(g));
    std::mt19937_64 noise_rng = tree.stream("target_noise", static_cast<std::uint64_t>(g));
    try {
      const Genome unused_center = td3.actor;  // no regularization in this baseline
      td3_train(td3, buffer, cfg.n_steps, unused_center, sample_rng, noise_rng);
    } catch (const NumericError& e) {
      throw NumericError(std::string(e.what()) + " (generation " + std::to_string(g) + ")");
    }
    check_finite(td3.actor, "actor", g);

    GenerationLog log;
    log.generation = g;
    log.genetic_distance = 0.0;
    log.actor_update_weight = 0.0;
    log.best_pop_fitness = best;
    log.center_fitness_mean = kNaN;
    log.center_fitness_std = kNaN;
    log.actor_fitness = kNaN;
    if (g % cfg.eval_every == 0) {
      // The actor is the current solution, so it fills the center columns too.
      const auto [mean, sd] = evaluate_center(cfg, td3.actor);
      total_evals += cfg.eval_reps;
      log.center_fitness_mean = mean;
      log.center_fitness_std = sd;
      log.actor_fitness = mean;
    }
    log.total_evals = total_evals;
    logs.push_back(log);
    if (on_generation) on_generation(log);
  }
  return logs;
}

std::vector<GenerationLog> run_experiment(const RunConfig& cfg, const GenerationCallback& on_generation) {
  return cfg.algo == Algo::ParallelTd3 ? run_parallel_td3(cfg, on_generation) : run_es_rl(cfg, on_generation);
}

}  // namespace gdr
