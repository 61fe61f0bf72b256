#include "gdr/es_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gdr/error.hpp"

namespace gdr {

std::size_t RankedPopulation::rank_of(std::size_t index) const {
  const auto it = std::find(order.begin(), order.end(), index);
  if (it == order.end()) {
    throw InvalidInput("RankedPopulation::rank_of: index " + std::to_string(index) + " not ranked");
  }
  return static_cast<std::size_t>(it - order.begin());
}

RecombinationWeights recombination_weights(int lambda, int mu) {
  if (mu < 1 || mu > lambda) {
    throw InvalidInput("recombination_weights: need 1 <= mu <= lambda, got mu=" + std::to_string(mu) +
                       " lambda=" + std::to_string(lambda));
  }
  RecombinationWeights out;
  out.w.assign(static_cast<std::size_t>(lambda), 0.0);
  const double top = std::log(mu + 0.5);
  double total = 0.0;
  for (int i = 1; i <= mu; ++i) {
    out.w[static_cast<std::size_t>(i - 1)] = top - std::log(static_cast<double>(i));
    total += out.w[static_cast<std::size_t>(i - 1)];
  }
  for (int i = 0; i < mu; ++i) {
    out.w[static_cast<std::size_t>(i)] /= total;
  }
  return out;
}

std::vector<Genome> sample_population(const EsState& es, int count, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(es.center.size());
  std::vector<Genome> samples;
  samples.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int k = 0; k < count; ++k) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = es.center.values()[i] + es.sigma * normal(rng);
    }
    samples.emplace_back(std::move(x));
  }
  return samples;
}

std::vector<std::size_t> rank(std::span<const double> fitnesses) {
  for (std::size_t i = 0; i < fitnesses.size(); ++i) {
    if (std::isnan(fitnesses[i])) {
      throw InvalidInput("rank: fitness " + std::to_string(i) + " is NaN");
    }
  }
  std::vector<std::size_t> order(fitnesses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return fitnesses[a] > fitnesses[b]; });
  return order;
}

RankedPopulation make_ranked(std::vector<Genome> genomes, std::vector<double> fitnesses) {
  if (genomes.size() != fitnesses.size()) {
    throw InvalidInput("make_ranked: genome and fitness counts differ");
  }
  RankedPopulation pop;
  pop.order = rank(fitnesses);
  pop.genomes = std::move(genomes);
  pop.fitnesses = std::move(fitnesses);
  return pop;
}

EsState es_update(const EsState& es, const RankedPopulation& pop, const RecombinationWeights& w) {
  if (pop.genomes.size() != w.size() || pop.order.size() != w.size()) {
    throw InvalidInput("es_update: population of " + std::to_string(pop.genomes.size()) +
                       " does not match " + std::to_string(w.size()) + " weights");
  }
  const Eigen::VectorXd& center = es.center.values();
  Eigen::VectorXd step = Eigen::VectorXd::Zero(center.size());
  for (std::size_t r = 0; r < w.size(); ++r) {
    // Zero-weight ranks contribute nothing; skipping them keeps the sum
    // independent of how many such individuals exist.
    if (w[r] == 0.0) continue;
    const Genome& g = pop.genomes[pop.order[r]];
    if (g.size() != es.center.size()) {
      throw InvalidInput("es_update: genome length differs from center");
    }
    step += w[r] * (g.values() - center);
  }
  EsState next = es;
  next.center = Genome(center + step);
  next.generation = es.generation + 1;
  return next;
}

}  // namespace gdr
