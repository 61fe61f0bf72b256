#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "gdr/genome.hpp"

namespace gdr {

/// Canonical ES search distribution: isotropic Gaussian around `center`
/// with a step size that never adapts.
struct EsState {
  Genome center;
  double sigma = 10.0;
  std::int64_t generation = 0;
  int lambda = 100;
  int mu = 50;
};

/// Rank-indexed weights, best rank first. Nonincreasing, nonnegative,
/// zero past rank mu, sums to one.
struct RecombinationWeights {
  std::vector<double> w;

  std::size_t size() const { return w.size(); }
  double operator[](std::size_t rank) const { return w[rank]; }
};

/// Evaluated population. order[r] is the index of the genome at rank r.
struct RankedPopulation {
  std::vector<Genome> genomes;
  std::vector<double> fitnesses;
  std::vector<std::size_t> order;

  /// Rank of the genome stored at `index`.
  std::size_t rank_of(std::size_t index) const;
};

/// Log-rank weights: w_i proportional to ln(mu + 0.5) - ln(i) for i <= mu.
RecombinationWeights recombination_weights(int lambda, int mu);

/// `count` genomes center + sigma * z, z ~ N(0, I).
std::vector<Genome> sample_population(const EsState& es, int count, std::mt19937_64& rng);

/// Indices sorted by fitness, descending; ties keep ascending index order.
std::vector<std::size_t> rank(std::span<const double> fitnesses);

/// Builds a RankedPopulation from evaluated genomes.
RankedPopulation make_ranked(std::vector<Genome> genomes, std::vector<double> fitnesses);

/// center += sum_r w_r (genome at rank r - center). Sigma is untouched and
/// the generation counter advances by one.
EsState es_update(const EsState& es, const RankedPopulation& pop, const RecombinationWeights& w);

}  // namespace gdr
