#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace gdr {

/// Named random substreams derived from one run seed.
///
/// Each engine is keyed by (seed, name, i, j) through a SplitMix64 mixing
/// chain, so a stream's draws depend only on its own key: consuming more
/// numbers from one stream never shifts another. The harness uses
///
///   "init"             (0, 0)    actor genome and critic initialisation
///   "es_sampling"      (g, 0)    ES population sampling in generation g
///   "exploration"      (g, i)    action noise for rollout i of generation g
///   "buffer_sampling"  (g, 0)    replay minibatch indices during training in g
///   "target_noise"     (g, 0)    TD3 target-policy smoothing noise in g
class RngTree {
 public:
  explicit RngTree(std::uint64_t seed) : seed_(seed) {}

  std::mt19937_64 stream(std::string_view name, std::uint64_t i = 0, std::uint64_t j = 0) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gdr
