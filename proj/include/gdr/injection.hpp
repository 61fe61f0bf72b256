#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gdr/es_core.hpp"
#include "gdr/genome.hpp"

namespace gdr {

struct InjectionMode {
  enum class Kind { NoInjection, Standard, Clipped };

  Kind kind = Kind::NoInjection;
  double clip_factor = 1.0;

  static InjectionMode none() { return {Kind::NoInjection, 1.0}; }
  static InjectionMode standard() { return {Kind::Standard, 1.0}; }
  /// Throws InvalidInput unless clip_factor > 0.
  static InjectionMode clipped(double clip_factor);
};

/// Per-generation genetic drift telemetry.
struct DriftSample {
  std::int64_t generation = 0;
  double distance = 0.0;      // ||actor - center||
  double actor_weight = 0.0;  // recombination weight at the actor's rank
};

/// Clip radius used by InjectionMode::Clipped: clip_factor * sigma * sqrt(n).
double clip_radius(const InjectionMode& mode, const EsState& es);

/// Appends the actor (raw or clipped) as the last population member.
/// NoInjection returns `samples` unchanged.
std::vector<Genome> inject(std::vector<Genome> samples, const Genome& actor, const InjectionMode& mode,
                           const EsState& es);

/// Scales actor - center down to max_norm if longer; direction is kept.
Genome clip_deviation(const Genome& actor, const Genome& center, double max_norm);

/// actor_index is the actor's slot in `pop`, or nullopt when it was not injected.
DriftSample measure_drift(const Genome& actor, const EsState& es, const RankedPopulation& pop,
                          const RecombinationWeights& w, std::optional<std::size_t> actor_index);

}  // namespace gdr
