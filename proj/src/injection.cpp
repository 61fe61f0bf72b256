#include "gdr/injection.hpp"

#include <cmath>
#include <string>

#include "gdr/error.hpp"

namespace gdr {

InjectionMode InjectionMode::clipped(double clip_factor) {
  if (!(clip_factor > 0.0)) {
    throw InvalidInput("InjectionMode: clip_factor must be positive");
  }
  return {Kind::Clipped, clip_factor};
}

double clip_radius(const InjectionMode& mode, const EsState& es) {
  return mode.clip_factor * es.sigma * std::sqrt(static_cast<double>(es.center.size()));
}

std::vector<Genome> inject(std::vector<Genome> samples, const Genome& actor, const InjectionMode& mode,
                           const EsState& es) {
  if (mode.kind == InjectionMode::Kind::NoInjection) {
    return samples;
  }
  if (actor.size() != es.center.size()) {
    throw InvalidInput("inject: actor has " + std::to_string(actor.size()) + " parameters, center has " +
                       std::to_string(es.center.size()));
  }
  for (const Genome& g : samples) {
    if (g.size() != es.center.size()) {
      throw InvalidInput("inject: sampled genome length differs from center");
    }
  }
  if (mode.kind == InjectionMode::Kind::Standard) {
    samples.push_back(actor);
  } else {
    samples.push_back(clip_deviation(actor, es.center, clip_radius(mode, es)));
  }
  return samples;
}

namespace {

double deviation_norm(const Eigen::VectorXd& point, const Eigen::VectorXd& center) {
  const Eigen::VectorXd dev = point - center;
  return dev.norm();
}

}  // namespace

Genome clip_deviation(const Genome& actor, const Genome& center, double max_norm) {
  if (actor.size() != center.size()) {
    throw InvalidInput("clip_deviation: genome lengths differ");
  }
  if (!(max_norm > 0.0)) {
    throw InvalidInput("clip_deviation: max_norm must be positive");
  }
  const double norm = deviation_norm(actor.values(), center.values());
  if (norm <= max_norm) {
    return actor;
  }
  // The rescaled point must land inside the ball after rounding, otherwise a
  // second clip would move it again.
  const Eigen::VectorXd dev = actor.values() - center.values();
  double scale = max_norm / norm;
  Eigen::VectorXd out = center.values() + dev * scale;
  while (deviation_norm(out, center.values()) > max_norm) {
    scale = std::nextafter(scale, 0.0);
    out = center.values() + dev * scale;
  }
  return Genome(std::move(out));
}

DriftSample measure_drift(const Genome& actor, const EsState& es, const RankedPopulation& pop,
                          const RecombinationWeights& w, std::optional<std::size_t> actor_index) {
  DriftSample s;
  s.generation = es.generation;
  s.distance = l2_distance(actor, es.center);
  if (actor_index.has_value()) {
    s.actor_weight = w[pop.rank_of(*actor_index)];
  }
  return s;
}

}  // namespace gdr
