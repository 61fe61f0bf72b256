#pragma once

#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gdr/genome.hpp"
#include "gdr/replay_buffer.hpp"

namespace gdr {

enum class EnvKind { StaticTarget, PointMass, Pendulum };

/// Deterministic continuous-control task. Actions are bounded to [-1, 1].
struct EnvSpec {
  std::string name;
  EnvKind kind = EnvKind::StaticTarget;
  int obs_dim = 0;
  int act_dim = 0;
  int horizon = 1;
};

/// "static_target", "point_mass" or "pendulum". Throws ConfigError otherwise.
EnvSpec make_env(std::string_view name);
/// StaticTarget with k action dimensions; target components alternate +0.5, -0.5.
EnvSpec make_static_target(int k);
std::vector<double> static_target_goal(int k);

/// Internal simulator state; `t` counts steps taken.
struct EnvState {
  std::vector<double> x;  // static_target: ones(k); point_mass: (px, py, vx, vy); pendulum: (theta, omega)
  int t = 0;
};

struct StepResult {
  EnvState next;
  double reward = 0.0;
  bool done = false;
};

EnvState env_reset(const EnvSpec& spec);
std::vector<double> observe(const EnvSpec& spec, const EnvState& state);
/// Out-of-range action components are clamped to [-1, 1].
StepResult env_step(const EnvSpec& spec, const EnvState& state, std::span<const double> action);

/// Maps an angle to (-pi, pi].
double wrap_angle(double theta);

struct RolloutResult {
  double fitness = 0.0;  // undiscounted reward sum
  std::vector<Transition> transitions;
  int steps = 0;
};

/// Runs one episode of the policy. Gaussian action noise with std
/// exploration_std is added (then clamped) when positive. Transitions are
/// always returned and also pushed to `buffer` when one is given.
RolloutResult rollout(const EnvSpec& spec, const PolicyArchitecture& arch, const Genome& genome,
                      double exploration_std, std::mt19937_64& rng, ReplayBuffer* buffer = nullptr);

}  // namespace gdr
