#include "gdr/envs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gdr/error.hpp"

namespace gdr {
namespace {

constexpr double kPointMassDt = 0.1;
constexpr double kPendulumDt = 0.05;
constexpr double kPendulumGravity = 10.0;
constexpr double kPendulumMaxTorque = 2.0;
constexpr double kPendulumMaxSpeed = 8.0;
constexpr int kStaticTargetDim = 2;

}  // namespace

EnvSpec make_static_target(int k) {
  if (k <= 0) throw InvalidInput("make_static_target: k must be positive");
  return {"static_target", EnvKind::StaticTarget, k, k, 1};
}

std::vector<double> static_target_goal(int k) {
  std::vector<double> t(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 0.5 : -0.5;
  return t;
}

EnvSpec make_env(std::string_view name) {
  if (name == "static_target") return make_static_target(kStaticTargetDim);
  if (name == "point_mass") return {"point_mass", EnvKind::PointMass, 4, 2, 100};
  if (name == "pendulum") return {"pendulum", EnvKind::Pendulum, 3, 1, 200};
  throw ConfigError("unknown environment: " + std::string(name));
}

double wrap_angle(double theta) {
  constexpr double pi = std::numbers::pi;
  double w = std::remainder(theta, 2.0 * pi);  // [-pi, pi]
  if (w <= -pi) w += 2.0 * pi;
  return w;
}

EnvState env_reset(const EnvSpec& spec) {
  switch (spec.kind) {
    case EnvKind::StaticTarget:
      return {std::vector<double>(static_cast<std::size_t>(spec.obs_dim), 1.0), 0};
    case EnvKind::PointMass:
      return {{1.0, 1.0, 0.0, 0.0}, 0};
    case EnvKind::Pendulum:
      return {{std::numbers::pi, 0.0}, 0};
  }
  throw ConfigError("env_reset: unknown environment kind");
}

std::vector<double> observe(const EnvSpec& spec, const EnvState& state) {
  if (spec.kind == EnvKind::Pendulum) {
    return {std::cos(state.x[0]), std::sin(state.x[0]), state.x[1]};
  }
  return state.x;
}

StepResult env_step(const EnvSpec& spec, const EnvState& state, std::span<const double> action) {
  if (action.size() != static_cast<std::size_t>(spec.act_dim)) {
    throw InvalidInput("env_step: action has " + std::to_string(action.size()) + " entries, expected " +
                       std::to_string(spec.act_dim));
  }
  std::vector<double> a(action.begin(), action.end());
  for (double& v : a) v = std::clamp(v, -1.0, 1.0);

  StepResult r;
  r.next = state;
  r.next.t = state.t + 1;
  switch (spec.kind) {
    case EnvKind::StaticTarget: {
      const std::vector<double> goal = static_target_goal(spec.act_dim);
      double sq = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) sq += (a[i] - goal[i]) * (a[i] - goal[i]);
      r.reward = -sq;
      break;
    }
    case EnvKind::PointMass: {
      auto& x = r.next.x;
      x[2] = state.x[2] + kPointMassDt * a[0];
      x[3] = state.x[3] + kPointMassDt * a[1];
      x[0] = state.x[0] + kPointMassDt * x[2];
      x[1] = state.x[1] + kPointMassDt * x[3];
      r.reward = -std::hypot(x[0], x[1]);
      break;
    }
    case EnvKind::Pendulum: {
      const double theta = state.x[0];
      const double torque = kPendulumMaxTorque * a[0];
      double omega = state.x[1] + kPendulumDt * (-kPendulumGravity * std::sin(theta) + torque);
      omega = std::clamp(omega, -kPendulumMaxSpeed, kPendulumMaxSpeed);
      const double next_theta = theta + kPendulumDt * omega;
      r.next.x = {next_theta, omega};
      const double wrapped = wrap_angle(next_theta);
      r.reward = -(wrapped * wrapped + 0.1 * omega * omega + 0.001 * torque * torque);
      break;
    }
  }
  r.done = r.next.t >= spec.horizon;
  return r;
}

RolloutResult rollout(const EnvSpec& spec, const PolicyArchitecture& arch, const Genome& genome,
                      double exploration_std, std::mt19937_64& rng, ReplayBuffer* buffer) {
  if (arch.obs_dim != spec.obs_dim || arch.act_dim != spec.act_dim) {
    throw InvalidInput("rollout: architecture dimensions do not match environment " + spec.name);
  }
  std::normal_distribution<double> noise(0.0, exploration_std > 0.0 ? exploration_std : 1.0);
  RolloutResult result;
  result.transitions.reserve(static_cast<std::size_t>(spec.horizon));
  EnvState state = env_reset(spec);
  std::vector<double> obs = observe(spec, state);
  for (int t = 0; t < spec.horizon; ++t) {
    std::vector<double> action = policy_forward(arch, genome, obs);
    if (exploration_std > 0.0) {
      for (double& v : action) v = std::clamp(v + noise(rng), -1.0, 1.0);
    }
    StepResult step = env_step(spec, state, action);
    std::vector<double> next_obs = observe(spec, step.next);
    result.fitness += step.reward;
    result.steps += 1;
    result.transitions.push_back({obs, action, step.reward, next_obs, step.done});
    if (buffer != nullptr) buffer->push(result.transitions.back());
    state = std::move(step.next);
    obs = std::move(next_obs);
    if (step.done) break;
  }
  return result;
}

}  // namespace gdr
