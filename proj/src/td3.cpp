#include "gdr/td3.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdr/error.hpp"

namespace gdr {
namespace {

constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

Eigen::MatrixXd stack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

void check_batch(const Td3State& state, const Batch& batch) {
  if (batch.size() == 0) {
    throw InvalidInput("td3: empty batch");
  }
  if (batch.states.rows() != state.arch.obs_dim || batch.actions.rows() != state.arch.act_dim) {
    throw InvalidInput("td3: batch dimensions do not match the architecture");
  }
}

}  // namespace

RegularizationMode RegularizationMode::l2(double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidInput("RegularizationMode: epsilon must be >= 0");
  return {Kind::L2, epsilon};
}

RegularizationMode RegularizationMode::squared_l2(double epsilon) {
  if (!(epsilon >= 0.0)) throw InvalidInput("RegularizationMode: epsilon must be >= 0");
  return {Kind::SquaredL2, epsilon};
}

MlpLayout actor_layout(const PolicyArchitecture& arch) {
  return MlpLayout{arch.layer_dims(), OutputActivation::Tanh};
}

Td3State make_td3(const PolicyArchitecture& arch, std::span<const int> critic_hidden,
                  const Genome& initial_actor, const Td3Hyperparams& hp, RegularizationMode reg,
                  std::mt19937_64& rng) {
  arch.validate();
  if (initial_actor.size() != param_count(arch)) {
    throw InvalidInput("make_td3: initial actor does not match architecture");
  }
  if (critic_hidden.empty()) {
    throw InvalidInput("make_td3: critic needs at least one hidden layer");
  }
  Td3State s;
  s.arch = arch;
  s.critic_layout.dims.push_back(arch.obs_dim + arch.act_dim);
  s.critic_layout.dims.insert(s.critic_layout.dims.end(), critic_hidden.begin(), critic_hidden.end());
  s.critic_layout.dims.push_back(1);
  s.critic_layout.output = OutputActivation::Linear;

  s.actor = initial_actor;
  s.target_actor = initial_actor;
  s.critic1 = mlp_init(s.critic_layout, rng);
  s.critic2 = mlp_init(s.critic_layout, rng);
  s.target_critic1 = s.critic1;
  s.target_critic2 = s.critic2;

  s.actor_opt = AdamMoments::zeros(static_cast<Eigen::Index>(initial_actor.size()));
  s.critic1_opt = AdamMoments::zeros(s.critic1.size());
  s.critic2_opt = AdamMoments::zeros(s.critic2.size());
  s.regularization = reg;
  s.hp = hp;
  return s;
}

double critic_forward(const MlpLayout& critic_layout, const Eigen::VectorXd& critic_params,
                      std::span<const double> obs, std::span<const double> action) {
  const auto in = obs.size() + action.size();
  if (in != static_cast<std::size_t>(critic_layout.input_dim())) {
    throw InvalidInput("critic_forward: obs+action has " + std::to_string(in) + " entries, expected " +
                       std::to_string(critic_layout.input_dim()));
  }
  Eigen::MatrixXd x(static_cast<Eigen::Index>(in), 1);
  Eigen::Index i = 0;
  for (double v : obs) x(i++, 0) = v;
  for (double v : action) x(i++, 0) = v;
  return mlp_forward(critic_layout, critic_params, x)(0, 0);
}

Eigen::VectorXd td3_target(const Batch& batch, const Td3State& state, std::mt19937_64& rng) {
  check_batch(state, batch);
  const Td3Hyperparams& hp = state.hp;
  Eigen::MatrixXd next_actions =
      mlp_forward(actor_layout(state.arch), state.target_actor.values(), batch.next_states);
  std::normal_distribution<double> noise(0.0, hp.policy_noise);
  for (Eigen::Index j = 0; j < next_actions.cols(); ++j) {
    for (Eigen::Index i = 0; i < next_actions.rows(); ++i) {
      const double eps = hp.policy_noise > 0.0 ? std::clamp(noise(rng), -hp.noise_clip, hp.noise_clip) : 0.0;
      next_actions(i, j) = std::clamp(next_actions(i, j) + eps, -1.0, 1.0);
    }
  }
  const Eigen::MatrixXd sa = stack(batch.next_states, next_actions);
  const Eigen::MatrixXd q1 = mlp_forward(state.critic_layout, state.target_critic1, sa);
  const Eigen::MatrixXd q2 = mlp_forward(state.critic_layout, state.target_critic2, sa);
  const Eigen::VectorXd q_min = q1.row(0).cwiseMin(q2.row(0)).transpose();
  return batch.rewards.array() + (1.0 - batch.dones.array()) * hp.gamma * q_min.array();
}

double critic_loss(const Td3State& state, const Batch& batch, const Eigen::VectorXd& targets,
                   Eigen::VectorXd* grad1, Eigen::VectorXd* grad2) {
  check_batch(state, batch);
  const double n = static_cast<double>(batch.size());
  const Eigen::MatrixXd sa = stack(batch.states, batch.actions);

  MlpTape tape1, tape2;
  const Eigen::MatrixXd q1 = mlp_forward(state.critic_layout, state.critic1, sa, &tape1);
  const Eigen::MatrixXd q2 = mlp_forward(state.critic_layout, state.critic2, sa, &tape2);
  const Eigen::RowVectorXd r1 = q1.row(0) - targets.transpose();
  const Eigen::RowVectorXd r2 = q2.row(0) - targets.transpose();
  const double loss = (r1.squaredNorm() + r2.squaredNorm()) / n;

  if (grad1 != nullptr) {
    grad1->setZero(state.critic1.size());
    mlp_backward(state.critic_layout, state.critic1, tape1, (2.0 / n) * r1, grad1);
  }
  if (grad2 != nullptr) {
    grad2->setZero(state.critic2.size());
    mlp_backward(state.critic_layout, state.critic2, tape2, (2.0 / n) * r2, grad2);
  }
  return loss;
}

double critic_step(Td3State& state, const Batch& batch, std::mt19937_64& rng) {
  const Eigen::VectorXd y = td3_target(batch, state, rng);
  Eigen::VectorXd g1, g2;
  const double loss = critic_loss(state, batch, y, &g1, &g2);
  if (!std::isfinite(loss)) {
    throw NumericError("critic_step: non-finite critic loss at step " + std::to_string(state.step));
  }
  optimizer_step(state.critic1, g1, state.critic1_opt, state.hp.critic_lr);
  optimizer_step(state.critic2, g2, state.critic2_opt, state.hp.critic_lr);
  return loss;
}

namespace {

double regularizer(const RegularizationMode& reg, double distance) {
  switch (reg.kind) {
    case RegularizationMode::Kind::None:
      return 0.0;
    case RegularizationMode::Kind::L2:
      return reg.epsilon * distance;
    case RegularizationMode::Kind::SquaredL2:
      return reg.epsilon * distance * distance;
  }
  return 0.0;
}

double regularized_distance(const Td3State& state, const Genome& es_center) {
  if (es_center.size() != state.actor.size()) {
    throw InvalidInput("actor_loss: ES center length differs from actor");
  }
  return l2_distance(state.actor, es_center);
}

}  // namespace

double actor_loss(const Td3State& state, const Batch& batch, const Genome& es_center) {
  check_batch(state, batch);
  const double distance = regularized_distance(state, es_center);
  const Eigen::MatrixXd actions = mlp_forward(actor_layout(state.arch), state.actor.values(), batch.states);
  const Eigen::MatrixXd q = mlp_forward(state.critic_layout, state.critic1, stack(batch.states, actions));
  const double base = -q.row(0).mean();
  if (state.regularization.kind == RegularizationMode::Kind::None || state.regularization.epsilon == 0.0) {
    return base;
  }
  return base + regularizer(state.regularization, distance);
}

double actor_loss_and_grad(const Td3State& state, const Batch& batch, const Genome& es_center,
                           Eigen::VectorXd& grad) {
  check_batch(state, batch);
  const double distance = regularized_distance(state, es_center);
  const MlpLayout layout = actor_layout(state.arch);
  const double n = static_cast<double>(batch.size());

  MlpTape actor_tape, critic_tape;
  const Eigen::MatrixXd actions = mlp_forward(layout, state.actor.values(), batch.states, &actor_tape);
  const Eigen::MatrixXd q =
      mlp_forward(state.critic_layout, state.critic1, stack(batch.states, actions), &critic_tape);
  double loss = -q.row(0).mean();

  const Eigen::MatrixXd dq = Eigen::MatrixXd::Constant(1, batch.size(), -1.0 / n);
  const Eigen::MatrixXd d_input = mlp_backward(state.critic_layout, state.critic1, critic_tape, dq, nullptr);
  grad.setZero(static_cast<Eigen::Index>(state.actor.size()));
  mlp_backward(layout, state.actor.values(), actor_tape, d_input.bottomRows(state.arch.act_dim), &grad);

  const RegularizationMode& reg = state.regularization;
  if (reg.kind == RegularizationMode::Kind::None || reg.epsilon == 0.0) {
    return loss;
  }
  loss += regularizer(reg, distance);
  const Eigen::VectorXd dev = state.actor.values() - es_center.values();
  if (reg.kind == RegularizationMode::Kind::L2) {
    // Subgradient zero at the non-differentiable point dev = 0.
    if (distance > 0.0) grad += (reg.epsilon / distance) * dev;
  } else {
    grad += (2.0 * reg.epsilon) * dev;
  }
  return loss;
}

double actor_step(Td3State& state, const Batch& batch, const Genome& es_center) {
  Eigen::VectorXd grad;
  const double loss = actor_loss_and_grad(state, batch, es_center, grad);
  if (!grad.allFinite()) {
    throw NumericError("actor_step: non-finite actor gradient at step " + std::to_string(state.step));
  }
  optimizer_step(state.actor.values(), grad, state.actor_opt, state.hp.actor_lr);
  soft_update(state.target_actor.values(), state.actor.values(), state.hp.tau);
  soft_update(state.target_critic1, state.critic1, state.hp.tau);
  soft_update(state.target_critic2, state.critic2, state.hp.tau);
  return loss;
}

void soft_update(Eigen::Ref<Eigen::VectorXd> target, const Eigen::VectorXd& source, double tau) {
  if (target.size() != source.size()) {
    throw InvalidInput("soft_update: shape mismatch (" + std::to_string(target.size()) + " vs " +
                       std::to_string(source.size()) + ")");
  }
  target = (1.0 - tau) * target + tau * source;
}

void optimizer_step(Eigen::Ref<Eigen::VectorXd> params, const Eigen::VectorXd& grads, AdamMoments& moments,
                    double lr) {
  if (params.size() != grads.size() || moments.m.size() != grads.size() || moments.v.size() != grads.size()) {
    throw InvalidInput("optimizer_step: shape mismatch");
  }
  if (!grads.allFinite()) {
    throw NumericError("optimizer_step: non-finite gradient");
  }
  moments.t += 1;
  moments.m = kAdamBeta1 * moments.m + (1.0 - kAdamBeta1) * grads;
  moments.v = kAdamBeta2 * moments.v + (1.0 - kAdamBeta2) * grads.cwiseAbs2();
  const double c1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(moments.t));
  const double c2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(moments.t));
  params.array() -= lr * (moments.m.array() / c1) / ((moments.v.array() / c2).sqrt() + kAdamEps);
}

void td3_train(Td3State& state, const ReplayBuffer& buffer, int n_steps, const Genome& es_center,
               std::mt19937_64& sample_rng, std::mt19937_64& noise_rng) {
  if (n_steps <= 0) return;
  if (buffer.empty()) {
    throw StateError("td3_train: replay buffer is empty");
  }
  const auto batch_size = static_cast<std::size_t>(state.hp.batch_size);
  for (int i = 0; i < n_steps; ++i) {
    const Batch batch = buffer.sample_batch(batch_size, sample_rng);
    critic_step(state, batch, noise_rng);
    state.step += 1;
    if (state.step % state.hp.policy_delay == 0) {
      actor_step(state, batch, es_center);
    }
  }
}

}  // namespace gdr
