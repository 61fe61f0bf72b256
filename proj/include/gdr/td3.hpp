#pragma once

#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Core>

#include "gdr/genome.hpp"
#include "gdr/mlp.hpp"
#include "gdr/replay_buffer.hpp"

namespace gdr {

/// Actor-loss penalty on the distance between actor and ES center.
struct RegularizationMode {
  enum class Kind { None, L2, SquaredL2 };

  Kind kind = Kind::None;
  double epsilon = 0.0;

  static RegularizationMode none() { return {}; }
  /// epsilon * ||actor - center||
  static RegularizationMode l2(double epsilon);
  /// epsilon * ||actor - center||^2
  static RegularizationMode squared_l2(double epsilon);
};

struct Td3Hyperparams {
  double gamma = 0.99;
  double tau = 0.005;
  double policy_noise = 0.2;
  double noise_clip = 0.5;
  int policy_delay = 2;
  double actor_lr = 1e-3;
  double critic_lr = 3e-4;
  int batch_size = 256;
};

/// First/second moment estimates for one parameter vector.
struct AdamMoments {
  Eigen::VectorXd m;
  Eigen::VectorXd v;
  std::int64_t t = 0;

  static AdamMoments zeros(Eigen::Index n) {
    return {Eigen::VectorXd::Zero(n), Eigen::VectorXd::Zero(n), 0};
  }
};

struct Td3State {
  PolicyArchitecture arch;
  MlpLayout critic_layout;  // (obs_dim + act_dim) -> hidden -> 1, linear output

  Genome actor;
  Eigen::VectorXd critic1;
  Eigen::VectorXd critic2;
  Genome target_actor;
  Eigen::VectorXd target_critic1;
  Eigen::VectorXd target_critic2;

  AdamMoments actor_opt;
  AdamMoments critic1_opt;
  AdamMoments critic2_opt;

  std::int64_t step = 0;  // critic steps taken
  RegularizationMode regularization;
  Td3Hyperparams hp;
};

/// Actor starts from `initial_actor`; critics are freshly initialised from `rng`
/// with the given hidden widths. Targets start as copies.
Td3State make_td3(const PolicyArchitecture& arch, std::span<const int> critic_hidden,
                  const Genome& initial_actor, const Td3Hyperparams& hp, RegularizationMode reg,
                  std::mt19937_64& rng);

MlpLayout actor_layout(const PolicyArchitecture& arch);

double critic_forward(const MlpLayout& critic_layout, const Eigen::VectorXd& critic_params,
                      std::span<const double> obs, std::span<const double> action);

/// Clipped double-Q targets with target-policy smoothing.
Eigen::VectorXd td3_target(const Batch& batch, const Td3State& state, std::mt19937_64& rng);

/// Twin critic loss mean[(Q1 - y)^2 + (Q2 - y)^2] for fixed targets y.
/// Gradients are written to grad1/grad2 when non-null.
double critic_loss(const Td3State& state, const Batch& batch, const Eigen::VectorXd& targets,
                   Eigen::VectorXd* grad1, Eigen::VectorXd* grad2);

/// One Adam step on both critics. Returns the loss before the step.
double critic_step(Td3State& state, const Batch& batch, std::mt19937_64& rng);

/// -mean Q1(s, actor(s)) plus the regularization term.
double actor_loss(const Td3State& state, const Batch& batch, const Genome& es_center);

/// actor_loss with its gradient w.r.t. the actor parameters (critic frozen).
double actor_loss_and_grad(const Td3State& state, const Batch& batch, const Genome& es_center,
                           Eigen::VectorXd& grad);

/// One Adam step on the actor, then soft updates of all three targets.
double actor_step(Td3State& state, const Batch& batch, const Genome& es_center);

/// target <- (1 - tau) target + tau source
void soft_update(Eigen::Ref<Eigen::VectorXd> target, const Eigen::VectorXd& source, double tau);

/// Adam, beta1 = 0.9, beta2 = 0.999, eps = 1e-8, bias-corrected.
void optimizer_step(Eigen::Ref<Eigen::VectorXd> params, const Eigen::VectorXd& grads, AdamMoments& moments,
                    double lr);

/// n_steps of {sample batch, critic step, delayed actor step}.
void td3_train(Td3State& state, const ReplayBuffer& buffer, int n_steps, const Genome& es_center,
               std::mt19937_64& sample_rng, std::mt19937_64& noise_rng);

}  // namespace gdr
