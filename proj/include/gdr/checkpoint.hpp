#pragma once

#include <iosfwd>

#include "gdr/td3.hpp"

namespace gdr {

// Layout: "GDRCKPT1", u64 count K, K x i64 header
//   [obs_dim, act_dim, n_hidden, hidden..., n_critic_hidden, critic_hidden...,
//    step, actor_t, critic1_t, critic2_t]
// followed by twelve genome records (u64 length + f64 values): actor, critic1,
// critic2, target_actor, target_critic1, target_critic2, then m and v for the
// actor, critic1 and critic2 optimizers. Hyperparameters and the
// regularization mode belong to the run config and are not stored.
void save_checkpoint(std::ostream& out, const Td3State& state);

/// Throws InvalidInput on a bad magic, truncation or inconsistent shapes.
Td3State load_checkpoint(std::istream& in, const Td3Hyperparams& hp, RegularizationMode reg);

}  // namespace gdr
