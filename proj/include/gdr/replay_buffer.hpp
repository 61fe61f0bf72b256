#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace gdr {

struct Transition {
  std::vector<double> state;
  std::vector<double> action;
  double reward = 0.0;
  std::vector<double> next_state;
  bool done = false;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Column-per-sample view of a minibatch, ready for the batched networks.
struct Batch {
  Eigen::MatrixXd states;       // obs_dim x B
  Eigen::MatrixXd actions;      // act_dim x B
  Eigen::VectorXd rewards;      // B
  Eigen::MatrixXd next_states;  // obs_dim x B
  Eigen::VectorXd dones;        // B, 1.0 for terminal

  Eigen::Index size() const { return rewards.size(); }
};

Batch make_batch(const std::vector<Transition>& transitions);

/// Fixed-capacity FIFO ring of transitions stored in one flat array.
class ReplayBuffer {
 public:
  static constexpr std::size_t kDefaultCapacity = 1'000'000;

  ReplayBuffer(int obs_dim, int act_dim, std::size_t capacity = kDefaultCapacity);

  /// Throws InvalidInput on dimension mismatch or non-finite values.
  void push(const Transition& t);

  /// Uniform with replacement. Throws StateError when empty.
  std::vector<Transition> sample(std::size_t batch, std::mt19937_64& rng) const;
  Batch sample_batch(std::size_t batch, std::mt19937_64& rng) const;

  /// i-th oldest stored transition.
  Transition at(std::size_t i) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return size_ == 0; }
  int obs_dim() const { return obs_dim_; }
  int act_dim() const { return act_dim_; }

 private:
  Transition row(std::size_t slot) const;
  std::size_t stride() const { return static_cast<std::size_t>(2 * obs_dim_ + act_dim_ + 2); }
  std::vector<std::size_t> draw_slots(std::size_t batch, std::mt19937_64& rng) const;

  int obs_dim_;
  int act_dim_;
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::size_t cursor_ = 0;  // next slot to write
  std::vector<double> data_;
};

}  // namespace gdr
