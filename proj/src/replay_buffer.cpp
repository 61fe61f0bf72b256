#include "gdr/replay_buffer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdr/error.hpp"

namespace gdr {
namespace {

bool finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

Batch make_batch(const std::vector<Transition>& transitions) {
  Batch b;
  if (transitions.empty()) return b;
  const auto n = static_cast<Eigen::Index>(transitions.size());
  const auto obs = static_cast<Eigen::Index>(transitions.front().state.size());
  const auto act = static_cast<Eigen::Index>(transitions.front().action.size());
  b.states.resize(obs, n);
  b.actions.resize(act, n);
  b.next_states.resize(obs, n);
  b.rewards.resize(n);
  b.dones.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Transition& t = transitions[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < obs; ++i) {
      b.states(i, j) = t.state[static_cast<std::size_t>(i)];
      b.next_states(i, j) = t.next_state[static_cast<std::size_t>(i)];
    }
    for (Eigen::Index i = 0; i < act; ++i) b.actions(i, j) = t.action[static_cast<std::size_t>(i)];
    b.rewards[j] = t.reward;
    b.dones[j] = t.done ? 1.0 : 0.0;
  }
  return b;
}

ReplayBuffer::ReplayBuffer(int obs_dim, int act_dim, std::size_t capacity)
    : obs_dim_(obs_dim), act_dim_(act_dim), capacity_(capacity) {
  if (obs_dim <= 0 || act_dim <= 0 || capacity == 0) {
    throw InvalidInput("ReplayBuffer: dimensions and capacity must be positive");
  }
}

void ReplayBuffer::push(const Transition& t) {
  if (t.state.size() != static_cast<std::size_t>(obs_dim_) ||
      t.next_state.size() != static_cast<std::size_t>(obs_dim_) ||
      t.action.size() != static_cast<std::size_t>(act_dim_)) {
    throw InvalidInput("ReplayBuffer::push: transition dimensions do not match buffer (obs " +
                       std::to_string(obs_dim_) + ", act " + std::to_string(act_dim_) + ")");
  }
  if (!finite(t.state) || !finite(t.action) || !finite(t.next_state) || !std::isfinite(t.reward)) {
    throw InvalidInput("ReplayBuffer::push: non-finite transition");
  }
  // Storage grows lazily up to capacity.
  if (size_ < capacity_ && data_.size() < (size_ + 1) * stride()) {
    data_.resize((size_ + 1) * stride());
  }
  double* row = data_.data() + cursor_ * stride();
  row = std::copy(t.state.begin(), t.state.end(), row);
  row = std::copy(t.action.begin(), t.action.end(), row);
  *row++ = t.reward;
  row = std::copy(t.next_state.begin(), t.next_state.end(), row);
  *row = t.done ? 1.0 : 0.0;

  cursor_ = (cursor_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
}

Transition ReplayBuffer::row(std::size_t slot) const {
  const double* p = data_.data() + slot * stride();
  Transition t;
  t.state.assign(p, p + obs_dim_);
  p += obs_dim_;
  t.action.assign(p, p + act_dim_);
  p += act_dim_;
  t.reward = *p++;
  t.next_state.assign(p, p + obs_dim_);
  p += obs_dim_;
  t.done = *p != 0.0;
  return t;
}

Transition ReplayBuffer::at(std::size_t i) const {
  if (i >= size_) {
    throw InvalidInput("ReplayBuffer::at: index out of range");
  }
  const std::size_t oldest = size_ < capacity_ ? 0 : cursor_;
  return row((oldest + i) % capacity_);
}

std::vector<std::size_t> ReplayBuffer::draw_slots(std::size_t batch, std::mt19937_64& rng) const {
  if (size_ == 0) {
    throw StateError("ReplayBuffer: cannot sample from an empty buffer");
  }
  std::uniform_int_distribution<std::size_t> pick(0, size_ - 1);
  std::vector<std::size_t> slots(batch);
  for (auto& s : slots) s = pick(rng);
  return slots;
}

std::vector<Transition> ReplayBuffer::sample(std::size_t batch, std::mt19937_64& rng) const {
  std::vector<Transition> out;
  out.reserve(batch);
  for (std::size_t s : draw_slots(batch, rng)) out.push_back(row(s));
  return out;
}

Batch ReplayBuffer::sample_batch(std::size_t batch, std::mt19937_64& rng) const {
  const auto slots = draw_slots(batch, rng);
  const auto n = static_cast<Eigen::Index>(batch);
  Batch b;
  b.states.resize(obs_dim_, n);
  b.actions.resize(act_dim_, n);
  b.next_states.resize(obs_dim_, n);
  b.rewards.resize(n);
  b.dones.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double* p = data_.data() + slots[static_cast<std::size_t>(j)] * stride();
    for (int i = 0; i < obs_dim_; ++i) b.states(i, j) = *p++;
    for (int i = 0; i < act_dim_; ++i) b.actions(i, j) = *p++;
    b.rewards[j] = *p++;
    for (int i = 0; i < obs_dim_; ++i) b.next_states(i, j) = *p++;
    b.dones[j] = *p;
  }
  return b;
}

}  // namespace gdr
