#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace gdr {

/// Fixed MLP policy: ReLU hidden layers, tanh output.
struct PolicyArchitecture {
  int obs_dim = 1;
  int act_dim = 1;
  std::vector<int> hidden{128, 128};

  /// Throws InvalidInput if any dimension is non-positive or hidden is empty.
  void validate() const;
  /// obs_dim, hidden..., act_dim
  std::vector<int> layer_dims() const;
};

std::size_t param_count(const PolicyArchitecture& arch);

/// Flat parameter vector of one policy network. Layer-major order:
/// W_1 (row-major, fan_out x fan_in), b_1, W_2, b_2, ...
/// The length is fixed at construction.
class Genome {
 public:
  Genome() = default;
  explicit Genome(std::size_t n) : params_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n))) {}
  explicit Genome(Eigen::VectorXd params);

  std::size_t size() const { return static_cast<std::size_t>(params_.size()); }
  const Eigen::VectorXd& values() const { return params_; }
  Eigen::Ref<Eigen::VectorXd> values() { return params_; }
  double operator[](std::size_t i) const { return params_[static_cast<Eigen::Index>(i)]; }
  double& operator[](std::size_t i) { return params_[static_cast<Eigen::Index>(i)]; }

  bool all_finite() const { return params_.allFinite(); }

  friend bool operator==(const Genome& a, const Genome& b) {
    return a.params_.size() == b.params_.size() && a.params_ == b.params_;
  }

 private:
  Eigen::VectorXd params_;
};

/// Fan-in uniform weights in [-1/sqrt(fan_in), 1/sqrt(fan_in)], zero biases.
Genome init_genome(const PolicyArchitecture& arch, std::mt19937_64& rng);

/// Single-observation forward pass. Throws InvalidInput on dimension mismatch.
std::vector<double> policy_forward(const PolicyArchitecture& arch, const Genome& g,
                                   std::span<const double> obs);

/// Euclidean distance. Throws InvalidInput on length mismatch.
double l2_distance(const Genome& a, const Genome& b);

// Checkpoint encoding: u64 little-endian length followed by raw f64 values.
void write_genome(std::ostream& out, const Eigen::VectorXd& params);
Eigen::VectorXd read_genome(std::istream& in);

}  // namespace gdr
