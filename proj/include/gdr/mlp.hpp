#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <Eigen/Core>

namespace gdr {

enum class OutputActivation { Tanh, Linear };

/// Dense ReLU network over a flat parameter vector, shared by the actor and
/// the critics. dims = {input, hidden..., output}.
struct MlpLayout {
  std::vector<int> dims;
  OutputActivation output = OutputActivation::Linear;

  std::size_t num_layers() const { return dims.size() - 1; }
  std::size_t param_count() const;
  int input_dim() const { return dims.front(); }
  int output_dim() const { return dims.back(); }
};

/// Activations kept by a forward pass for the backward pass.
/// inputs[l] is the input to layer l (inputs[0] is the network input),
/// outputs is the final post-activation.
struct MlpTape {
  std::vector<Eigen::MatrixXd> inputs;
  Eigen::MatrixXd outputs;
};

/// Batched forward pass; columns of `input` are samples.
Eigen::MatrixXd mlp_forward(const MlpLayout& layout, const Eigen::VectorXd& params,
                            const Eigen::MatrixXd& input, MlpTape* tape = nullptr);

/// Reverse pass. grad_output is dLoss/dOutput (post-activation), one column per
/// sample. Adds dLoss/dParams into *grad_params when non-null and returns
/// dLoss/dInput.
Eigen::MatrixXd mlp_backward(const MlpLayout& layout, const Eigen::VectorXd& params,
                             const MlpTape& tape, const Eigen::MatrixXd& grad_output,
                             Eigen::VectorXd* grad_params);

/// Same scheme as init_genome: fan-in uniform weights, zero biases.
Eigen::VectorXd mlp_init(const MlpLayout& layout, std::mt19937_64& rng);

}  // namespace gdr
