#include "gdr/mlp.hpp"

#include <cmath>

#include "gdr/error.hpp"

namespace gdr {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstWeights = Eigen::Map<const RowMatrix>;
using Weights = Eigen::Map<RowMatrix>;

}  // namespace

std::size_t MlpLayout::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    n += static_cast<std::size_t>(dims[l] + 1) * static_cast<std::size_t>(dims[l + 1]);
  }
  return n;
}

Eigen::MatrixXd mlp_forward(const MlpLayout& layout, const Eigen::VectorXd& params,
                            const Eigen::MatrixXd& input, MlpTape* tape) {
  if (static_cast<std::size_t>(params.size()) != layout.param_count()) {
    throw InvalidInput("mlp_forward: parameter count mismatch");
  }
  if (input.rows() != layout.input_dim()) {
    throw InvalidInput("mlp_forward: input dimension mismatch");
  }
  if (tape != nullptr) {
    tape->inputs.clear();
    tape->inputs.reserve(layout.num_layers());
  }

  const double* p = params.data();
  Eigen::MatrixXd a = input;
  const std::size_t last = layout.num_layers() - 1;
  for (std::size_t l = 0; l <= last; ++l) {
    const int fan_in = layout.dims[l];
    const int fan_out = layout.dims[l + 1];
    ConstWeights w(p, fan_out, fan_in);
    Eigen::Map<const Eigen::VectorXd> b(p + fan_out * fan_in, fan_out);
    p += (fan_in + 1) * fan_out;

    Eigen::MatrixXd z(fan_out, a.cols());
    z.noalias() = w * a;
    z.colwise() += b;
    if (l < last) {
      z = z.cwiseMax(0.0);
    } else if (layout.output == OutputActivation::Tanh) {
      z = z.unaryExpr([](double v) { return std::tanh(v); });
    }
    if (tape != nullptr) {
      tape->inputs.push_back(std::move(a));
    }
    a = std::move(z);
  }
  if (tape != nullptr) {
    tape->outputs = a;
  }
  return a;
}

Eigen::MatrixXd mlp_backward(const MlpLayout& layout, const Eigen::VectorXd& params,
                             const MlpTape& tape, const Eigen::MatrixXd& grad_output,
                             Eigen::VectorXd* grad_params) {
  const std::size_t layers = layout.num_layers();
  if (tape.inputs.size() != layers) {
    throw InvalidInput("mlp_backward: tape does not match layout");
  }
  if (grad_params != nullptr && grad_params->size() != params.size()) {
    throw InvalidInput("mlp_backward: gradient buffer size mismatch");
  }

  // Offsets of each layer's weights in the flat vector.
  std::vector<std::size_t> offsets(layers);
  std::size_t off = 0;
  for (std::size_t l = 0; l < layers; ++l) {
    offsets[l] = off;
    off += static_cast<std::size_t>(layout.dims[l] + 1) * static_cast<std::size_t>(layout.dims[l + 1]);
  }

  Eigen::MatrixXd delta;
  if (layout.output == OutputActivation::Tanh) {
    delta = grad_output.cwiseProduct((1.0 - tape.outputs.array().square()).matrix());
  } else {
    delta = grad_output;
  }

  for (std::size_t l = layers; l-- > 0;) {
    const int fan_in = layout.dims[l];
    const int fan_out = layout.dims[l + 1];
    const Eigen::MatrixXd& x = tape.inputs[l];
    ConstWeights w(params.data() + offsets[l], fan_out, fan_in);
    if (grad_params != nullptr) {
      Weights gw(grad_params->data() + offsets[l], fan_out, fan_in);
      Eigen::Map<Eigen::VectorXd> gb(grad_params->data() + offsets[l] + fan_out * fan_in, fan_out);
      gw.noalias() += delta * x.transpose();
      gb += delta.rowwise().sum();
    }
    Eigen::MatrixXd grad_in(fan_in, delta.cols());
    grad_in.noalias() = w.transpose() * delta;
    if (l > 0) {
      // x is the ReLU output of layer l-1; its derivative is 1 where x > 0.
      delta = grad_in.cwiseProduct((x.array() > 0.0).cast<double>().matrix());
    } else {
      return grad_in;
    }
  }
  return {};
}

Eigen::VectorXd mlp_init(const MlpLayout& layout, std::mt19937_64& rng) {
  Eigen::VectorXd params = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.param_count()));
  double* p = params.data();
  for (std::size_t l = 0; l < layout.num_layers(); ++l) {
    const int fan_in = layout.dims[l];
    const int fan_out = layout.dims[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    std::uniform_real_distribution<double> dist(-bound, bound);
    for (int i = 0; i < fan_out * fan_in; ++i) {
      p[i] = dist(rng);
    }
    p += (fan_in + 1) * fan_out;  // biases stay zero
  }
  return params;
}

}  // namespace gdr
