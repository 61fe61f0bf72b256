#include "gdr/genome.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "gdr/error.hpp"
#include "gdr/mlp.hpp"

namespace gdr {
namespace {

MlpLayout policy_layout(const PolicyArchitecture& arch) {
  return MlpLayout{arch.layer_dims(), OutputActivation::Tanh};
}

static_assert(std::endian::native == std::endian::little,
              "checkpoint encoding assumes a little-endian host");

}  // namespace

void PolicyArchitecture::validate() const {
  if (obs_dim <= 0 || act_dim <= 0) {
    throw InvalidInput("PolicyArchitecture: obs_dim and act_dim must be positive");
  }
  if (hidden.empty()) {
    throw InvalidInput("PolicyArchitecture: hidden layer list is empty");
  }
  for (int w : hidden) {
    if (w <= 0) throw InvalidInput("PolicyArchitecture: hidden widths must be positive");
  }
}

std::vector<int> PolicyArchitecture::layer_dims() const {
  std::vector<int> dims;
  dims.reserve(hidden.size() + 2);
  dims.push_back(obs_dim);
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(act_dim);
  return dims;
}

std::size_t param_count(const PolicyArchitecture& arch) {
  arch.validate();
  return policy_layout(arch).param_count();
}

Genome::Genome(Eigen::VectorXd params) : params_(std::move(params)) {
  if (!params_.allFinite()) {
    throw InvalidInput("Genome: non-finite parameter");
  }
}

Genome init_genome(const PolicyArchitecture& arch, std::mt19937_64& rng) {
  arch.validate();
  return Genome(mlp_init(policy_layout(arch), rng));
}

std::vector<double> policy_forward(const PolicyArchitecture& arch, const Genome& g,
                                   std::span<const double> obs) {
  if (obs.size() != static_cast<std::size_t>(arch.obs_dim)) {
    throw InvalidInput("policy_forward: observation has " + std::to_string(obs.size()) +
                       " entries, expected " + std::to_string(arch.obs_dim));
  }
  if (g.size() != param_count(arch)) {
    throw InvalidInput("policy_forward: genome length does not match architecture");
  }
  Eigen::MatrixXd input(arch.obs_dim, 1);
  for (int i = 0; i < arch.obs_dim; ++i) input(i, 0) = obs[static_cast<std::size_t>(i)];
  const Eigen::MatrixXd out = mlp_forward(policy_layout(arch), g.values(), input);
  return {out.data(), out.data() + out.size()};
}

double l2_distance(const Genome& a, const Genome& b) {
  if (a.size() != b.size()) {
    throw InvalidInput("l2_distance: genome lengths differ (" + std::to_string(a.size()) +
                       " vs " + std::to_string(b.size()) + ")");
  }
  return (a.values() - b.values()).norm();
}

void write_genome(std::ostream& out, const Eigen::VectorXd& params) {
  const auto n = static_cast<std::uint64_t>(params.size());
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  out.write(reinterpret_cast<const char*>(params.data()),
            static_cast<std::streamsize>(n * sizeof(double)));
}

Eigen::VectorXd read_genome(std::istream& in) {
  std::uint64_t n = 0;
  if (!in.read(reinterpret_cast<char*>(&n), sizeof n)) {
    throw InvalidInput("read_genome: truncated length prefix");
  }
  Eigen::VectorXd params(static_cast<Eigen::Index>(n));
  if (!in.read(reinterpret_cast<char*>(params.data()),
               static_cast<std::streamsize>(n * sizeof(double)))) {
    throw InvalidInput("read_genome: truncated parameter block");
  }
  return params;
}

}  // namespace gdr
