#include "gdr/checkpoint.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <vector>

#include "gdr/error.hpp"

namespace gdr {
namespace {

constexpr std::array<char, 8> kMagic{'G', 'D', 'R', 'C', 'K', 'P', 'T', '1'};

void put_i64(std::ostream& out, std::int64_t v) { out.write(reinterpret_cast<const char*>(&v), sizeof v); }

std::int64_t take(const std::vector<std::int64_t>& header, std::size_t& pos) {
  if (pos >= header.size()) throw InvalidInput("load_checkpoint: header too short");
  return header[pos++];
}

Eigen::VectorXd read_sized(std::istream& in, std::size_t expected, const char* what) {
  Eigen::VectorXd v = read_genome(in);
  if (static_cast<std::size_t>(v.size()) != expected) {
    throw InvalidInput(std::string("load_checkpoint: ") + what + " has the wrong length");
  }
  return v;
}

}  // namespace

void save_checkpoint(std::ostream& out, const Td3State& state) {
  std::vector<std::int64_t> header;
  header.push_back(state.arch.obs_dim);
  header.push_back(state.arch.act_dim);
  header.push_back(static_cast<std::int64_t>(state.arch.hidden.size()));
  header.insert(header.end(), state.arch.hidden.begin(), state.arch.hidden.end());
  const auto& cd = state.critic_layout.dims;
  header.push_back(static_cast<std::int64_t>(cd.size() - 2));
  header.insert(header.end(), cd.begin() + 1, cd.end() - 1);
  header.push_back(state.step);
  header.push_back(state.actor_opt.t);
  header.push_back(state.critic1_opt.t);
  header.push_back(state.critic2_opt.t);

  out.write(kMagic.data(), kMagic.size());
  const auto k = static_cast<std::uint64_t>(header.size());
  out.write(reinterpret_cast<const char*>(&k), sizeof k);
  for (std::int64_t v : header) put_i64(out, v);

  for (const Eigen::VectorXd* v :
       {&state.actor.values(), &state.critic1, &state.critic2, &state.target_actor.values(),
        &state.target_critic1, &state.target_critic2, &state.actor_opt.m, &state.actor_opt.v,
        &state.critic1_opt.m, &state.critic1_opt.v, &state.critic2_opt.m, &state.critic2_opt.v}) {
    write_genome(out, *v);
  }
}

Td3State load_checkpoint(std::istream& in, const Td3Hyperparams& hp, RegularizationMode reg) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InvalidInput("load_checkpoint: bad magic");
  }
  std::uint64_t k = 0;
  if (!in.read(reinterpret_cast<char*>(&k), sizeof k) || k > 4096) {
    throw InvalidInput("load_checkpoint: bad header length");
  }
  std::vector<std::int64_t> header(k);
  if (!in.read(reinterpret_cast<char*>(header.data()), static_cast<std::streamsize>(k * sizeof(std::int64_t)))) {
    throw InvalidInput("load_checkpoint: truncated header");
  }

  std::size_t pos = 0;
  Td3State s;
  s.arch.obs_dim = static_cast<int>(take(header, pos));
  s.arch.act_dim = static_cast<int>(take(header, pos));
  s.arch.hidden.resize(static_cast<std::size_t>(take(header, pos)));
  for (int& w : s.arch.hidden) w = static_cast<int>(take(header, pos));
  s.arch.validate();
  std::vector<int> critic_hidden(static_cast<std::size_t>(take(header, pos)));
  for (int& w : critic_hidden) w = static_cast<int>(take(header, pos));
  s.critic_layout.dims.push_back(s.arch.obs_dim + s.arch.act_dim);
  s.critic_layout.dims.insert(s.critic_layout.dims.end(), critic_hidden.begin(), critic_hidden.end());
  s.critic_layout.dims.push_back(1);
  s.critic_layout.output = OutputActivation::Linear;
  s.step = take(header, pos);
  s.actor_opt.t = take(header, pos);
  s.critic1_opt.t = take(header, pos);
  s.critic2_opt.t = take(header, pos);

  const std::size_t na = param_count(s.arch);
  const std::size_t nc = s.critic_layout.param_count();
  s.actor = Genome(read_sized(in, na, "actor"));
  s.critic1 = read_sized(in, nc, "critic1");
  s.critic2 = read_sized(in, nc, "critic2");
  s.target_actor = Genome(read_sized(in, na, "target actor"));
  s.target_critic1 = read_sized(in, nc, "target critic1");
  s.target_critic2 = read_sized(in, nc, "target critic2");
  s.actor_opt.m = read_sized(in, na, "actor m");
  s.actor_opt.v = read_sized(in, na, "actor v");
  s.critic1_opt.m = read_sized(in, nc, "critic1 m");
  s.critic1_opt.v = read_sized(in, nc, "critic1 v");
  s.critic2_opt.m = read_sized(in, nc, "critic2 m");
  s.critic2_opt.v = read_sized(in, nc, "critic2 v");
  s.hp = hp;
  s.regularization = reg;
  return s;
}

}  // namespace gdr
