#include "gdr/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "gdr/error.hpp"

namespace gdr {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("invalid value for key '" + std::string(key) + "': '" + std::string(value) + "' (" +
                    std::string(why) + ")");
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) bad_value(key, value, "not a number");
  return out;
}

int parse_int(std::string_view key, std::string_view value) { return parse_number<int>(key, value); }
double parse_double(std::string_view key, std::string_view value) { return parse_number<double>(key, value); }

std::vector<int> parse_widths(std::string_view key, std::string_view value) {
  std::vector<int> widths;
  while (!value.empty()) {
    const auto comma = value.find(',');
    widths.push_back(parse_int(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  if (widths.empty()) bad_value(key, value, "empty layer list");
  return widths;
}

}  // namespace

std::string_view algo_name(Algo a) {
  switch (a) {
    case Algo::Es: return "es";
    case Algo::EsInject: return "es_inject";
    case Algo::EsClip: return "es_clip";
    case Algo::EsGdr: return "es_gdr";
    case Algo::EsGdr2: return "es_gdr2";
    case Algo::ParallelTd3: return "parallel_td3";
  }
  return "?";
}

Algo parse_algo(std::string_view name) {
  for (Algo a : {Algo::Es, Algo::EsInject, Algo::EsClip, Algo::EsGdr, Algo::EsGdr2, Algo::ParallelTd3}) {
    if (algo_name(a) == name) return a;
  }
  throw ConfigError("invalid value for key 'algo': '" + std::string(name) + "'");
}

void apply_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "algo") cfg.algo = parse_algo(value);
  else if (key == "env") cfg.env = std::string(value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "generations") cfg.generations = parse_int(key, value);
  else if (key == "lambda") cfg.lambda = parse_int(key, value);
  else if (key == "mu") cfg.mu = parse_int(key, value);
  else if (key == "sigma") cfg.sigma = parse_double(key, value);
  else if (key == "epsilon") cfg.epsilon = parse_double(key, value);
  else if (key == "clip_factor") cfg.clip_factor = parse_double(key, value);
  else if (key == "gamma") cfg.td3.gamma = parse_double(key, value);
  else if (key == "tau") cfg.td3.tau = parse_double(key, value);
  else if (key == "policy_noise") cfg.td3.policy_noise = parse_double(key, value);
  else if (key == "noise_clip") cfg.td3.noise_clip = parse_double(key, value);
  else if (key == "policy_delay") cfg.td3.policy_delay = parse_int(key, value);
  else if (key == "actor_lr") cfg.td3.actor_lr = parse_double(key, value);
  else if (key == "critic_lr") cfg.td3.critic_lr = parse_double(key, value);
  else if (key == "batch_size") cfg.td3.batch_size = parse_int(key, value);
  else if (key == "buffer_size") cfg.buffer_size = parse_number<std::size_t>(key, value);
  else if (key == "n_steps") cfg.n_steps = parse_int(key, value);
  else if (key == "exploration_std") cfg.exploration_std = parse_double(key, value);
  else if (key == "eval_every") cfg.eval_every = parse_int(key, value);
  else if (key == "eval_reps") cfg.eval_reps = parse_int(key, value);
  else if (key == "hidden") cfg.hidden = parse_widths(key, value);
  else if (key == "critic_hidden") cfg.critic_hidden = parse_widths(key, value);
  else if (key == "threads") cfg.threads = parse_int(key, value);
  else if (key == "output") cfg.output = std::string(value);
  else throw ConfigError("unknown key: " + std::string(key));
}

void RunConfig::validate() const {
  auto require = [](bool ok, const char* key, const char* why) {
    if (!ok) throw ConfigError(std::string("invalid value for key '") + key + "': " + why);
  };
  require(env == "static_target" || env == "point_mass" || env == "pendulum", "env",
          "expected static_target, point_mass or pendulum");
  require(generations >= 0, "generations", "must be >= 0");
  const bool injects = algo == Algo::EsInject || algo == Algo::EsClip || algo == Algo::EsGdr || algo == Algo::EsGdr2;
  require(lambda >= (injects ? 2 : 1), "lambda", injects ? "must be >= 2 with injection" : "must be >= 1");
  if (algo != Algo::ParallelTd3) {
    require(mu >= 1 && mu <= lambda, "mu", "must satisfy 1 <= mu <= lambda");
  }
  require(sigma > 0.0, "sigma", "must be positive");
  require(epsilon >= 0.0, "epsilon", "must be >= 0");
  require(clip_factor > 0.0, "clip_factor", "must be positive");
  require(td3.gamma >= 0.0 && td3.gamma <= 1.0, "gamma", "must be in [0, 1]");
  require(td3.tau >= 0.0 && td3.tau <= 1.0, "tau", "must be in [0, 1]");
  require(td3.policy_noise >= 0.0, "policy_noise", "must be >= 0");
  require(td3.noise_clip >= 0.0, "noise_clip", "must be >= 0");
  require(td3.policy_delay >= 1, "policy_delay", "must be >= 1");
  require(td3.actor_lr > 0.0, "actor_lr", "must be positive");
  require(td3.critic_lr > 0.0, "critic_lr", "must be positive");
  require(td3.batch_size >= 1, "batch_size", "must be >= 1");
  require(buffer_size >= 1, "buffer_size", "must be >= 1");
  require(n_steps >= 0, "n_steps", "must be >= 0");
  require(exploration_std >= 0.0, "exploration_std", "must be >= 0");
  require(eval_every >= 1, "eval_every", "must be >= 1");
  require(eval_reps >= 1, "eval_reps", "must be >= 1");
  for (int w : hidden) require(w >= 1, "hidden", "widths must be positive");
  for (int w : critic_hidden) require(w >= 1, "critic_hidden", "widths must be positive");
  require(threads >= 1, "threads", "must be >= 1");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("parse error at line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("parse error at line " + std::to_string(line_no) + ": empty key or value");
    }
    if (!seen.emplace(key).second) {
      throw ConfigError("parse error at line " + std::to_string(line_no) + ": duplicate key '" +
                        std::string(key) + "'");
    }
    apply_config_value(cfg, key, value);
  }
  if (!seen.contains("algo")) {
    throw ConfigError("missing key: algo");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read config file: " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace gdr
