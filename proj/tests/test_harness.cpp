#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "gdr/config.hpp"
#include "gdr/csv.hpp"
#include "gdr/error.hpp"
#include "gdr/harness.hpp"
#include "gdr/rng.hpp"

namespace {

gdr::RunConfig small_config(gdr::Algo algo) {
  gdr::RunConfig cfg;
  cfg.algo = algo;
  cfg.env = "static_target";
  cfg.seed = 3;
  cfg.generations = 4;
  cfg.lambda = 6;
  cfg.mu = 3;
  cfg.sigma = 0.5;
  cfg.hidden = {8};
  cfg.critic_hidden = {16};
  cfg.n_steps = 5;
  cfg.td3.batch_size = 8;
  cfg.eval_every = 2;
  return cfg;
}

std::string csv_of(const std::vector<gdr::GenerationLog>& logs) {
  std::ostringstream os;
  gdr::write_csv(os, logs);
  return os.str();
}

}  // namespace

TEST_CASE("config parsing") {
  SUBCASE("algo is required") {
    try {
      gdr::parse_config("");
      FAIL("expected ConfigError");
    } catch (const gdr::ConfigError& e) {
      CHECK(std::string(e.what()).find("missing key: algo") != std::string::npos);
    }
    CHECK_THROWS_AS(gdr::parse_config("sigma = 10"), gdr::ConfigError);
  }
  SUBCASE("values and defaults") {
    const auto cfg = gdr::parse_config("# comment\nalgo = es_gdr\nepsilon = 0.01\n\nhidden = 16,16\n");
    CHECK(cfg.algo == gdr::Algo::EsGdr);
    CHECK(cfg.epsilon == 0.01);
    CHECK(cfg.hidden == std::vector<int>{16, 16});
    CHECK(cfg.sigma == 10.0);
    CHECK(cfg.lambda == 100);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(gdr::parse_config("algo = es\nfoo = 1"), gdr::ConfigError);
    CHECK_THROWS_AS(gdr::parse_config("algo = es\nalgo = es_inject"), gdr::ConfigError);
    CHECK_THROWS_AS(gdr::parse_config("algo = nope"), gdr::ConfigError);
    CHECK_THROWS_AS(gdr::parse_config("algo = es\nsigma = abc"), gdr::ConfigError);
    try {
      gdr::parse_config("algo = es\n\nno equals sign\n");
      FAIL("expected ConfigError");
    } catch (const gdr::ConfigError& e) {
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("validation") {
    auto cfg = small_config(gdr::Algo::EsInject);
    cfg.lambda = 1;
    cfg.mu = 1;
    CHECK_THROWS_AS(cfg.validate(), gdr::ConfigError);
    cfg = small_config(gdr::Algo::Es);
    cfg.mu = 7;
    CHECK_THROWS_AS(cfg.validate(), gdr::ConfigError);
    cfg.mu = 3;
    cfg.sigma = 0.0;
    CHECK_THROWS_AS(cfg.validate(), gdr::ConfigError);
  }
}

TEST_CASE("zero generations give an empty log") {
  auto cfg = small_config(gdr::Algo::EsGdr);
  cfg.generations = 0;
  CHECK(gdr::run_experiment(cfg).empty());
}

TEST_CASE("log shape and eval accounting") {
  const auto cfg = small_config(gdr::Algo::EsInject);
  const auto logs = gdr::run_experiment(cfg);
  REQUIRE(logs.size() == 4);
  for (std::size_t i = 0; i < logs.size(); ++i) {
    const auto& l = logs[i];
    CHECK(l.generation == static_cast<std::int64_t>(i + 1));
    const bool eval = l.generation % cfg.eval_every == 0;
    CHECK(std::isnan(l.center_fitness_mean) != eval);
    CHECK(std::isnan(l.actor_fitness) != eval);
    CHECK(std::isfinite(l.genetic_distance));
    CHECK(std::isfinite(l.best_pop_fitness));
  }
  CHECK(logs[0].genetic_distance == 0.0);
  // lambda rollouts per generation plus eval_reps center rollouts on eval generations;
  // the actor is injected verbatim so its fitness needs no extra rollout.
  CHECK(logs[0].total_evals == 6);
  CHECK(logs[1].total_evals == 13);
  CHECK(logs[3].total_evals == 26);
}

TEST_CASE("plain es has no actor weight") {
  const auto logs = gdr::run_experiment(small_config(gdr::Algo::Es));
  for (const auto& l : logs) CHECK(l.actor_update_weight == 0.0);
  // the actor is not in the population, so its eval costs one rollout
  CHECK(logs.back().total_evals == 4 * 6 + 2 * 2);
}

TEST_CASE("es_gdr with zero epsilon reproduces es_inject") {
  auto inj = small_config(gdr::Algo::EsInject);
  auto gdr_cfg = small_config(gdr::Algo::EsGdr);
  gdr_cfg.epsilon = 0.0;
  CHECK(csv_of(gdr::run_experiment(inj)) == csv_of(gdr::run_experiment(gdr_cfg)));
  gdr_cfg.algo = gdr::Algo::EsGdr2;
  CHECK(csv_of(gdr::run_experiment(inj)) == csv_of(gdr::run_experiment(gdr_cfg)));
}

TEST_CASE("runs are reproducible and thread-count independent") {
  for (auto algo : {gdr::Algo::EsClip, gdr::Algo::EsGdr2, gdr::Algo::ParallelTd3}) {
    auto cfg = small_config(algo);
    const std::string one = csv_of(gdr::run_experiment(cfg));
    CHECK(one == csv_of(gdr::run_experiment(cfg)));
    cfg.threads = 3;
    CHECK(one == csv_of(gdr::run_experiment(cfg)));
    cfg.seed = 4;
    CHECK(one != csv_of(gdr::run_experiment(cfg)));
  }
}

TEST_CASE("parallel_td3 without exploration") {
  auto cfg = small_config(gdr::Algo::ParallelTd3);
  cfg.exploration_std = 0.0;
  cfg.generations = 1;
  cfg.eval_every = 1;
  const auto logs = gdr::run_experiment(cfg);
  REQUIRE(logs.size() == 1);
  CHECK(logs[0].total_evals == 7);
  CHECK(logs[0].center_fitness_std == 0.0);
  CHECK(logs[0].genetic_distance == 0.0);
}

TEST_CASE("evaluate_center is deterministic") {
  auto cfg = small_config(gdr::Algo::Es);
  cfg.eval_reps = 4;
  const auto arch = gdr::config_architecture(cfg);
  const auto [mean, sd] = gdr::evaluate_center(cfg, gdr::Genome(gdr::param_count(arch)));
  CHECK(mean == doctest::Approx(-0.5));
  CHECK(sd == 0.0);
}

TEST_CASE("csv output") {
  const auto logs = gdr::run_experiment(small_config(gdr::Algo::EsGdr));
  const std::string text = csv_of(logs);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "generation,total_evals,center_fitness_mean,center_fitness_std,actor_fitness,genetic_distance,"
        "actor_update_weight,best_pop_fitness");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 4);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.find(",nan,") != std::string::npos);
  CHECK(gdr::format_real(0.1) == "0.1");
  CHECK(gdr::format_real(-INFINITY) == "-inf");
}

TEST_CASE("parallel_for propagates exceptions") {
  std::vector<int> hit(10, 0);
  gdr::parallel_for(10, 3, [&](int i) { hit[i] = i; });
  for (int i = 0; i < 10; ++i) CHECK(hit[i] == i);
  CHECK_THROWS_AS(gdr::parallel_for(5, 2, [](int i) {
                    if (i == 3) throw gdr::NumericError("boom");
                  }),
                  gdr::NumericError);
}

TEST_CASE("rng tree streams") {
  const gdr::RngTree tree(0);
  auto a = tree.stream("es_sampling", 1);
  auto b = tree.stream("es_sampling", 1);
  auto c = tree.stream("exploration", 1);
  auto d = tree.stream("es_sampling", 2);
  const auto va = a();
  CHECK(va == b());
  CHECK(va != c());
  CHECK(va != d());
  CHECK(va != gdr::RngTree(1).stream("es_sampling", 1)());
}
